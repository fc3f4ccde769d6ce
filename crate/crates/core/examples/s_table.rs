//! S(k, n): non-overlined copies of k across all overpartitions of n.
//! Rows are n, columns k.

use overpart::overpartitions::s_tables;

fn main() {
    for t in s_tables(10).iter().skip(1) {
        let row: Vec<String> = t.values().iter().map(|v| format!("{v:>5}")).collect();
        println!("n={:>2} |{}", t.n(), row.join(""));
    }
}
