//! p̄(n) from the pentagonal-style recurrence, cross-checked against the
//! generating function.
//!
//! `cargo run --example pbar -- 30`

use overpart::overpartitions::pbar_table;
use overpart::qseries::overpartition_gf;

fn main() {
    let n_max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(30);
    let rec = pbar_table(n_max as u64);
    let gf = overpartition_gf(n_max);
    for (n, v) in rec.iter().enumerate() {
        assert_eq!(v, gf.coeff(n));
        println!("{n:>4}  {v}");
    }
}
