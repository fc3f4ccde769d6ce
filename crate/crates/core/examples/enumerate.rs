//! List every overpartition of n; overlined parts carry a `*`.
//!
//! `cargo run --example enumerate -- 4`

use overpart::overpartitions::enumerate;

fn main() {
    let n: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let mut count = 0;
    for op in enumerate(n) {
        count += 1;
        println!("{op}");
    }
    println!("-- {count} overpartitions of {n}");
}
