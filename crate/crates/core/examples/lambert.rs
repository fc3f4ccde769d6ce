//! Coefficients of the Lambert series Σ a_n q^{αn−β}/(1 − q^{αn−β}),
//! i.e. the restricted divisor sums B(a, α, β; n).
//!
//! `cargo run --example lambert -- phi 3 1`

use std::sync::Arc;

use num_bigint::BigInt;
use overpart::qseries::lambert_series;
use overpart::{ArithmeticSequence, ModulusParams, Sieve};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let name = args.first().map(String::as_str).unwrap_or("phi");
    let alpha = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(1);
    let beta = args.get(2).map(|s| s.parse()).transpose()?.unwrap_or(0);
    let order = 24;

    let m = ModulusParams::new(alpha, beta)?;
    let a = ArithmeticSequence::named(name, Arc::new(Sieve::new(order as u64 + 1)))?;
    let s = lambert_series::<BigInt>(&a, m, order)?;
    println!("B({name}, {alpha}, {beta}; n) for n = 1..={order}");
    for n in 1..=order {
        println!("{n:>3}  {}", s.coeff(n));
    }
    Ok(())
}
