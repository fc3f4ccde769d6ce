//! Gauss's identity (q;q)∞/(−q;q)∞ = 1 + 2Σ(−1)^j q^{j²}, and its
//! truncation: the overpartition gf times a partial theta sum minus one
//! is ±Σ M̄_k(n) qⁿ.

use overpart::qseries::{euler_product, gauss_theta, mbar_gf, overpartition_gf};
use overpart::{ProductSign, TruncatedSeries};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 40;
    let lhs = euler_product(ProductSign::Minus, n).mul(&euler_product(ProductSign::Plus, n).invert()?)?;
    assert_eq!(lhs, gauss_theta(None, n));
    println!("theta to q^{n}: {}", gauss_theta(None, n));

    let gf = overpartition_gf(n);
    for k in 1..=4 {
        let lhs = gf.mul(&gauss_theta(Some(k), n))?.sub(&TruncatedSeries::one(n))?;
        let rhs = if k % 2 == 0 { mbar_gf(k, n) } else { -mbar_gf(k, n) };
        assert_eq!(lhs, rhs);
        println!("k={k}: {}", lhs.truncate(16));
    }
    Ok(())
}
