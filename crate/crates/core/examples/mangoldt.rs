//! Von Mangoldt weights live in the floating domain. A(Λ, 1, 0; n) is the
//! total of ln p over non-overlined prime-power parts; its Lambert
//! coefficients are ln n.

use overpart::coeff::Real;
use overpart::overpartitions::a_table;
use overpart::qseries::lambert_series;
use overpart::{AMethod, Coefficient, ModulusParams, SequenceKind, Verifier};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v = Verifier::new(60);
    let lam = v.sequence(SequenceKind::Mangoldt);
    let u = ModulusParams::unrestricted();

    let b = lambert_series::<f64>(&lam, u, 12)?;
    for n in 1..=12 {
        println!("B(Λ; {n:>2}) = {:.12}   ln {n} = {:.12}", b.coeff(n), (n as f64).ln());
    }

    let a: Vec<Real> = a_table(&lam, u, 12, AMethod::Gf)?;
    let row: Vec<String> = a.iter().map(|x| format!("{:.4}", x.to_f64())).collect();
    println!("\nA(Λ; n): {}", row.join(" "));

    for k in 1..=3 {
        let r = v.check_th2(&lam, u, k)?;
        println!("k={k}: {} rows, passed={}", r.rows.len(), r.passed());
    }
    Ok(())
}
