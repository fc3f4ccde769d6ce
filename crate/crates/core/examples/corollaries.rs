//! Specializations: Euler φ, prime parts, squarefree parts, the Möbius
//! decomposition, and the sign pattern for nonnegative weights.

use overpart::{IdentityReport, ModulusParams, SequenceKind, Verifier};

fn summarize(reports: &[IdentityReport]) {
    for r in reports {
        let k = r.params.k.map(|k| format!(" k={k}")).unwrap_or_default();
        let status = if r.passed() { "ok  " } else { "FAIL" };
        println!("{status} {}{k} n={}..={}", r.identity_id, r.range.0, r.range.1);
        for note in &r.notes {
            println!("       {note}");
        }
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v = Verifier::new(100);
    summarize(&v.check_phi_suite(3)?);
    summarize(&v.check_prime_suite(3)?);
    summarize(&v.check_squarefree_suite(3)?);
    summarize(&[v.check_mu_decomposition()?]);

    let phi = v.sequence(SequenceKind::Phi);
    let c3 = v.check_c3(&phi, ModulusParams::new(2, 1)?, 2)?;
    let lhs: Vec<String> = c3.rows.iter().take(12).map(|r| r.lhs.to_string()).collect();
    println!("\nsign pattern, phi at (2,1), k=2: {} ...", lhs.join(" "));
    summarize(&[c3]);
    Ok(())
}
