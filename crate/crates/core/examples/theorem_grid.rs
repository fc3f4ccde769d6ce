//! Run the truncated-theta identity for A(a, α, β; n) across the standard
//! sequence grid and every modulus with α ≤ 4, in parallel.

use std::time::Instant;

use overpart::{ModulusParams, SequenceKind, Verifier};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let started = Instant::now();
    let v = Verifier::new(120);
    let mut kinds = SequenceKind::theorem_grid();
    kinds.push(SequenceKind::Mangoldt);
    let reports = v.th2_grid(&kinds, &ModulusParams::grid(4), 6)?;
    let rows: usize = reports.iter().map(|r| r.rows.len()).sum();
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
    println!(
        "{} reports, {rows} rows, {} failing, {:.2?}",
        reports.len(),
        failed.len(),
        started.elapsed()
    );
    for r in failed {
        println!("  FAIL {} {:?}", r.identity_id, r.params);
    }

    let th1 = v.th1_grid(&kinds, &ModulusParams::grid(4))?;
    println!("untruncated form: {} of {} reports pass", th1.iter().filter(|r| r.passed()).count(), th1.len());
    Ok(())
}
