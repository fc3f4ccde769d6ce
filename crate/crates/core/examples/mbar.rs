//! M̄_k(n): overpartitions whose least part size above k appears
//! non-overlined more than k times, by enumeration and by series.

use overpart::overpartitions::{enumerate, mbar_table};
use overpart::CountMethod;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for k in 1..=3 {
        let series = mbar_table(k, 24, CountMethod::Series)?;
        let brute = mbar_table(k, 24, CountMethod::Enumerate)?;
        assert_eq!(series, brute);
        let row: Vec<String> = series.iter().map(ToString::to_string).collect();
        println!("k={k}: {}", row.join(" "));
    }

    println!("\ncounted by M̄_2(12):");
    for op in enumerate(12).filter(|op| op.first_part_above_repeats(2)) {
        println!("  {op}");
    }
    Ok(())
}
