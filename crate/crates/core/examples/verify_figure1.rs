//! Verifies the 33-point configuration and prints the bound it gives.

use unavoidable::certificates::{count_bound, figures::fig1, verify_certificate};

fn main() -> unavoidable::Result<()> {
    let file = fig1()?;
    let cert = &file.certificates[0];
    let report = verify_certificate(cert)?;
    println!("{} points, {} regions", report.points, report.regions.len());
    let mut kinds = std::collections::BTreeMap::new();
    for r in &report.regions {
        *kinds.entry(r.kind.to_string()).or_insert(0) += 1;
    }
    for (k, n) in kinds {
        println!("  {k:<16} {n}");
    }
    println!("coverage: {} ({} cells)", report.coverage.verdict, report.coverage.cells_checked);
    println!("verdict: {}", report.verdict);
    let bound = count_bound(&report, Some(34))?;
    println!("{} (vacuous for packing size 34: {})", bound.claim, bound.vacuous);
    Ok(())
}
