//! Replays both shipped proof scripts and prints the updated bounds.
//!
//! `cargo run --release --example prove`

use std::path::Path;

use unavoidable::numerics::expr::exact_constant;
use unavoidable::proofs::{bounds_table, load_script, run_proof};

fn main() -> unavoidable::Result<()> {
    let scripts = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scripts");
    let mut proved = Vec::new();
    for name in ["s33.proof", "s22.proof"] {
        let script = load_script(scripts.join(name))?;
        let t = std::time::Instant::now();
        let report = run_proof(&script)?;
        for s in &report.steps {
            println!("{:<13} {:<16} {}", s.verdict.to_string(), s.id, s.summary);
        }
        println!("{}: {} in {:.1?}, {} checks", report.name, report.verdict, t.elapsed(), report.checks_total);
        if report.verdict.is_true() {
            proved.push((script.theorem.n, exact_constant(&script.theorem.side)?));
        }
        println!();
    }
    for e in bounds_table(&proved).entries.iter().filter(|e| e.n == 22 || e.n == 33) {
        println!("{e}");
    }
    Ok(())
}
