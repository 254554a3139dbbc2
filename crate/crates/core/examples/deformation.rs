//! Compresses the 33 red points towards row 2 and moves its leftmost point
//! to x = 1, checking the set stays unavoidable on every piece.

use unavoidable::certificates::figures::fig1;
use unavoidable::deformation::{add_row_moves, row_compression_targets, verify_schedule};
use unavoidable::numerics::Exact;

fn main() -> unavoidable::Result<()> {
    let base = fig1()?.certificates.remove(0);
    let mut c = row_compression_targets(&base, 2)?;
    let s = c.summary();
    println!("F_2 row heights: {:?}", s.heights.iter().map(|h| format!("{h:.4}")).collect::<Vec<_>>());
    add_row_moves(&mut c.schedule, 2, Some(&Exact::from_ratio(1, 10)), &Exact::one())?;
    let rep = verify_schedule(&c.schedule)?;
    for p in &rep.pieces {
        println!("piece {}: {} ({} regions, {} checks) {:?}", p.index, p.verdict, p.regions, p.checks, p.kinds);
    }
    for k in &rep.constraints {
        println!("{k}");
    }
    let path = &rep.obligations.iter().find(|o| o.class.base == "r2.1").expect("row 2").path;
    println!("r2.1 sweeps {:?}", path.iter().map(|p| p.to_f64()).collect::<Vec<_>>());
    println!("verdict: {}", rep.verdict);
    Ok(())
}
