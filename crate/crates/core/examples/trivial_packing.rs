//! Chessboard packings of m^2-1 and m^2-2 unit squares, and the table of
//! known values they complete.

use unavoidable::packing::{trivial_packing, validate_packing};
use unavoidable::proofs::bounds_table;

fn main() -> unavoidable::Result<()> {
    for m in 2..=6 {
        for n in [m * m - 2, m * m - 1] {
            let r = validate_packing(&trivial_packing(n, m)?);
            println!("{n:>2} unit squares in [0,{m}]^2: {} ({} pairs)", r.verdict, r.pairs_checked);
        }
    }
    println!();
    for e in bounds_table(&[]).entries {
        println!("{e}");
    }
    Ok(())
}
