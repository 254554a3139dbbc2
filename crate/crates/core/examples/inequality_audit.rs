//! Prints the named inequalities both proofs rest on.

use unavoidable::proofs::{audit, S22_ITEMS, S33_ITEMS};

fn main() -> unavoidable::Result<()> {
    for (name, items) in [("s33", S33_ITEMS), ("s22", S22_ITEMS)] {
        println!("{name}:");
        for it in audit(items)? {
            println!("  {:<28} {}", it.id, it.check);
        }
    }
    Ok(())
}
