//! Regenerates the shipped certificates and packings.
//!
//! Run from the repository root: `cargo run --example generate_data`.

use std::fs;
use std::path::Path;

use unavoidable::certificates::certificate_file_to_json;
use unavoidable::certificates::figures::{fig1, fig2_blue, fig2_red, fig3};
use unavoidable::packing::{packing_to_json, trivial_packing};

fn main() -> unavoidable::Result<()> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    for (name, file) in [("fig1", fig1()?), ("fig2_red", fig2_red()?), ("fig2_blue", fig2_blue()?), ("fig3", fig3()?)] {
        let path = root.join("figures").join(format!("{name}.cert"));
        fs::write(&path, certificate_file_to_json(&file))?;
        println!("wrote {}", path.display());
    }
    for (n, m) in [(22, 5), (33, 6)] {
        let name = format!("trivial_{n}_{m}");
        let path = root.join("packings").join(format!("{name}.pack"));
        fs::write(&path, packing_to_json(&name, &trivial_packing(n, m)?))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
