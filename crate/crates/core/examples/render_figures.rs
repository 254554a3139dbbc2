//! Writes SVG drawings of the shipped configurations and of the s22
//! midpoint regions into a directory (default `target/figures`).

use std::fs;
use std::path::{Path, PathBuf};

use unavoidable::certificates::{load_certificate_file, Color};
use unavoidable::proofs::{load_script, run_proof};
use unavoidable::render::{certificate_svg, regions_svg};

fn main() -> unavoidable::Result<()> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| root.join("target/figures"));
    fs::create_dir_all(&out)?;
    for (name, color) in [("fig1", Color::Red), ("fig2_blue", Color::Blue), ("fig3", Color::Red), ("fig3", Color::Blue)] {
        let file = load_certificate_file(root.join(format!("figures/{name}.cert")))?;
        let path = out.join(format!("{name}_{color}.svg"));
        fs::write(&path, certificate_svg(&file, Some(color)))?;
        println!("wrote {}", path.display());
    }
    let report = run_proof(&load_script(root.join("scripts/s22.proof"))?)?;
    let path = out.join("s22_regions.svg");
    fs::write(&path, regions_svg(&report)?)?;
    println!("wrote {}", path.display());
    Ok(())
}
