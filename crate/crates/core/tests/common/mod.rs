#![allow(dead_code)]

use std::path::{Path, PathBuf};

use unavoidable::proofs::{load_script, run_proof, Mutation, ProofReport};

pub fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn data(rel: &str) -> PathBuf {
    root().join(rel)
}

pub fn prove(script: &str, mutations: &[&str]) -> ProofReport {
    let mut s = load_script(data(script)).expect("script loads");
    let muts: Vec<Mutation> = mutations.iter().map(|m| Mutation::parse(m).expect("mutation parses")).collect();
    s.apply_mutations(&muts).expect("mutation applies");
    run_proof(&s).expect("script runs")
}

/// Perturbations of the critical constants of the shipped data, each by
/// +0.05 unless noted.
pub const CURATED_MUTATIONS: &[(&str, &str)] = &[
    ("scripts/s33.proof", "line-capacity=7"),
    ("scripts/s33.proof", "line-capacity=6.05"),
    ("scripts/s33.proof", "line-x=sqrt(2)-1/2+1/20"),
    ("scripts/s33.proof", "row-shift=3/20"),
    ("scripts/s33.proof", "slide-to=21/20"),
    ("scripts/s33.proof", "mirror-axis=61/20"),
    ("scripts/s33.proof", "red.row1.y=sqrt(2)-1/2+1/20"),
    ("scripts/s33.proof", "red.row2.y=sqrt(2)-1/2+sqrt(3)/2+1/20"),
    ("scripts/s33.proof", "blue.point.b3.1.x=11/20"),
    ("scripts/s22.proof", "fig3-red.row1.y=0.95"),
    ("scripts/s22.proof", "fig3-red.row2.y=1.75"),
    ("scripts/s22.proof", "fig3-blue.row1.y=0.95"),
    ("scripts/s22.proof", "fig3-blue.row3.y=2.55"),
    ("scripts/s22.proof", "fig3-blue.point.b3.2.x=1.55"),
    ("scripts/s22.proof", "fig3-red.point.r2.1.x=0.55"),
    ("scripts/s22.proof", "line-x=sqrt(2)-1/2+1/20"),
    ("scripts/s22.proof", "line-capacity=5.05"),
    ("scripts/s22.proof", "row-shift=3/20"),
    ("scripts/s22.proof", "slide-to=21/20"),
];
