//! Proof scripts and their replay.

pub mod audit;
pub mod bounds;
pub mod runner;
pub mod script;

pub use audit::{audit, audit_item, AuditItem, S22_ITEMS, S33_ITEMS};
pub use bounds::{bounds_table, BoundEntry, KnownBounds};
pub use runner::{run_proof, Assumption, CaseReport, ProofReport, StepReport};
pub use script::{load_script, parse_script, Mutation, ProofScript, Step};
