//! Continuously moving unavoidable sets and the single-box obligations
//! they leave behind.

pub mod compression;
pub mod obligations;
pub mod poly;
pub mod schedule;

pub use compression::{add_row_moves, compression_inequality, f_targets, row_compression_targets, row_spacing, Compression};
pub use obligations::{merge_obligations, CoverageObligation, ObligationClass, ObligationGroup};
pub use poly::Quadratic;
pub use schedule::{
    verify_schedule, Constraint, ConstraintKind, MovementSchedule, PieceReport, Precondition, ScheduleReport,
};
