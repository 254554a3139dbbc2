//! Check records shared by every verification report.

use std::fmt;

use serde::Serialize;

use crate::numerics::{Exact, Interval, Relation, Verdict};

/// One certified comparison `lhs rel rhs`.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub label: String,
    #[serde(serialize_with = "crate::lemmas::fcurve::ser_interval")]
    pub lhs: Interval,
    pub relation: Relation,
    #[serde(serialize_with = "crate::lemmas::fcurve::ser_interval")]
    pub rhs: Interval,
    pub verdict: Verdict,
    /// Decided in exact arithmetic rather than from the intervals.
    pub exact: bool,
}

impl CheckRecord {
    /// Exact comparison; the intervals are carried for display.
    pub fn exact(label: impl Into<String>, lhs: &Exact, relation: Relation, rhs: &Exact) -> CheckRecord {
        let ord = lhs.cmp(rhs);
        let holds = match relation {
            Relation::Lt => ord.is_lt(),
            Relation::Le => ord.is_le(),
            Relation::Gt => ord.is_gt(),
            Relation::Ge => ord.is_ge(),
        };
        CheckRecord {
            label: label.into(),
            lhs: lhs.enclosure(),
            relation,
            rhs: rhs.enclosure(),
            verdict: Verdict::from_bool(holds),
            exact: true,
        }
    }

    pub fn interval(label: impl Into<String>, lhs: Interval, relation: Relation, rhs: Interval) -> CheckRecord {
        CheckRecord {
            label: label.into(),
            lhs,
            relation,
            rhs,
            verdict: crate::numerics::cmp_strict(&lhs, &rhs, relation),
            exact: false,
        }
    }

    /// A structural fact with no numeric content.
    pub fn fact(label: impl Into<String>, holds: bool) -> CheckRecord {
        let v = if holds { 1.0 } else { 0.0 };
        CheckRecord {
            label: label.into(),
            lhs: Interval::point(v),
            relation: Relation::Ge,
            rhs: Interval::one(),
            verdict: Verdict::from_bool(holds),
            exact: true,
        }
    }

    pub fn width(&self) -> f64 {
        self.lhs.width().max(self.rhs.width())
    }
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<13} {}: {} {} {}{}",
            self.verdict.to_string(),
            self.label,
            self.lhs,
            self.relation.symbol(),
            self.rhs,
            if self.exact { " (exact)" } else { "" }
        )
    }
}

/// Conjunction of a list of checks.
pub fn verdict_of(checks: &[CheckRecord]) -> Verdict {
    Verdict::all(checks.iter().map(|c| c.verdict))
}

/// First check that is not True, for error messages.
pub fn first_failure(checks: &[CheckRecord]) -> Option<&CheckRecord> {
    checks.iter().find(|c| c.verdict != Verdict::True)
}
