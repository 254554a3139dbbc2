//! Certified arithmetic: outward-rounded intervals, exact quadratic surds,
//! the constant grammar, and enclosures of sin/cos.

pub mod exact;
pub mod expr;
pub mod interval;
pub mod trig;

pub use exact::Exact;
pub use expr::Expr;
pub use interval::{cmp_strict, Interval, Relation};

use serde::{Deserialize, Serialize};
use std::fmt;

/// Three-valued outcome of a certified check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    True,
    False,
    Indeterminate,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Verdict::True
    }

    /// Conjunction: any False wins, then any Indeterminate.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (Verdict::True, Verdict::True) => Verdict::True,
            _ => Verdict::Indeterminate,
        }
    }

    pub fn all<I: IntoIterator<Item = Verdict>>(it: I) -> Verdict {
        it.into_iter().fold(Verdict::True, Verdict::and)
    }

    /// Process exit code used by the command line tool.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::True => 0,
            Verdict::False => 1,
            Verdict::Indeterminate => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::True => "True",
            Verdict::False => "False",
            Verdict::Indeterminate => "Indeterminate",
        };
        f.write_str(s)
    }
}
