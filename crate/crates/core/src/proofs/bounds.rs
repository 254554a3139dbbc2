//! Known values and bounds of `s(n)`, the side of the smallest square
//! holding `n` unit squares.

use std::fmt;

use serde::Serialize;

use crate::numerics::expr::exact_constant;
use crate::numerics::{Exact, Interval, Verdict};

#[derive(Clone, Debug, Serialize)]
pub struct BoundEntry {
    pub n: usize,
    pub lower: String,
    pub upper: String,
    pub lower_value: Interval,
    pub upper_value: Interval,
    /// `lower <= upper`, decided exactly.
    pub consistent: Verdict,
    pub source: String,
}

impl BoundEntry {
    fn new(n: usize, lower: &str, upper: &str, source: &str) -> BoundEntry {
        let lo = exact_constant(lower).expect("table constant");
        let hi = exact_constant(upper).expect("table constant");
        BoundEntry {
            n,
            lower: lower.into(),
            upper: upper.into(),
            lower_value: lo.enclosure(),
            upper_value: hi.enclosure(),
            consistent: Verdict::from_bool(lo <= hi),
            source: source.into(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

impl fmt::Display for BoundEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "s({}) = {}", self.n, self.upper)?;
        } else {
            write!(f, "s({}) in [{} ~ {:.5}, {}]", self.n, self.lower, self.lower_value.lo(), self.upper)?;
        }
        write!(f, "  ({})", self.source)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KnownBounds {
    pub entries: Vec<BoundEntry>,
}

impl KnownBounds {
    pub fn get(&self, n: usize) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.n == n)
    }
}

/// The table, with the lower bounds of `proved` (pairs `(n, side)` whose
/// proof replayed True) raised to the proved value.
pub fn bounds_table(proved: &[(usize, Exact)]) -> KnownBounds {
    let mut entries = vec![
        BoundEntry::new(5, "2+sqrt(2)/2", "2+sqrt(2)/2", "known"),
        BoundEntry::new(6, "3", "3", "known"),
        BoundEntry::new(10, "3+sqrt(2)/2", "3+sqrt(2)/2", "known"),
        BoundEntry::new(13, "4", "4", "known"),
        BoundEntry::new(22, "sqrt(15)+1", "5", "general lower bound; chessboard upper bound"),
        BoundEntry::new(33, "sqrt(24)+1", "6", "general lower bound; chessboard upper bound"),
        BoundEntry::new(46, "7", "7", "known"),
    ];
    for m in 2..=7usize {
        for k in [1, 2] {
            let n = m * m - k;
            if entries.iter().all(|e| e.n != n) {
                entries.push(BoundEntry::new(n, &m.to_string(), &m.to_string(), "s(m^2-1) = s(m^2-2) = m"));
            }
        }
    }
    for (n, side) in proved {
        if let Some(e) = entries.iter_mut().find(|e| e.n == *n) {
            let s = side.to_expr_string();
            *e = BoundEntry::new(*n, &s, &e.upper.clone(), "replayed proof; chessboard upper bound");
        }
    }
    entries.sort_by_key(|e| e.n);
    KnownBounds { entries }
}
