//! Lower bounds on the length a box cuts from a line.

use serde::Serialize;

use super::application::{two_sqrt2, LemmaKind};
use crate::error::{Error, Result};
use crate::numerics::{Exact, Interval, Relation, Verdict};
use crate::report::{verdict_of, CheckRecord};

/// Geometry for each line lemma, all distances exact.
#[derive(Clone, Debug)]
pub enum LineGeometry {
    /// Distance from the box centre to the line.
    CloseLine { center_distance: Exact },
    /// Distance between two parallel lines with the centre between them.
    ParallelLines { separation: Exact },
    /// Distance from a covered point to the line; the centre lies on the
    /// other side or on the line.
    PointBehindLine { point_distance: Exact },
}

impl LineGeometry {
    pub fn kind(&self) -> LemmaKind {
        match self {
            LineGeometry::CloseLine { .. } => LemmaKind::CloseLine,
            LineGeometry::ParallelLines { .. } => LemmaKind::ParallelLines,
            LineGeometry::PointBehindLine { .. } => LemmaKind::PointBehindLine,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LineBound {
    pub kind: LemmaKind,
    /// Certified lower bound on the intersection length.
    #[serde(serialize_with = "super::fcurve::ser_interval")]
    pub bound: Interval,
    pub bound_exact: String,
    /// The intersection strictly exceeds `bound`.
    pub strict: bool,
    pub verdict: Verdict,
    pub checks: Vec<CheckRecord>,
    pub notes: Vec<String>,
}

impl LineBound {
    /// Certified `|B ∩ l| > 1`.
    pub fn exceeds_one(&self) -> bool {
        self.verdict.is_true() && self.strict && self.bound_exact_value() >= Exact::one()
    }

    fn bound_exact_value(&self) -> Exact {
        crate::numerics::expr::exact_constant(&self.bound_exact).unwrap_or_else(|_| Exact::zero())
    }
}

/// `(√2 - 1)/2`, the close-line radius.
pub fn close_line_radius() -> Exact {
    (Exact::sqrt_int(2) - Exact::one()) / Exact::from_int(2)
}

/// `0.505√2`, half the diagonal of the largest box.
pub fn max_half_diagonal() -> Exact {
    Exact::from_ratio(101, 200) * Exact::sqrt_int(2)
}

pub fn behind_line_threshold() -> Exact {
    Exact::from_ratio(51, 100)
}

pub fn guaranteed_line_intersection(geometry: &LineGeometry) -> Result<LineBound> {
    let one = Exact::one();
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let (bound, strict) = match geometry {
        LineGeometry::CloseLine { center_distance } => {
            if center_distance.is_negative() {
                return Err(Error::Invalid("negative distance".into()));
            }
            checks.push(CheckRecord::exact(
                "centre-to-line distance vs (sqrt(2)-1)/2",
                center_distance,
                Relation::Le,
                &close_line_radius(),
            ));
            (one, true)
        }
        LineGeometry::ParallelLines { separation } => {
            if !separation.is_positive() {
                return Err(Error::Invalid("parallel lines must be distinct".into()));
            }
            checks.push(CheckRecord::exact("line separation d", separation, Relation::Le, &one));
            let raw = two_sqrt2() - Exact::from_int(2) * separation;
            let bound = raw.clone().min(one.clone());
            checks.push(CheckRecord::exact("2*sqrt(2) - 2d", &raw, Relation::Ge, &bound));
            // A side-s box between lines at distance d is a scaled unit
            // square between lines at distance d/s, so the bound scales to
            // min{s, 2√2 s - 2d}, strictly above min{1, 2√2 - 2d}.
            notes.push("bound is strict because every box has side > 1".into());
            (bound, true)
        }
        LineGeometry::PointBehindLine { point_distance } => {
            checks.push(CheckRecord::exact(
                "covered point distance to line",
                point_distance,
                Relation::Gt,
                &behind_line_threshold(),
            ));
            // The centre is within 0.505√2 of the point, so within
            // 0.505√2 - d < 0.505√2 - 0.51 of the line.
            let reach = max_half_diagonal() - behind_line_threshold();
            checks.push(CheckRecord::exact(
                "0.505*sqrt(2) - 0.51 vs (sqrt(2)-1)/2",
                &reach,
                Relation::Lt,
                &close_line_radius(),
            ));
            notes.push("reduces to the close-line bound".into());
            (one, true)
        }
    };
    let verdict = verdict_of(&checks);
    Ok(LineBound {
        kind: geometry.kind(),
        bound: bound.enclosure(),
        bound_exact: bound.to_expr_string(),
        strict,
        verdict,
        checks,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::expr::exact_constant;

    fn c(s: &str) -> Exact {
        exact_constant(s).unwrap()
    }

    #[test]
    fn parallel_lines_at_boundary_are_strict() {
        let b = guaranteed_line_intersection(&LineGeometry::ParallelLines { separation: c("sqrt(2) - 1/2") }).unwrap();
        assert_eq!(b.verdict, Verdict::True);
        assert_eq!(b.bound_exact, "1");
        assert!(b.strict && b.exceeds_one());
        let far = guaranteed_line_intersection(&LineGeometry::ParallelLines { separation: c("1") }).unwrap();
        assert!(far.verdict.is_true() && !far.exceeds_one());
        let too_far = guaranteed_line_intersection(&LineGeometry::ParallelLines { separation: c("1.1") }).unwrap();
        assert_eq!(too_far.verdict, Verdict::False);
    }

    #[test]
    fn close_line_at_radius() {
        let b = guaranteed_line_intersection(&LineGeometry::CloseLine { center_distance: close_line_radius() }).unwrap();
        assert!(b.exceeds_one());
        let out = guaranteed_line_intersection(&LineGeometry::CloseLine { center_distance: c("0.21") }).unwrap();
        assert_eq!(out.verdict, Verdict::False);
    }

    #[test]
    fn point_behind_line_chain() {
        let b = guaranteed_line_intersection(&LineGeometry::PointBehindLine { point_distance: c("0.52") }).unwrap();
        assert!(b.exceeds_one());
        let near = guaranteed_line_intersection(&LineGeometry::PointBehindLine { point_distance: c("0.51") }).unwrap();
        assert_eq!(near.verdict, Verdict::False);
    }
}
