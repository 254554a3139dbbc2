//! Line-resource counting: boxes that each cut more than 1 from a line of
//! length `L` number fewer than `L`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{ContainerSquare, ExactPoint, ExactSegment, PointSpec};
use crate::lemmas::line::{guaranteed_line_intersection, LineBound, LineGeometry};
use crate::numerics::{Exact, Interval, Relation, Verdict};
use crate::report::CheckRecord;

/// An axis-parallel segment crossing the container. It may run past the
/// container; boxes only meet the part inside.
#[derive(Clone, Debug)]
pub struct ResourceLine {
    pub segment: ExactSegment,
    /// Length of the segment, exact.
    pub capacity: Exact,
    vertical: bool,
}

impl ResourceLine {
    pub fn new(segment: ExactSegment, container: &ContainerSquare) -> Result<ResourceLine> {
        let (a, b) = (&segment.a, &segment.b);
        let side = &container.side;
        let inside = |v: &Exact| !v.is_negative() && v <= side;
        let vertical = a.x == b.x;
        if vertical == (a.y == b.y) {
            return Err(Error::Invalid("resource line must be axis-parallel and non-degenerate".into()));
        }
        let (fixed, lo, hi) = if vertical { (&a.x, &a.y, &b.y) } else { (&a.y, &a.x, &b.x) };
        if !inside(fixed) || fixed.is_zero() || fixed == side {
            return Err(Error::Invalid("resource line must cross the container interior".into()));
        }
        let capacity = (hi - lo).abs();
        Ok(ResourceLine { segment, capacity, vertical })
    }

    /// The vertical line `x = c` across `[0, side]^2`.
    pub fn vertical(c: Exact, container: &ContainerSquare) -> Result<ResourceLine> {
        let side = container.side.clone();
        ResourceLine::vertical_from_bottom(c, side, container)
    }

    /// The vertical segment from `(c, 0)` of the given length.
    pub fn vertical_from_bottom(c: Exact, length: Exact, container: &ContainerSquare) -> Result<ResourceLine> {
        ResourceLine::new(ExactSegment::new(ExactPoint::new(c.clone(), Exact::zero()), ExactPoint::new(c, length)), container)
    }

    pub fn is_vertical(&self) -> bool {
        self.vertical
    }

    fn coordinate(&self) -> &Exact {
        if self.vertical {
            &self.segment.a.x
        } else {
            &self.segment.a.y
        }
    }

    fn across(&self, p: &ExactPoint) -> Exact {
        if self.vertical {
            p.x.clone()
        } else {
            p.y.clone()
        }
    }

    /// Signed offset of `p` from the line.
    pub fn offset(&self, p: &ExactPoint) -> Exact {
        &self.across(p) - self.coordinate()
    }

    /// Distance from the line to the container wall on `p`'s side.
    fn wall_separation(&self, p: &ExactPoint, container: &ContainerSquare) -> Exact {
        if self.offset(p).is_negative() {
            self.coordinate().clone()
        } else {
            &container.side - self.coordinate()
        }
    }
}

/// A point covered by a box known to be distinct from the other claims'
/// boxes.
#[derive(Clone, Debug, Serialize)]
pub struct CoveredPoint {
    pub label: String,
    #[serde(serialize_with = "ser_point")]
    pub point: ExactPoint,
}

fn ser_point<S: serde::Serializer>(p: &ExactPoint, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&PointSpec::from_exact(p), s)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub label: String,
    pub point: (f64, f64),
    /// Centre on the point's side of the line: parallel lines.
    pub same_side: Option<LineBound>,
    /// Centre on the line or beyond it: point behind line.
    pub opposite_side: LineBound,
    pub exceeds_one: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResourceReport {
    pub verdict: Verdict,
    pub capacity: Interval,
    pub capacity_exact: String,
    pub established: usize,
    pub claims: Vec<ClaimReport>,
    pub checks: Vec<CheckRecord>,
    pub conclusion: String,
}

/// Certifies, for each covered point, that its box cuts more than 1 from
/// `l` whichever side its centre lies on; `True` when the established
/// claims reach the capacity, so their disjoint intersections would
/// exceed the length of `l`.
pub fn line_resource_contradiction(
    line: &ResourceLine,
    container: &ContainerSquare,
    covered: &[CoveredPoint],
) -> Result<ResourceReport> {
    let mut claims = Vec::new();
    let mut checks = Vec::new();
    for c in covered {
        let off = line.offset(&c.point);
        if off.is_zero() {
            return Err(Error::Invalid(format!("covered point {} lies on the line", c.label)));
        }
        let opposite = guaranteed_line_intersection(&LineGeometry::PointBehindLine { point_distance: off.abs() })?;
        let sep = line.wall_separation(&c.point, container);
        let same = if sep.is_positive() {
            Some(guaranteed_line_intersection(&LineGeometry::ParallelLines { separation: sep })?)
        } else {
            None
        };
        let exceeds_one = opposite.exceeds_one() && same.as_ref().is_some_and(|s| s.exceeds_one());
        checks.extend(opposite.checks.iter().map(|k| labelled(&c.label, k)));
        if let Some(s) = &same {
            checks.extend(s.checks.iter().map(|k| labelled(&c.label, k)));
        }
        claims.push(ClaimReport {
            label: c.label.clone(),
            point: c.point.to_f64(),
            same_side: same,
            opposite_side: opposite,
            exceeds_one,
        });
    }
    let established = claims.iter().filter(|c| c.exceeds_one).count();
    let count_check = CheckRecord::exact(
        "boxes cutting more than 1 from l vs length of l",
        &Exact::from_int(established as i64),
        Relation::Ge,
        &line.capacity,
    );
    let verdict = count_check.verdict;
    let conclusion = if verdict.is_true() {
        format!(
            "{established} disjoint boxes each cut more than 1 from a line of length {}: contradiction",
            line.capacity.to_expr_string()
        )
    } else {
        format!(
            "{established} boxes cut more than 1 from a line of length {}: no contradiction",
            line.capacity.to_expr_string()
        )
    };
    checks.push(count_check);
    Ok(ResourceReport {
        verdict,
        capacity: line.capacity.enclosure(),
        capacity_exact: line.capacity.to_expr_string(),
        established,
        claims,
        checks,
        conclusion,
    })
}

fn labelled(prefix: &str, c: &CheckRecord) -> CheckRecord {
    CheckRecord { label: format!("{prefix}: {}", c.label), ..c.clone() }
}

/// Where on a vertical line of length `n` the box of row `k` may meet it
/// when the boxes of the other rows each take more than 1: the unit window
/// `(k-1, k)`, whose ends are denied to the box.
#[derive(Clone, Debug, Serialize)]
pub struct Window {
    pub row: usize,
    pub lower: f64,
    pub upper: f64,
    #[serde(serialize_with = "ser_points")]
    pub denied: Vec<ExactPoint>,
}

fn ser_points<S: serde::Serializer>(ps: &[ExactPoint], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<PointSpec> = ps.iter().map(PointSpec::from_exact).collect();
    serde::Serialize::serialize(&v, s)
}

/// The boxes of rows `1..k-1` cut disjoint pieces of total length above
/// `k-1` from the part of the line below the box of row `k`, likewise
/// above. The end points of the window are denied.
pub fn window_analysis(line: &ResourceLine, rows: usize, k: usize) -> Result<Window> {
    if !line.is_vertical() {
        return Err(Error::Invalid("window analysis needs a vertical line".into()));
    }
    if k == 0 || k > rows || Exact::from_int(rows as i64) != line.capacity {
        return Err(Error::Invalid(format!("row {k} of {rows} does not match a line of length {}", line.capacity.to_expr_string())));
    }
    let x = line.segment.a.x.clone();
    let lo = line.segment.a.y.clone().min(line.segment.b.y.clone());
    let at = |t: usize| ExactPoint::new(x.clone(), &lo + &Exact::from_int(t as i64));
    let mut denied = Vec::new();
    if k > 1 {
        denied.push(at(k - 1));
    }
    if k < rows {
        denied.push(at(k));
    }
    Ok(Window { row: k, lower: (k - 1) as f64, upper: k as f64, denied })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::figures::edge_gap;

    fn container(n: i64) -> ContainerSquare {
        ContainerSquare::new(Exact::from_int(n)).unwrap()
    }

    fn claims(n: usize) -> Vec<CoveredPoint> {
        (0..n)
            .map(|i| CoveredPoint { label: format!("B{}", i + 1), point: ExactPoint::parse("0.4", &format!("{}", i as f64 + 0.5)).unwrap() })
            .collect()
    }

    #[test]
    fn six_boxes_exhaust_length_six() {
        let c = container(6);
        let l = ResourceLine::vertical(edge_gap(), &c).unwrap();
        let r = line_resource_contradiction(&l, &c, &claims(6)).unwrap();
        assert!(r.verdict.is_true());
        assert_eq!(r.established, 6);
        let r = line_resource_contradiction(&l, &c, &claims(5)).unwrap();
        assert_eq!(r.verdict, Verdict::False);
    }

    #[test]
    fn near_points_do_not_count() {
        let c = container(6);
        let l = ResourceLine::vertical(edge_gap(), &c).unwrap();
        let near = vec![CoveredPoint { label: "near".into(), point: ExactPoint::parse("0.5", "1").unwrap() }];
        let r = line_resource_contradiction(&l, &c, &near).unwrap();
        assert_eq!(r.established, 0);
    }

    #[test]
    fn windows() {
        let c = container(5);
        let l = ResourceLine::vertical(edge_gap(), &c).unwrap();
        assert_eq!(window_analysis(&l, 5, 3).unwrap().denied.len(), 2);
        assert_eq!(window_analysis(&l, 5, 1).unwrap().denied, vec![ExactPoint::new(edge_gap(), Exact::one())]);
        assert!(window_analysis(&l, 6, 1).is_err());
    }
}
