//! Regions of possible box centres cut out by half-planes and disks.
//!
//! Regions stay implicit. Only boundary intersections and the extreme
//! points needed for farthest-point bounds are computed, in interval
//! arithmetic from exact data.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{ExactPoint, Point, PointSpec};
use crate::numerics::{Exact, Interval, Verdict};
use crate::report::CheckRecord;

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RegionConstraint {
    /// `normal . p >= offset`.
    HalfPlane {
        #[serde(serialize_with = "ser_pair")]
        normal: (Exact, Exact),
        #[serde(serialize_with = "ser_exact")]
        offset: Exact,
    },
    /// `|p - center| <= radius`.
    InsideDisk {
        #[serde(serialize_with = "ser_point")]
        center: ExactPoint,
        #[serde(serialize_with = "ser_exact")]
        radius: Exact,
    },
    /// `|p - center| >= radius`.
    OutsideDisk {
        #[serde(serialize_with = "ser_point")]
        center: ExactPoint,
        #[serde(serialize_with = "ser_exact")]
        radius: Exact,
    },
}

fn ser_exact<S: serde::Serializer>(e: &Exact, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_expr_string())
}

fn ser_pair<S: serde::Serializer>(e: &(Exact, Exact), s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&(e.0.to_expr_string(), e.1.to_expr_string()), s)
}

fn ser_point<S: serde::Serializer>(p: &ExactPoint, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&PointSpec::from_exact(p), s)
}

impl RegionConstraint {
    /// `x >= c` (or `x <= c` when `right` is false).
    pub fn vertical(c: Exact, right: bool) -> RegionConstraint {
        if right {
            RegionConstraint::HalfPlane { normal: (Exact::one(), Exact::zero()), offset: c }
        } else {
            RegionConstraint::HalfPlane { normal: (-Exact::one(), Exact::zero()), offset: -c }
        }
    }

    fn circle(&self) -> Option<(&ExactPoint, &Exact)> {
        match self {
            RegionConstraint::InsideDisk { center, radius } | RegionConstraint::OutsideDisk { center, radius } => {
                Some((center, radius))
            }
            RegionConstraint::HalfPlane { .. } => None,
        }
    }

    fn well_formed(&self) -> bool {
        match self {
            RegionConstraint::HalfPlane { normal, .. } => !(normal.0.is_zero() && normal.1.is_zero()),
            RegionConstraint::InsideDisk { radius, .. } | RegionConstraint::OutsideDisk { radius, .. } => {
                radius.is_positive()
            }
        }
    }

    /// Whether `p` satisfies the closed constraint.
    pub fn admits(&self, p: &Point) -> Verdict {
        match self {
            RegionConstraint::HalfPlane { normal, offset } => {
                let v = normal.0.enclosure() * p.x + normal.1.enclosure() * p.y;
                v.ge(&offset.enclosure())
            }
            RegionConstraint::InsideDisk { center, radius } => {
                dist2(p, &center.to_interval()).le(&radius.sqr().enclosure())
            }
            RegionConstraint::OutsideDisk { center, radius } => {
                dist2(p, &center.to_interval()).ge(&radius.sqr().enclosure())
            }
        }
    }

    /// Exact membership for exact points.
    pub fn admits_exact(&self, p: &ExactPoint) -> bool {
        match self {
            RegionConstraint::HalfPlane { normal, offset } => &(&normal.0 * &p.x) + &(&normal.1 * &p.y) >= *offset,
            RegionConstraint::InsideDisk { center, radius } => p.dist2(center) <= radius.sqr(),
            RegionConstraint::OutsideDisk { center, radius } => p.dist2(center) >= radius.sqr(),
        }
    }
}

fn dist2(p: &Point, q: &Point) -> Interval {
    (p.x - q.x).sqr() + (p.y - q.y).sqr()
}

#[derive(Clone, Debug, Serialize)]
pub struct MidpointRegion {
    pub constraints: Vec<RegionConstraint>,
    pub description: Vec<String>,
}

impl MidpointRegion {
    pub fn new(constraints: Vec<RegionConstraint>, description: Vec<String>) -> Result<MidpointRegion> {
        if let Some(i) = constraints.iter().position(|c| !c.well_formed()) {
            return Err(Error::Invalid(format!("region constraint {i} is degenerate")));
        }
        Ok(MidpointRegion { constraints, description })
    }

    pub fn contains_exact(&self, p: &ExactPoint) -> bool {
        self.constraints.iter().all(|c| c.admits_exact(p))
    }

    pub fn contains_f64(&self, x: f64, y: f64) -> bool {
        let p = Point::from_f64(x, y);
        self.constraints.iter().all(|c| c.admits(&p) != Verdict::False)
    }

    /// Whether `p` may lie in the region, ignoring the constraints listed
    /// in `on` (which hold by construction).
    fn may_contain(&self, p: &Point, on: &[usize]) -> Verdict {
        Verdict::all(
            self.constraints.iter().enumerate().filter(|(i, _)| !on.contains(i)).map(|(_, c)| c.admits(p)),
        )
    }
}

/// A boundary intersection point of two constraints.
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryPoint {
    pub point: Point,
    pub between: (usize, usize),
    /// On the region boundary for certain (`True`), possibly (`Indeterminate`).
    pub feasible: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegionEnvelope {
    /// Feasible or undecided boundary intersections.
    pub vertices: Vec<BoundaryPoint>,
    /// Intersections certified to lie outside the region.
    pub rejected: usize,
    /// Bounding box `[x_lo, x_hi] x [y_lo, y_hi]` containing the region.
    pub bounds: Option<(Interval, Interval)>,
}

fn line_of(c: &RegionConstraint) -> Option<(Interval, Interval, Interval)> {
    match c {
        RegionConstraint::HalfPlane { normal, offset } => {
            Some((normal.0.enclosure(), normal.1.enclosure(), offset.enclosure()))
        }
        _ => None,
    }
}

fn circle_of(c: &RegionConstraint) -> Option<(Point, Interval)> {
    c.circle().map(|(p, r)| (p.to_interval(), r.enclosure()))
}

fn line_line(a: (Interval, Interval, Interval), b: (Interval, Interval, Interval)) -> Vec<Point> {
    let det = a.0 * b.1 - a.1 * b.0;
    if det.contains_zero() {
        return Vec::new();
    }
    let x = (a.2 * b.1 - a.1 * b.2) / det;
    let y = (a.0 * b.2 - a.2 * b.0) / det;
    vec![Point::new(x, y)]
}

fn line_circle(l: (Interval, Interval, Interval), c: (Point, Interval)) -> Vec<Point> {
    let (nx, ny, off) = l;
    let (ctr, r) = c;
    let n2 = nx.sqr() + ny.sqr();
    let s = (off - (nx * ctr.x + ny * ctr.y)) / n2;
    let foot = Point::new(ctr.x + nx * s, ctr.y + ny * s);
    let h2 = r.sqr() - s.sqr() * n2;
    if h2.hi() < 0.0 {
        return Vec::new();
    }
    let Ok(t) = (h2 / n2).sqrt() else { return Vec::new() };
    vec![
        Point::new(foot.x - ny * t, foot.y + nx * t),
        Point::new(foot.x + ny * t, foot.y - nx * t),
    ]
}

fn circle_circle(a: (Point, Interval), b: (Point, Interval)) -> Vec<Point> {
    let (c1, r1) = a;
    let (c2, r2) = b;
    let dx = c2.x - c1.x;
    let dy = c2.y - c1.y;
    let d2 = dx.sqr() + dy.sqr();
    if d2.contains_zero() {
        return Vec::new();
    }
    // Foot along the centre line at parameter k, half-chord h.
    let k = (r1.sqr() - r2.sqr() + d2) / (Interval::from_i64(2) * d2);
    let h2 = r1.sqr() / d2 - k.sqr();
    if h2.hi() < 0.0 {
        return Vec::new();
    }
    let Ok(h) = h2.sqrt() else { return Vec::new() };
    let fx = c1.x + k * dx;
    let fy = c1.y + k * dy;
    vec![Point::new(fx - h * dy, fy + h * dx), Point::new(fx + h * dy, fy - h * dx)]
}

fn pair_points(a: &RegionConstraint, b: &RegionConstraint) -> Vec<Point> {
    match (line_of(a), line_of(b), circle_of(a), circle_of(b)) {
        (Some(la), Some(lb), _, _) => line_line(la, lb),
        (Some(la), None, _, Some(cb)) => line_circle(la, cb),
        (None, Some(lb), Some(ca), _) => line_circle(lb, ca),
        (None, None, Some(ca), Some(cb)) => circle_circle(ca, cb),
        _ => Vec::new(),
    }
}

/// Points of a constraint's circle with extreme `x` or `y`.
fn axis_extremes(c: &RegionConstraint) -> Vec<Point> {
    let Some((ctr, r)) = circle_of(c) else { return Vec::new() };
    vec![
        Point::new(ctr.x + r, ctr.y),
        Point::new(ctr.x - r, ctr.y),
        Point::new(ctr.x, ctr.y + r),
        Point::new(ctr.x, ctr.y - r),
    ]
}

/// All pairwise boundary intersections, classified against the other
/// constraints. Undecided points are kept, so the vertex list is a
/// superset of the true one.
pub fn feasible_midpoint_region(region: &MidpointRegion) -> RegionEnvelope {
    let cs = &region.constraints;
    let mut vertices = Vec::new();
    let mut rejected = 0;
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            for p in pair_points(&cs[i], &cs[j]) {
                match region.may_contain(&p, &[i, j]) {
                    Verdict::False => rejected += 1,
                    v => vertices.push(BoundaryPoint { point: p, between: (i, j), feasible: v }),
                }
            }
        }
    }
    let bounded = cs.iter().any(|c| matches!(c, RegionConstraint::InsideDisk { .. }));
    let bounds = bounded.then(|| {
        let mut pts: Vec<Point> = vertices.iter().map(|v| v.point).collect();
        for (i, c) in cs.iter().enumerate() {
            pts.extend(axis_extremes(c).into_iter().filter(|p| region.may_contain(p, &[i]) != Verdict::False));
        }
        let mut it = pts.into_iter();
        it.next().map(|first| {
            it.fold((first.x, first.y), |(bx, by), p| (bx.hull(&p.x), by.hull(&p.y)))
        })
    });
    RegionEnvelope { vertices, rejected, bounds: bounds.flatten() }
}

#[derive(Clone, Debug, Serialize)]
pub struct DiskReport {
    pub verdict: Verdict,
    /// Candidate extreme points examined.
    pub candidates: usize,
    /// Largest certified distance to the centre over the candidates.
    pub max_distance: Interval,
    pub farthest: Option<Point>,
    pub check: CheckRecord,
}

/// Whether every point of the region lies within `radius` of `center`.
///
/// Distance to a point is convex, so its maximum over the region is
/// reached on the boundary: at a vertex, or at the point of a boundary
/// circle farthest from `center`. All such candidates not certified to lie
/// outside the region are checked.
pub fn region_in_disk(region: &MidpointRegion, center: &ExactPoint, radius: &Exact) -> Result<DiskReport> {
    if !radius.is_positive() {
        return Err(Error::Invalid("disk radius must be positive".into()));
    }
    let cs = &region.constraints;
    if !cs.iter().any(|c| matches!(c, RegionConstraint::InsideDisk { .. })) {
        return Err(Error::Invalid("region is unbounded".into()));
    }
    let env = feasible_midpoint_region(region);
    let t = center.to_interval();
    let mut cands: Vec<Point> = env.vertices.iter().map(|v| v.point).collect();
    for (i, c) in cs.iter().enumerate() {
        let Some((ctr, r)) = c.circle() else { continue };
        let d = (&ctr.x - &center.x, &ctr.y - &center.y);
        let ci = ctr.to_interval();
        let ri = r.enclosure();
        let p = if d.0.is_zero() && d.1.is_zero() {
            // Every circle point is equally far.
            Point::new(ci.x + ri, ci.y)
        } else {
            let len = (d.0.enclosure().sqr() + d.1.enclosure().sqr()).sqrt()?;
            Point::new(ci.x + ri * d.0.enclosure() / len, ci.y + ri * d.1.enclosure() / len)
        };
        if region.may_contain(&p, &[i]) != Verdict::False {
            cands.push(p);
        }
    }
    let r2 = radius.sqr().enclosure();
    let mut verdict = Verdict::True;
    let mut max_d2 = Interval::zero();
    let mut farthest = None;
    for p in &cands {
        let d2 = dist2(p, &t);
        verdict = verdict.and(d2.le(&r2));
        if farthest.is_none() || d2.hi() > max_d2.hi() {
            max_d2 = d2;
            farthest = Some(*p);
        }
    }
    let max_distance = max_d2.sqrt()?;
    let check = CheckRecord::interval(
        format!("max distance from region to ({:.4}, {:.4})", center.x.to_f64(), center.y.to_f64()),
        max_distance,
        crate::numerics::Relation::Le,
        radius.enclosure(),
    );
    let verdict = if cands.is_empty() { Verdict::True } else { verdict.and(check.verdict) };
    Ok(DiskReport { verdict, candidates: cands.len(), max_distance, farthest, check })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::expr::exact_constant;

    fn c(s: &str) -> Exact {
        exact_constant(s).unwrap()
    }

    fn square() -> MidpointRegion {
        MidpointRegion::new(
            vec![
                RegionConstraint::vertical(c("0"), true),
                RegionConstraint::vertical(c("1"), false),
                RegionConstraint::HalfPlane { normal: (c("0"), c("1")), offset: c("0") },
                RegionConstraint::HalfPlane { normal: (c("0"), c("-1")), offset: c("-1") },
                RegionConstraint::InsideDisk { center: ExactPoint::parse("0.5", "0.5").unwrap(), radius: c("1") },
            ],
            vec!["unit square".into()],
        )
        .unwrap()
    }

    #[test]
    fn unit_square_vertices_and_disks() {
        let env = feasible_midpoint_region(&square());
        assert_eq!(env.vertices.iter().filter(|v| v.feasible.is_true()).count(), 4);
        let corner = ExactPoint::from_ints(0, 0);
        assert_eq!(region_in_disk(&square(), &corner, &c("0.1")).unwrap().verdict, Verdict::False);
        let r = region_in_disk(&square(), &ExactPoint::parse("0.5", "0.5").unwrap(), &c("0.71")).unwrap();
        assert!(r.verdict.is_true());
        assert!((r.max_distance.mid() - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn strip_meets_disk_twice_per_line() {
        let region = MidpointRegion::new(
            vec![
                RegionConstraint::vertical(c("-0.5"), true),
                RegionConstraint::vertical(c("0.5"), false),
                RegionConstraint::InsideDisk { center: ExactPoint::from_ints(0, 0), radius: c("1") },
            ],
            vec![],
        )
        .unwrap();
        let env = feasible_midpoint_region(&region);
        assert_eq!(env.vertices.len(), 4);
        for v in &env.vertices {
            assert!((v.point.y.mid().abs() - 0.75f64.sqrt()).abs() < 1e-12);
        }
        let (bx, by) = env.bounds.unwrap();
        assert!(bx.contains(0.5) && by.contains(1.0));
    }

    #[test]
    fn degenerate_constraints_rejected() {
        assert!(MidpointRegion::new(vec![RegionConstraint::InsideDisk { center: ExactPoint::from_ints(0, 0), radius: c("0") }], vec![]).is_err());
    }
}
