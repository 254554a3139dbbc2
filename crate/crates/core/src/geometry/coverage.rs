//! Exact coverage of a container by closed convex regions.
//!
//! The container is cut into vertical slabs at every vertex abscissa and
//! every proper edge crossing. Inside a slab no two edges cross, so the
//! edges spanning the slab split it into trapezoidal cells, and region
//! membership is constant on each open cell. One witness per cell decides
//! coverage.

use std::collections::BTreeSet;

use super::boxes::ContainerSquare;
use super::point::{ExactPoint, ExactSegment};
use super::shapes::ConvexPolygon;
use crate::numerics::{Exact, Verdict};

#[derive(Clone, Debug)]
pub struct CoverageReport {
    pub verdict: Verdict,
    pub cells_checked: usize,
    /// First uncovered witness, if any.
    pub uncovered: Option<ExactPoint>,
}

fn proper_crossing_x(e: &ExactSegment, f: &ExactSegment) -> Option<Exact> {
    // f64 bounding-box reject first
    let (ea, eb) = (e.a.to_f64(), e.b.to_f64());
    let (fa, fb) = (f.a.to_f64(), f.b.to_f64());
    let tol = 1e-9;
    if ea.0.max(eb.0) + tol < fa.0.min(fb.0)
        || fa.0.max(fb.0) + tol < ea.0.min(eb.0)
        || ea.1.max(eb.1) + tol < fa.1.min(fb.1)
        || fa.1.max(fb.1) + tol < ea.1.min(eb.1)
    {
        return None;
    }
    let d1 = super::point::orientation(&e.a, &e.b, &f.a);
    let d2 = super::point::orientation(&e.a, &e.b, &f.b);
    let d3 = super::point::orientation(&f.a, &f.b, &e.a);
    let d4 = super::point::orientation(&f.a, &f.b, &e.b);
    if d1 * d2 >= 0 || d3 * d4 >= 0 {
        return None;
    }
    // e.a + t (e.b - e.a), t = cross(f.a - e.a, f.dir) / cross(e.dir, f.dir)
    let r = &e.b - &e.a;
    let s = &f.b - &f.a;
    let t = (&f.a - &e.a).cross(&s) / r.cross(&s);
    Some(&e.a.x + &(&r.x * &t))
}

/// Ordinate of a non-vertical segment at abscissa `x`.
fn y_at(e: &ExactSegment, x: &Exact) -> Exact {
    let t = (x - &e.a.x) / (&e.b.x - &e.a.x);
    &e.a.y + &((&e.b.y - &e.a.y) * t)
}

pub fn polygons_cover_square(regions: &[ConvexPolygon], s: &ContainerSquare) -> CoverageReport {
    let zero = Exact::zero();
    let side = s.side.clone();
    let half = Exact::from_ratio(1, 2);

    let mut edges: Vec<ExactSegment> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for r in regions {
        for e in r.edges() {
            let key = if e.a.lex_cmp(&e.b).is_le() { (e.a.clone(), e.b.clone()) } else { (e.b.clone(), e.a.clone()) };
            if seen.insert(key.clone()) {
                edges.push(ExactSegment::new(key.0, key.1));
            }
        }
    }

    let mut xs: BTreeSet<Exact> = BTreeSet::new();
    xs.insert(zero.clone());
    xs.insert(side.clone());
    for r in regions {
        for v in r.vertices() {
            if v.x > zero && v.x < side {
                xs.insert(v.x.clone());
            }
        }
    }
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if let Some(x) = proper_crossing_x(&edges[i], &edges[j]) {
                if x > zero && x < side {
                    xs.insert(x);
                }
            }
        }
    }
    let xs: Vec<Exact> = xs.into_iter().collect();

    let mut cells = 0;
    let mut verdict = Verdict::True;
    for w in xs.windows(2) {
        let xm = (&w[0] + &w[1]) * &half;
        let mut ys: BTreeSet<Exact> = BTreeSet::new();
        ys.insert(zero.clone());
        ys.insert(side.clone());
        for e in &edges {
            // edges are stored with a.x <= b.x
            if e.a.x <= w[0] && e.b.x >= w[1] && e.a.x != e.b.x {
                let y = y_at(e, &xm);
                if y > zero && y < side {
                    ys.insert(y);
                }
            }
        }
        let ys: Vec<Exact> = ys.into_iter().collect();
        for yw in ys.windows(2) {
            cells += 1;
            let witness = ExactPoint::new(xm.clone(), (&yw[0] + &yw[1]) * &half);
            if !regions.iter().any(|r| r.contains(&witness)) {
                verdict = Verdict::False;
                return CoverageReport { verdict, cells_checked: cells, uncovered: Some(witness) };
            }
        }
    }
    CoverageReport { verdict, cells_checked: cells, uncovered: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> ExactPoint {
        ExactPoint::from_ints(x, y)
    }

    fn container(n: i64) -> ContainerSquare {
        ContainerSquare::new(Exact::from_int(n)).unwrap()
    }

    #[test]
    fn diagonal_split_covers() {
        let t1 = ConvexPolygon::new(vec![p(0, 0), p(1, 0), p(1, 1)]).unwrap();
        let t2 = ConvexPolygon::new(vec![p(0, 0), p(1, 1), p(0, 1)]).unwrap();
        let both = polygons_cover_square(&[t1.clone(), t2], &container(1));
        assert_eq!(both.verdict, Verdict::True);
        let one = polygons_cover_square(&[t1], &container(1));
        assert_eq!(one.verdict, Verdict::False);
        assert!(one.uncovered.is_some());
    }

    #[test]
    fn overlapping_regions_cover() {
        // two overlapping rectangles, crossing edges create extra events
        let a = ConvexPolygon::new(vec![p(0, 0), p(2, 0), p(2, 1), p(0, 2)]).unwrap();
        let b = ConvexPolygon::new(vec![p(0, 1), p(2, 0), p(2, 2), p(0, 2)]).unwrap();
        let c = ConvexPolygon::new(vec![p(0, 0), p(1, 0), p(0, 1)]).unwrap();
        assert_eq!(polygons_cover_square(&[a.clone(), b.clone()], &container(2)).verdict, Verdict::True);
        assert_eq!(polygons_cover_square(&[a, c], &container(2)).verdict, Verdict::False);
    }

    #[test]
    fn thin_gap_is_found() {
        let third = Exact::from_ratio(1, 3);
        let left = ConvexPolygon::new(vec![
            p(0, 0),
            ExactPoint::new(third.clone(), Exact::zero()),
            ExactPoint::new(third.clone(), Exact::one()),
            p(0, 1),
        ])
        .unwrap();
        let x2 = Exact::from_ratio(1, 3) + Exact::from_ratio(1, 1_000_000);
        let right = ConvexPolygon::new(vec![
            ExactPoint::new(x2.clone(), Exact::zero()),
            p(1, 0),
            p(1, 1),
            ExactPoint::new(x2, Exact::one()),
        ])
        .unwrap();
        assert_eq!(polygons_cover_square(&[left, right], &container(1)).verdict, Verdict::False);
    }
}
