use super::point::{orientation, ExactPoint, ExactSegment, Point};
use crate::error::{Error, Result};
use crate::numerics::{Exact, Verdict};

/// Closed convex polygon with counterclockwise exact vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<ExactPoint>,
    /// f64 bounding box with one-unit-in-the-last-place slack.
    bbox: [f64; 4],
}

impl ConvexPolygon {
    /// Accepts vertices in either orientation; rejects non-convex or
    /// degenerate input. Collinear consecutive vertices are allowed.
    pub fn new(mut vertices: Vec<ExactPoint>) -> Result<ConvexPolygon> {
        if vertices.len() < 3 {
            return Err(Error::Invalid(format!("polygon needs 3 vertices, got {}", vertices.len())));
        }
        if signed_area2(&vertices).is_negative() {
            vertices.reverse();
        }
        if !signed_area2(&vertices).is_positive() {
            return Err(Error::Invalid("polygon has zero area".into()));
        }
        let n = vertices.len();
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(Error::Invalid("repeated polygon vertex".into()));
            }
            let o = orientation(&vertices[i], &vertices[(i + 1) % n], &vertices[(i + 2) % n]);
            if o < 0 {
                return Err(Error::Invalid(format!("polygon is not convex at vertex {}", (i + 1) % n)));
            }
        }
        // A star-shaped winding could still pass the local test; total turning must be one loop.
        for i in 0..n {
            for j in 0..n {
                if orientation(&vertices[i], &vertices[(i + 1) % n], &vertices[j]) < 0 {
                    return Err(Error::Invalid("polygon is not convex".into()));
                }
            }
        }
        let bbox = bounding_box(&vertices);
        Ok(ConvexPolygon { vertices, bbox })
    }

    pub fn vertices(&self) -> &[ExactPoint] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = ExactSegment> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| ExactSegment::new(self.vertices[i].clone(), self.vertices[(i + 1) % n].clone()))
    }

    /// Twice the area.
    pub fn area2(&self) -> Exact {
        signed_area2(&self.vertices)
    }

    pub fn bbox(&self) -> [f64; 4] {
        self.bbox
    }

    /// Closed membership, decided exactly.
    pub fn contains(&self, p: &ExactPoint) -> bool {
        let (x, y) = p.to_f64();
        let [x0, y0, x1, y1] = self.bbox;
        let slack = 1e-9;
        if x < x0 - slack || x > x1 + slack || y < y0 - slack || y > y1 + slack {
            return false;
        }
        let n = self.vertices.len();
        (0..n).all(|i| orientation(&self.vertices[i], &self.vertices[(i + 1) % n], p) >= 0)
    }

    /// Closed membership of an interval point.
    pub fn contains_point(&self, p: &Point) -> Verdict {
        let n = self.vertices.len();
        let mut v = Verdict::True;
        for i in 0..n {
            let a = self.vertices[i].to_interval();
            let b = self.vertices[(i + 1) % n].to_interval();
            let c = (b - a).cross(&(*p - a));
            if c.hi() < 0.0 {
                return Verdict::False;
            }
            if c.lo() < 0.0 {
                v = Verdict::Indeterminate;
            }
        }
        v
    }

    /// Membership test in plain floating point, for sampling.
    pub fn contains_f64(&self, x: f64, y: f64) -> bool {
        let n = self.vertices.len();
        let pts: Vec<(f64, f64)> = self.vertices.iter().map(|v| v.to_f64()).collect();
        (0..n).all(|i| {
            let (ax, ay) = pts[i];
            let (bx, by) = pts[(i + 1) % n];
            (bx - ax) * (y - ay) - (by - ay) * (x - ax) >= -1e-12
        })
    }

    /// Vertex centroid, an interior point.
    pub fn centroid(&self) -> ExactPoint {
        let n = Exact::from_int(self.vertices.len() as i64);
        let sum = self
            .vertices
            .iter()
            .fold(ExactPoint::from_ints(0, 0), |acc, v| &acc + v);
        ExactPoint::new(&sum.x / &n, &sum.y / &n)
    }

    /// The same vertex cycle, up to rotation of the starting index.
    pub fn same_cycle(&self, other: &[ExactPoint]) -> bool {
        let n = self.vertices.len();
        if other.len() != n {
            return false;
        }
        (0..n).any(|s| (0..n).all(|i| self.vertices[(s + i) % n] == other[i]))
    }
}

pub fn signed_area2(vs: &[ExactPoint]) -> Exact {
    let n = vs.len();
    (0..n).fold(Exact::zero(), |acc, i| acc + vs[i].cross(&vs[(i + 1) % n]))
}

fn bounding_box(vs: &[ExactPoint]) -> [f64; 4] {
    let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
    for v in vs {
        let p = v.to_interval();
        b[0] = b[0].min(p.x.lo());
        b[1] = b[1].min(p.y.lo());
        b[2] = b[2].max(p.x.hi());
        b[3] = b[3].max(p.y.hi());
    }
    b
}

/// Exact closed-polygon membership for an interval point. Kept as a free
/// function for callers that only hold a vertex list.
pub fn point_in_polygon(p: &Point, poly: &ConvexPolygon) -> Verdict {
    poly.contains_point(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> ConvexPolygon {
        ConvexPolygon::new(vec![
            ExactPoint::from_ints(0, 0),
            ExactPoint::from_ints(1, 0),
            ExactPoint::from_ints(1, 1),
            ExactPoint::from_ints(0, 1),
        ])
        .unwrap()
    }

    #[test]
    fn membership_is_closed() {
        let sq = unit_square();
        assert!(sq.contains(&sq.centroid()));
        assert!(sq.contains(&ExactPoint::from_ints(1, 1)));
        assert_eq!(point_in_polygon(&Point::from_f64(-1.0, -1.0), &sq), Verdict::False);
        assert_eq!(point_in_polygon(&Point::from_f64(1.0, 0.0), &sq), Verdict::True);
        assert_eq!(point_in_polygon(&sq.centroid().to_interval(), &sq), Verdict::True);
    }

    #[test]
    fn clockwise_input_is_reoriented() {
        let p = ConvexPolygon::new(vec![
            ExactPoint::from_ints(0, 0),
            ExactPoint::from_ints(0, 1),
            ExactPoint::from_ints(1, 0),
        ])
        .unwrap();
        assert!(p.area2().is_positive());
    }

    #[test]
    fn rejects_bad_polygons() {
        let dart = vec![
            ExactPoint::from_ints(0, 0),
            ExactPoint::from_ints(2, 1),
            ExactPoint::from_ints(4, 0),
            ExactPoint::from_ints(2, 3),
        ];
        assert!(ConvexPolygon::new(dart).is_err());
        let flat = vec![ExactPoint::from_ints(0, 0), ExactPoint::from_ints(1, 1), ExactPoint::from_ints(2, 2)];
        assert!(ConvexPolygon::new(flat).is_err());
        assert!(ConvexPolygon::new(vec![ExactPoint::from_ints(0, 0)]).is_err());
    }
}
