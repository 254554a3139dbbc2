use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::numerics::{expr::exact_constant, Exact, Interval};

/// A point with interval coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: Interval,
    pub y: Interval,
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [[self.x.lo(), self.x.hi()], [self.y.lo(), self.y.hi()]].serialize(s)
    }
}

impl Point {
    pub fn new(x: Interval, y: Interval) -> Point {
        Point { x, y }
    }

    pub fn from_f64(x: f64, y: f64) -> Point {
        Point::new(Interval::point(x), Interval::point(y))
    }

    pub fn dot(&self, o: &Point) -> Interval {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(&self, o: &Point) -> Interval {
        self.x * o.y - self.y * o.x
    }

    pub fn norm2(&self) -> Interval {
        self.x.sqr() + self.y.sqr()
    }

    pub fn mid(&self) -> (f64, f64) {
        (self.x.mid(), self.y.mid())
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<Interval> for Point {
    type Output = Point;
    fn mul(self, k: Interval) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

/// Euclidean distance enclosure.
pub fn distance(p: &Point, q: &Point) -> Interval {
    (*p - *q).norm2().sqrt().expect("squared norm is non-negative")
}

/// A point with exact coordinates in the surd field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactPoint {
    pub x: Exact,
    pub y: Exact,
}

impl ExactPoint {
    pub fn new(x: Exact, y: Exact) -> ExactPoint {
        ExactPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> ExactPoint {
        ExactPoint::new(Exact::from_int(x), Exact::from_int(y))
    }

    pub fn parse(x: &str, y: &str) -> Result<ExactPoint> {
        Ok(ExactPoint::new(exact_constant(x)?, exact_constant(y)?))
    }

    pub fn to_interval(&self) -> Point {
        Point::new(self.x.enclosure(), self.y.enclosure())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }

    pub fn dot(&self, o: &ExactPoint) -> Exact {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &ExactPoint) -> Exact {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm2(&self) -> Exact {
        self.dot(self)
    }

    pub fn dist2(&self, o: &ExactPoint) -> Exact {
        (self - o).norm2()
    }

    pub fn scale(&self, k: &Exact) -> ExactPoint {
        ExactPoint::new(&self.x * k, &self.y * k)
    }

    pub fn midpoint(&self, o: &ExactPoint) -> ExactPoint {
        let half = Exact::from_ratio(1, 2);
        (self + o).scale(&half)
    }

    /// `self + t (o - self)`.
    pub fn lerp(&self, o: &ExactPoint, t: &Exact) -> ExactPoint {
        self + &(o - self).scale(t)
    }

    /// Lexicographic order on (x, y).
    pub fn lex_cmp(&self, o: &ExactPoint) -> std::cmp::Ordering {
        self.x.cmp(&o.x).then_with(|| self.y.cmp(&o.y))
    }
}

/// Sign of the turn `a -> b -> c`: positive for counterclockwise.
pub fn orientation(a: &ExactPoint, b: &ExactPoint, c: &ExactPoint) -> i32 {
    (b - a).cross(&(c - a)).signum()
}

impl fmt::Debug for ExactPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.to_f64();
        write!(f, "({x:.6}, {y:.6})")
    }
}

impl fmt::Display for ExactPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add<&ExactPoint> for &ExactPoint {
    type Output = ExactPoint;
    fn add(self, o: &ExactPoint) -> ExactPoint {
        ExactPoint::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub<&ExactPoint> for &ExactPoint {
    type Output = ExactPoint;
    fn sub(self, o: &ExactPoint) -> ExactPoint {
        ExactPoint::new(&self.x - &o.x, &self.y - &o.y)
    }
}

/// Point serialised as a pair of constant strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSpec(pub String, pub String);

impl PointSpec {
    pub fn resolve(&self) -> Result<ExactPoint> {
        ExactPoint::parse(&self.0, &self.1)
    }

    pub fn from_exact(p: &ExactPoint) -> PointSpec {
        PointSpec(p.x.to_expr_string(), p.y.to_expr_string())
    }
}

/// A segment with interval endpoints; `a == b` is allowed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Segment {
        Segment { a, b }
    }

    pub fn length(&self) -> Interval {
        distance(&self.a, &self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactSegment {
    pub a: ExactPoint,
    pub b: ExactPoint,
}

impl ExactSegment {
    pub fn new(a: ExactPoint, b: ExactPoint) -> ExactSegment {
        ExactSegment { a, b }
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn to_interval(&self) -> Segment {
        Segment::new(self.a.to_interval(), self.b.to_interval())
    }

    pub fn length2(&self) -> Exact {
        self.a.dist2(&self.b)
    }

    /// Closed-segment membership.
    pub fn contains(&self, p: &ExactPoint) -> bool {
        if self.is_degenerate() {
            return p == &self.a;
        }
        if orientation(&self.a, &self.b, p) != 0 {
            return false;
        }
        let d1 = (p - &self.a).dot(&(&self.b - &self.a));
        let d2 = (p - &self.b).dot(&(&self.a - &self.b));
        !d1.is_negative() && !d2.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_examples() {
        let d = distance(&Point::from_f64(0.0, 0.0), &Point::from_f64(1.0, 0.0));
        assert!(d.is_point() && d.lo() == 1.0);
        let s3 = Exact::sqrt_int(3) / Exact::from_int(2);
        let p = ExactPoint::new(s3, Exact::from_ratio(1, 2));
        assert_eq!(p.dist2(&ExactPoint::from_ints(0, 1)), Exact::one());
        assert!(distance(&p.to_interval(), &Point::from_f64(0.0, 1.0)).contains(1.0));
    }

    #[test]
    fn diagonal_neighbour_distance() {
        // oracle: sqrt(1 + 0.64) computed directly
        let oracle = (1.0f64 + 0.64).sqrt();
        let p = ExactPoint::parse("0.5", "0.9").unwrap();
        for dy in ["0.8", "-0.8"] {
            let q = ExactPoint::new(Exact::from_ratio(3, 2), &p.y + &exact_constant(dy).unwrap());
            let d = distance(&p.to_interval(), &q.to_interval());
            assert!((d.mid() - oracle).abs() < 1e-15);
            assert_eq!(p.dist2(&q), Exact::from_ratio(41, 25));
        }
    }

    #[test]
    fn segment_membership() {
        let s = ExactSegment::new(ExactPoint::from_ints(0, 0), ExactPoint::from_ints(2, 2));
        assert!(s.contains(&ExactPoint::from_ints(1, 1)));
        assert!(s.contains(&ExactPoint::from_ints(2, 2)));
        assert!(!s.contains(&ExactPoint::from_ints(3, 3)));
        assert!(!s.contains(&ExactPoint::from_ints(1, 0)));
    }
}
