//! Outward-rounded interval arithmetic on `f64` endpoints.
//!
//! Rounding direction is recovered from error-free transformations
//! (TwoSum and FMA residuals) instead of switching the FPU rounding mode, so
//! results that are exactly representable stay degenerate intervals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::Verdict;
use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` that is guaranteed to contain the real it
/// stands for.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

/// Below this magnitude FMA residuals may be inexact, so rounding falls back
/// to unconditional widening.
const TINY: f64 = 1e-290;

fn widen_down(x: f64) -> f64 {
    if x == f64::INFINITY {
        f64::MAX
    } else {
        x.next_down()
    }
}

fn widen_up(x: f64) -> f64 {
    if x == f64::NEG_INFINITY {
        f64::MIN
    } else {
        x.next_up()
    }
}

/// Rounded result `r` of an operation together with the sign of
/// `true - r`; returns the enclosing `(down, up)` pair.
fn bracket(r: f64, err_sign: f64) -> (f64, f64) {
    if !r.is_finite() {
        return (widen_down(r), widen_up(r));
    }
    if err_sign > 0.0 {
        (r, widen_up(r))
    } else if err_sign < 0.0 {
        (widen_down(r), r)
    } else if err_sign == 0.0 {
        (r, r)
    } else {
        (widen_down(r), widen_up(r))
    }
}

fn add_round(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    if !s.is_finite() {
        return (widen_down(s), widen_up(s));
    }
    // Knuth TwoSum.
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    bracket(s, err)
}

fn mul_round(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    if p == 0.0 {
        if a == 0.0 || b == 0.0 {
            return (0.0, 0.0);
        }
        return (-f64::from_bits(1), f64::from_bits(1));
    }
    if p.abs() < TINY {
        return (widen_down(widen_down(p)), widen_up(widen_up(p)));
    }
    let err = a.mul_add(b, -p);
    bracket(p, err)
}

fn div_round(a: f64, b: f64) -> (f64, f64) {
    let q = a / b;
    if q == 0.0 {
        if a == 0.0 {
            return (0.0, 0.0);
        }
        return (-f64::from_bits(1), f64::from_bits(1));
    }
    if q.abs() < TINY || !q.is_finite() {
        return (widen_down(widen_down(q)), widen_up(widen_up(q)));
    }
    // a - q*b is exact; true quotient minus q has the sign of r / b.
    let r = (-q).mul_add(b, a);
    bracket(q, r * b.signum())
}

fn sqrt_round(x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (0.0, 0.0);
    }
    let s = x.sqrt();
    if x < TINY {
        return (widen_down(s).max(0.0), widen_up(s));
    }
    let r = (-s).mul_add(s, x);
    let (lo, hi) = bracket(s, r);
    (lo.max(0.0), hi)
}

impl Interval {
    /// Builds `[lo, hi]`. Panics on NaN or reversed bounds; those are
    /// programming errors, not data errors.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(!lo.is_nan() && !hi.is_nan(), "NaN interval bound");
        assert!(lo <= hi, "reversed interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval::new(x, x)
    }

    /// Smallest interval around a decimal literal that may not be exactly
    /// representable.
    pub fn around(x: f64) -> Self {
        Interval::new(widen_down(x), widen_up(x))
    }

    pub fn from_i64(n: i64) -> Self {
        let f = n as f64;
        if f as i64 == n && f.abs() < 9.0e15 {
            Interval::point(f)
        } else {
            Interval::around(f)
        }
    }

    /// Interval containing `num / den`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Interval::from_i64(num) / Interval::from_i64(den)
    }

    pub fn zero() -> Self {
        Interval::point(0.0)
    }

    pub fn one() -> Self {
        Interval::point(1.0)
    }

    /// Encloses pi.
    pub fn pi() -> Self {
        // The f64 constant is the nearest double below pi.
        Interval::new(std::f64::consts::PI, std::f64::consts::PI.next_up())
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    pub fn width(&self) -> f64 {
        add_round(self.hi, -self.lo).1
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    /// Intersection, or `None` when the intervals are disjoint.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then(|| Interval::new(lo, hi))
    }

    pub fn abs(&self) -> Interval {
        if self.lo >= 0.0 {
            *self
        } else if self.hi <= 0.0 {
            -*self
        } else {
            Interval::new(0.0, (-self.lo).max(self.hi))
        }
    }

    pub fn min(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.min(other.hi))
    }

    pub fn max(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.max(other.lo), self.hi.max(other.hi))
    }

    pub fn sqr(&self) -> Interval {
        let a = self.abs();
        let lo = mul_round(a.lo, a.lo).0;
        let hi = mul_round(a.hi, a.hi).1;
        Interval::new(lo.max(0.0), hi)
    }

    pub fn sqrt(&self) -> Result<Interval> {
        if self.hi < 0.0 {
            return Err(Error::Domain(format!("sqrt of negative interval {self:?}")));
        }
        let lo = if self.lo <= 0.0 { 0.0 } else { sqrt_round(self.lo).0 };
        Ok(Interval::new(lo, sqrt_round(self.hi).1))
    }

    pub fn checked_div(&self, rhs: &Interval) -> Result<Interval> {
        if rhs.contains_zero() {
            return Err(Error::Domain(format!("division by interval containing zero {rhs:?}")));
        }
        let cands = [
            div_round(self.lo, rhs.lo),
            div_round(self.lo, rhs.hi),
            div_round(self.hi, rhs.lo),
            div_round(self.hi, rhs.hi),
        ];
        Ok(Self::from_candidates(&cands))
    }

    fn from_candidates(cands: &[(f64, f64)]) -> Interval {
        let lo = cands.iter().map(|c| c.0).fold(f64::INFINITY, f64::min);
        let hi = cands.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
        Interval::new(lo, hi)
    }

    pub fn lt(&self, other: &Interval) -> Verdict {
        cmp_strict(self, other, Relation::Lt)
    }

    pub fn le(&self, other: &Interval) -> Verdict {
        cmp_strict(self, other, Relation::Le)
    }

    pub fn gt(&self, other: &Interval) -> Verdict {
        cmp_strict(self, other, Relation::Gt)
    }

    pub fn ge(&self, other: &Interval) -> Verdict {
        cmp_strict(self, other, Relation::Ge)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{:.12}, {:.12}]", self.lo, self.hi)
        }
    }
}

impl serde::Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(s)
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-self.hi, -self.lo)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval::new(add_round(self.lo, rhs.lo).0, add_round(self.hi, rhs.hi).1)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        self + (-rhs)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let cands = [
            mul_round(self.lo, rhs.lo),
            mul_round(self.lo, rhs.hi),
            mul_round(self.hi, rhs.lo),
            mul_round(self.hi, rhs.hi),
        ];
        Interval::from_candidates(&cands)
    }
}

/// Panicking division; use [`Interval::checked_div`] when the divisor may
/// straddle zero.
impl Div for Interval {
    type Output = Interval;
    fn div(self, rhs: Interval) -> Interval {
        self.checked_div(&rhs).expect("interval division by zero")
    }
}

/// Comparison relations accepted by [`cmp_strict`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    pub fn symbol(&self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
        }
    }

    pub fn parse(s: &str) -> Result<Relation> {
        match s.trim() {
            "<" => Ok(Relation::Lt),
            "<=" | "≤" => Ok(Relation::Le),
            ">" => Ok(Relation::Gt),
            ">=" | "≥" => Ok(Relation::Ge),
            other => Err(Error::Parse(format!("unknown relation {other:?}"))),
        }
    }
}

/// Decides `a rel b` for every pair of reals in `a × b`.
pub fn cmp_strict(a: &Interval, b: &Interval, rel: Relation) -> Verdict {
    let (holds, fails) = match rel {
        Relation::Lt => (a.hi < b.lo, a.lo >= b.hi),
        Relation::Le => (a.hi <= b.lo, a.lo > b.hi),
        Relation::Gt => (a.lo > b.hi, a.hi <= b.lo),
        Relation::Ge => (a.lo >= b.hi, a.hi < b.lo),
    };
    if holds {
        Verdict::True
    } else if fails {
        Verdict::False
    } else {
        Verdict::Indeterminate
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_operations_stay_degenerate() {
        let a = Interval::point(0.5) + Interval::point(0.25);
        assert!(a.is_point());
        assert_eq!(a.lo(), 0.75);
        let m = Interval::point(3.0) * Interval::point(0.5);
        assert!(m.is_point());
        let s = Interval::point(4.0).sqrt().unwrap();
        assert!(s.is_point() && s.lo() == 2.0);
    }

    #[test]
    fn inexact_operations_enclose() {
        let tenth = Interval::ratio(1, 10);
        assert!(!tenth.is_point());
        assert!(tenth.lo() < 0.1 || tenth.hi() > 0.1);
        let s2 = Interval::point(2.0).sqrt().unwrap();
        assert!(s2.sqr().contains(2.0));
        assert!(s2.width() < 1e-15);
        let third = Interval::one() / Interval::point(3.0);
        assert!((third * Interval::point(3.0)).contains(1.0));
    }

    #[test]
    fn overlapping_is_indeterminate() {
        let a = Interval::new(0.0, 1.0);
        let b = Interval::point(0.5);
        assert_eq!(cmp_strict(&a, &b, Relation::Lt), Verdict::Indeterminate);
        assert_eq!(cmp_strict(&b, &Interval::point(0.7), Relation::Lt), Verdict::True);
        assert_eq!(cmp_strict(&b, &Interval::point(0.5), Relation::Le), Verdict::True);
        assert_eq!(cmp_strict(&b, &Interval::point(0.5), Relation::Lt), Verdict::False);
    }

    #[test]
    fn domain_errors_are_reported() {
        assert!(Interval::new(-2.0, -1.0).sqrt().is_err());
        assert!(Interval::one().checked_div(&Interval::new(-1.0, 1.0)).is_err());
        // A straddling argument is clipped at zero, not rejected.
        assert_eq!(Interval::new(-1e-20, 4.0).sqrt().unwrap().lo(), 0.0);
    }

    #[test]
    fn pi_is_enclosed() {
        let pi = Interval::pi();
        assert!(pi.lo() <= std::f64::consts::PI && pi.width() < 1e-15);
    }
}
