//! The curve `f(a) = min over θ ∈ (0, π/4] of cosθ/(1+cosθ) + (1 - a cosθ)/sinθ`.
//!
//! Everything is evaluated in the variable `c = cos θ ∈ [√2/2, 1)`, where
//! the objective is `g(c) = c/(1+c) + (1 - a c)/√(1-c²)` with derivative
//! `g'(c) = 1/(1+c)² + (c - a)/(1-c²)^{3/2}`. Stationary points satisfy
//! `2c³ - (2a+2)c² + (a²-2a+3)c - (1-a²) = 0`.
//!
//! For `a > 2√2 - 2` the derivative is negative at `c = √2/2` and positive
//! on `[a, 1)`, so the minimum is interior. Minimality is certified by
//! branch and bound over `[√2/2, a]`, not by trusting the stationary point.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{trig, Interval, Verdict};

/// Below this gap between a box's lower bound and the incumbent, the box
/// is not split further.
const BNB_TOLERANCE: f64 = 1e-12;
const MIN_BOX_WIDTH: f64 = 1e-14;
const MAX_BOXES: usize = 2_000_000;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct FCurvePoint {
    #[serde(serialize_with = "ser_interval")]
    pub a: Interval,
    #[serde(serialize_with = "ser_interval")]
    pub cos_star: Interval,
    #[serde(serialize_with = "ser_interval")]
    pub theta_star: Interval,
    #[serde(serialize_with = "ser_interval")]
    pub f_value: Interval,
    /// The cubic evaluated on `cos(theta_star)`.
    #[serde(serialize_with = "ser_interval")]
    pub residual: Interval,
    pub boxes_explored: usize,
}

pub(crate) fn ser_interval<S: serde::Serializer>(i: &Interval, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(2))?;
    seq.serialize_element(&i.lo())?;
    seq.serialize_element(&i.hi())?;
    seq.end()
}

fn threshold() -> Interval {
    Interval::point(2.0) * Interval::point(2.0).sqrt().unwrap() - Interval::point(2.0)
}

fn half_sqrt2() -> Interval {
    Interval::point(2.0).sqrt().unwrap() / Interval::point(2.0)
}

/// `g` over a box of `c`, natural extension with the monotone first term.
fn objective(c: Interval, a: Interval) -> Result<Interval> {
    let one = Interval::one();
    let first = Interval::new(
        (Interval::point(c.lo()) / (one + Interval::point(c.lo()))).lo(),
        (Interval::point(c.hi()) / (one + Interval::point(c.hi()))).hi(),
    );
    let s = (one - c.sqr()).sqrt()?;
    Ok(first + (one - a * c).checked_div(&s)?)
}

fn derivative(c: Interval, a: Interval) -> Result<Interval> {
    let one = Interval::one();
    let s2 = one - c.sqr();
    let s3 = s2 * s2.sqrt()?;
    Ok(one / (one + c).sqr() + (c - a).checked_div(&s3)?)
}

/// The stationarity cubic at `c`.
pub fn cubic(c: Interval, a: Interval) -> Interval {
    let two = Interval::point(2.0);
    let three = Interval::point(3.0);
    let one = Interval::one();
    let c2 = c.sqr();
    two * c2 * c - (two * a + two) * c2 + (a.sqr() - two * a + three) * c - (one - a.sqr())
}

/// Lower bound of `g` on a box: natural form intersected with the
/// mean-value form.
fn lower_bound(c: Interval, a: Interval) -> Result<f64> {
    let nat = objective(c, a)?;
    let m = Interval::point(c.mid());
    let mvf = objective(m, a)? + derivative(c, a)? * (c - m);
    Ok(nat.lo().max(mvf.lo()))
}

/// Certified bisection for the sign change of `g'` on `[lo, hi]`.
fn stationary_point(a: Interval) -> Result<Interval> {
    let mut lo = half_sqrt2().hi();
    let mut hi = a.lo();
    if derivative(Interval::point(lo), a)?.hi() >= 0.0 {
        return Err(Error::Domain(format!("no certified root: g' not negative at sqrt(2)/2 for a = {a}")));
    }
    if derivative(Interval::point(hi), a)?.lo() <= 0.0 {
        // c = a gives g' = 1/(1+a)^2 > 0 exactly; an interval a can blur it.
        hi = a.hi();
        if derivative(Interval::point(hi), a)?.lo() <= 0.0 {
            return Err(Error::Domain(format!("no certified root: g' not positive at c = a for a = {a}")));
        }
    }
    while hi - lo > 0.0 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let d = derivative(Interval::point(mid), a)?;
        if d.hi() < 0.0 {
            lo = mid;
        } else if d.lo() > 0.0 {
            hi = mid;
        } else {
            // sign undecided: keep the whole uncertain stretch
            break;
        }
    }
    Ok(Interval::new(lo, hi))
}

/// Encloses `θ = arccos(c)` for `c` in `[√2/2, 1]`.
fn arccos_enclosure(c: Interval) -> Result<Interval> {
    let quarter = Interval::pi() / Interval::point(4.0);
    // lower end: largest θ with cos θ certified ≥ c.hi
    let find = |target: f64, want_above: bool| -> Result<f64> {
        let mut lo = 0.0f64;
        let mut hi = quarter.hi();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let cm = trig::cos(Interval::point(mid))?;
            let above = cm.lo() > target;
            if above {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(if want_above { lo } else { hi })
    };
    let t_lo = find(c.hi(), true)?;
    let t_hi = find(c.lo(), false)?;
    let t_hi = t_hi.next_up();
    Ok(Interval::new(t_lo.min(t_hi), t_hi))
}

/// Certified `f(a)`, its minimiser and the cubic residual there.
pub fn eval_f(a: Interval) -> Result<FCurvePoint> {
    match a.gt(&threshold()).and(a.lt(&Interval::one())) {
        Verdict::True => {}
        v => {
            return Err(Error::Domain(format!(
                "eval_f requires 2*sqrt(2)-2 < a < 1, got a = {a} ({v})"
            )))
        }
    }
    let c_star = stationary_point(a)?;
    let upper = objective(Interval::point(c_star.lo()), a)?
        .hi()
        .min(objective(Interval::point(c_star.hi()), a)?.hi());

    // Branch and bound over [√2/2, a]; beyond a the objective increases.
    let mut stack = vec![Interval::new(half_sqrt2().lo(), a.hi())];
    let mut lower = f64::INFINITY;
    let mut boxes = 0usize;
    while let Some(b) = stack.pop() {
        boxes += 1;
        if boxes > MAX_BOXES {
            return Err(Error::Domain("f(a) minimality undecided within box budget".into()));
        }
        let lb = lower_bound(b, a)?;
        if lb >= upper - BNB_TOLERANCE || b.width() < MIN_BOX_WIDTH {
            lower = lower.min(lb);
            continue;
        }
        let m = b.mid();
        if m <= b.lo() || m >= b.hi() {
            lower = lower.min(lb);
            continue;
        }
        stack.push(Interval::new(b.lo(), m));
        stack.push(Interval::new(m, b.hi()));
    }
    let lower = lower.min(upper);
    let theta_star = arccos_enclosure(c_star)?;
    let residual = cubic(trig::cos(theta_star)?, a);
    Ok(FCurvePoint {
        a,
        cos_star: c_star,
        theta_star,
        f_value: Interval::new(lower, upper),
        residual,
        boxes_explored: boxes,
    })
}

/// Enclosure of `f(a)` for an interval argument. `f` decreases in `a`, so
/// the endpoints bound it.
pub fn f_enclosure(a: Interval) -> Result<Interval> {
    if a.is_point() {
        return Ok(eval_f(a)?.f_value);
    }
    let at_hi = eval_f(Interval::point(a.hi()))?.f_value;
    let at_lo = eval_f(Interval::point(a.lo()))?.f_value;
    Ok(Interval::new(at_hi.lo(), at_lo.hi()))
}

/// `g` at a single angle, for reporting and tests.
pub fn objective_at_theta(theta: Interval, a: Interval) -> Result<Interval> {
    let c = trig::cos(theta)?;
    let s = trig::sin(theta)?;
    Ok(c / (Interval::one() + c) + (Interval::one() - a * c).checked_div(&s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::expr::make_constant;

    #[test]
    fn sqrt3_over_2_exceeds_half() {
        let a = make_constant("sqrt(3)/2").unwrap();
        let p = eval_f(a).unwrap();
        assert!(p.f_value.lo() > 0.5);
        assert!(p.f_value.width() < 1e-9, "{:?}", p.f_value);
        assert!(p.residual.lo() > -1e-9 && p.residual.hi() < 1e-9);
        assert!(p.theta_star.lo() > 0.0 && p.theta_star.hi() <= std::f64::consts::FRAC_PI_4);
    }

    #[test]
    fn minimum_below_quarter_turn_value() {
        let a = make_constant("0.95").unwrap();
        let p = eval_f(a).unwrap();
        let at_end = objective_at_theta(Interval::pi() / Interval::point(4.0), a).unwrap();
        assert!(p.f_value.hi() < at_end.lo());
    }

    #[test]
    fn domain_is_enforced() {
        assert!(eval_f(Interval::point(0.8)).is_err());
        assert!(eval_f(Interval::point(1.0)).is_err());
        assert!(eval_f(threshold()).is_err());
    }

    #[test]
    fn decreasing_in_a() {
        let f1 = eval_f(Interval::point(0.85)).unwrap().f_value;
        let f2 = eval_f(Interval::point(0.9)).unwrap().f_value;
        assert!(f1.lo() > f2.hi());
        let wide = f_enclosure(Interval::new(0.85, 0.9)).unwrap();
        assert!(wide.contains(f1.mid()) && wide.contains(f2.mid()));
    }
}
