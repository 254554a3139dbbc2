//! Enclosures of sine and cosine on `[-pi/2, pi/2]`.

use super::Interval;
use crate::error::{Error, Result};

const TERMS: usize = 14;

/// Taylor sum with Lagrange remainder at a point; `odd` selects sine.
fn series_at(x: f64, odd: bool) -> Interval {
    let xi = Interval::point(x);
    let x2 = xi.sqr();
    let mut term = if odd { xi } else { Interval::one() };
    let mut sum = term;
    let mut n: i64 = if odd { 1 } else { 0 };
    for _ in 0..TERMS {
        term = -(term * x2) / Interval::from_i64((n + 1) * (n + 2));
        n += 2;
        sum = sum + term;
    }
    // Next term bounds the tail since the series alternates with
    // decreasing magnitude for |x| <= pi/2.
    let tail = (term * x2 / Interval::from_i64((n + 1) * (n + 2))).abs();
    sum + Interval::new(-tail.hi(), tail.hi())
}

fn check_domain(x: &Interval) -> Result<()> {
    let half_pi = Interval::pi() / Interval::point(2.0);
    if x.lo() < -half_pi.lo() || x.hi() > half_pi.lo() {
        return Err(Error::Domain(format!("trig argument {x:?} outside [-pi/2, pi/2]")));
    }
    Ok(())
}

/// Sine is increasing on the domain.
pub fn sin(x: Interval) -> Result<Interval> {
    check_domain(&x)?;
    let lo = series_at(x.lo(), true).lo().max(-1.0);
    let hi = series_at(x.hi(), true).hi().min(1.0);
    Ok(Interval::new(lo.min(hi), hi))
}

/// Cosine is even and decreasing in `|x|` on the domain.
pub fn cos(x: Interval) -> Result<Interval> {
    check_domain(&x)?;
    let a = x.abs();
    let lo = series_at(a.hi(), false).lo().max(0.0);
    let hi = if a.lo() == 0.0 { 1.0 } else { series_at(a.lo(), false).hi().min(1.0) };
    Ok(Interval::new(lo.min(hi), hi))
}

/// `(cos, sin)` of an angle given in degrees, for multiples on a grid.
pub fn cos_sin_degrees(deg: Interval) -> Result<(Interval, Interval)> {
    let rad = deg * Interval::pi() / Interval::point(180.0);
    Ok((cos(rad)?, sin(rad)?))
}
