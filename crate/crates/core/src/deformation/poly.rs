//! Exact bounds of quantities that are polynomials of degree at most two in
//! the piece parameter `s ∈ [0, 1]`.

use crate::numerics::{Exact, Relation};

#[derive(Clone, Debug, PartialEq)]
pub struct Quadratic {
    pub c0: Exact,
    pub c1: Exact,
    pub c2: Exact,
}

impl Quadratic {
    /// Interpolates values at `s = 0, 1/2, 1`.
    pub fn from_samples(q0: &Exact, qh: &Exact, q1: &Exact) -> Quadratic {
        let two = Exact::from_int(2);
        let c2 = &(&two * q0 - Exact::from_int(4) * qh) + &(&two * q1);
        let c1 = &(q1 - q0) - &c2;
        Quadratic { c0: q0.clone(), c1, c2 }
    }

    pub fn eval(&self, s: &Exact) -> Exact {
        &(&self.c0 + &(&self.c1 * s)) + &(&self.c2 * &(s * s))
    }

    /// Interior critical point, if it lies strictly inside `(0, 1)`.
    fn vertex(&self) -> Option<Exact> {
        if self.c2.is_zero() {
            return None;
        }
        let s = -(&self.c1 / &(Exact::from_int(2) * &self.c2));
        (s.is_positive() && s < Exact::one()).then_some(s)
    }

    pub fn max_on_unit(&self) -> Exact {
        let mut m = self.c0.clone().max(self.eval(&Exact::one()));
        if self.c2.is_negative() {
            if let Some(s) = self.vertex() {
                m = m.max(self.eval(&s));
            }
        }
        m
    }

    pub fn min_on_unit(&self) -> Exact {
        let mut m = self.c0.clone().min(self.eval(&Exact::one()));
        if self.c2.is_positive() {
            if let Some(s) = self.vertex() {
                m = m.min(self.eval(&s));
            }
        }
        m
    }

    /// The extreme value relevant to `q(s) rel rhs` holding on all of
    /// `[0, 1]`.
    pub fn worst(&self, rel: Relation) -> Exact {
        match rel {
            Relation::Lt | Relation::Le => self.max_on_unit(),
            Relation::Gt | Relation::Ge => self.min_on_unit(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64) -> Quadratic {
        // a + b s + c s^2 sampled then refitted
        let f = |s: Exact| Exact::from_int(a) + Exact::from_int(b) * &s + Exact::from_int(c) * &s * &s;
        Quadratic::from_samples(&f(Exact::zero()), &f(Exact::from_ratio(1, 2)), &f(Exact::one()))
    }

    #[test]
    fn refit_recovers_coefficients() {
        let p = q(3, -4, 5);
        assert_eq!(p.c0, Exact::from_int(3));
        assert_eq!(p.c1, Exact::from_int(-4));
        assert_eq!(p.c2, Exact::from_int(5));
    }

    #[test]
    fn extremes_include_the_vertex() {
        // 1 - 4 s + 4 s^2 = (1 - 2s)^2: min 0 at 1/2
        let p = q(1, -4, 4);
        assert_eq!(p.min_on_unit(), Exact::zero());
        assert_eq!(p.max_on_unit(), Exact::one());
        // -(1 - 2s)^2 + 1: max 1 at 1/2
        let p = q(0, 4, -4);
        assert_eq!(p.max_on_unit(), Exact::one());
        assert_eq!(p.min_on_unit(), Exact::zero());
        // vertex outside the unit interval is ignored
        let p = q(0, 4, 1);
        assert_eq!(p.min_on_unit(), Exact::zero());
        assert_eq!(p.max_on_unit(), Exact::from_int(5));
    }
}
