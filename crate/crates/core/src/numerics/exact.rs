//! Exact arithmetic in the field generated by square roots of rationals.
//!
//! A value is a finite sum `Σ c_k √k` with `k` squarefree and `c_k`
//! rational. Sums, products and quotients stay in this form; the sign of any
//! value is decided exactly. Each value also carries an interval enclosure
//! used as a fast path.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Interval;
use crate::error::{Error, Result};

/// Largest radicand accepted when reducing square roots.
const MAX_RADICAND: u64 = 1 << 40;

#[derive(Clone)]
pub struct Exact {
    /// Terms sorted by radicand, no zero coefficients.
    terms: Vec<(u64, BigRational)>,
    enclosure: Interval,
}

/// Interval around a rational; a point when the rational is a double.
pub fn rational_interval(q: &BigRational) -> Interval {
    let f = q.to_f64().unwrap_or(f64::NAN);
    if f.is_finite() {
        if let Some(back) = BigRational::from_float(f) {
            if &back == q {
                return Interval::point(f);
            }
        }
        // Conversion is at worst faithful; two ulps cover either case.
        Interval::new(f.next_down().next_down(), f.next_up().next_up())
    } else if q.is_positive() {
        Interval::new(f64::MAX, f64::INFINITY)
    } else {
        Interval::new(f64::NEG_INFINITY, f64::MIN)
    }
}

fn sqrt_interval(k: u64) -> Interval {
    Interval::point(k as f64)
        .sqrt()
        .expect("radicand is positive")
}

/// Splits `n = s² · k` with `k` squarefree.
fn squarefree_split(mut n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut k = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= p;
        }
        if e % 2 == 1 {
            k *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (s, k * n)
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            return p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    n
}

fn big(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Exact {
    fn from_terms(mut terms: Vec<(u64, BigRational)>) -> Exact {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by_key(|t| t.0);
        let mut merged: Vec<(u64, BigRational)> = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            match merged.last_mut() {
                Some((lk, lc)) if *lk == k => *lc += c,
                _ => merged.push((k, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        let enclosure = merged.iter().fold(Interval::zero(), |acc, (k, c)| {
            let ci = rational_interval(c);
            acc + if *k == 1 { ci } else { ci * sqrt_interval(*k) }
        });
        Exact { terms: merged, enclosure }
    }

    pub fn zero() -> Exact {
        Exact::from_terms(Vec::new())
    }

    pub fn one() -> Exact {
        Exact::from_int(1)
    }

    pub fn from_int(n: i64) -> Exact {
        Exact::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Exact {
        Exact::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Exact {
        Exact::from_terms(vec![(1, q)])
    }

    /// `√q` for a non-negative rational `q`.
    pub fn sqrt_rational(q: &BigRational) -> Result<Exact> {
        if q.is_negative() {
            return Err(Error::Domain(format!("sqrt of negative {q}")));
        }
        if q.is_zero() {
            return Ok(Exact::zero());
        }
        // √(n/d) = √(n·d) / d
        let nd = q.numer() * q.denom();
        let nd = nd
            .to_u64()
            .filter(|v| *v <= MAX_RADICAND)
            .ok_or_else(|| Error::Domain(format!("radicand of sqrt({q}) too large")))?;
        let (s, k) = squarefree_split(nd);
        let coeff = big(s) / BigRational::from_integer(q.denom().clone());
        Ok(Exact::from_terms(vec![(k, coeff)]))
    }

    pub fn sqrt_int(n: u64) -> Exact {
        Exact::sqrt_rational(&big(n)).expect("non-negative")
    }

    /// Square root; only defined when the value is a rational.
    pub fn sqrt(&self) -> Result<Exact> {
        match self.as_rational() {
            Some(q) => Exact::sqrt_rational(&q),
            None => Err(Error::Domain(format!(
                "sqrt of irrational value {self} is outside the exact field"
            ))),
        }
    }

    pub fn enclosure(&self) -> Interval {
        self.enclosure
    }

    pub fn to_f64(&self) -> f64 {
        self.enclosure.mid()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|(k, _)| *k == 1)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(1, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// Flips the sign of every term whose radicand is divisible by `p`.
    fn conjugate(&self, p: u64) -> Exact {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| if k % p == 0 { (*k, -c.clone()) } else { (*k, c.clone()) })
            .collect();
        Exact::from_terms(terms)
    }

    /// Splits `self = A + B·√p`, where neither part involves `√p`.
    fn split_prime(&self, p: u64) -> (Exact, Exact) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (k, c) in &self.terms {
            if k % p == 0 {
                b.push((k / p, c.clone()));
            } else {
                a.push((*k, c.clone()));
            }
        }
        (Exact::from_terms(a), Exact::from_terms(b))
    }

    fn largest_prime(&self) -> Option<u64> {
        let mut best = None;
        for (k, _) in &self.terms {
            let mut n = *k;
            while n > 1 {
                let p = smallest_prime_factor(n);
                best = best.max(Some(p));
                n /= p;
            }
        }
        best
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.enclosure.lo() > 0.0 {
            return 1;
        }
        if self.enclosure.hi() < 0.0 {
            return -1;
        }
        if self.terms.is_empty() {
            return 0;
        }
        let Some(p) = self.largest_prime() else {
            let c = &self.terms[0].1;
            return if c.is_positive() { 1 } else { -1 };
        };
        let (a, b) = self.split_prime(p);
        let sa = a.signum();
        let sb = b.signum();
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        let disc = &(&a * &a) - &(&(&b * &b) * &Exact::from_int(p as i64));
        sa * disc.signum()
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Exact {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn sqr(&self) -> Exact {
        self * self
    }

    pub fn checked_div(&self, rhs: &Exact) -> Result<Exact> {
        if rhs.is_zero() {
            return Err(Error::Domain("exact division by zero".into()));
        }
        let mut num = self.clone();
        let mut den = rhs.clone();
        while let Some(p) = den.largest_prime() {
            let c = den.conjugate(p);
            num = &num * &c;
            den = &den * &c;
        }
        let q = den.as_rational().expect("rationalised denominator");
        let terms = num.terms.into_iter().map(|(k, c)| (k, c / &q)).collect();
        Ok(Exact::from_terms(terms))
    }

    pub fn min(self, other: Exact) -> Exact {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Exact) -> Exact {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Reads back the value as a constant expression.
    pub fn to_expr_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag_s = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            if *k == 1 {
                out.push_str(&mag_s);
            } else if mag.is_one() {
                out.push_str(&format!("sqrt({k})"));
            } else if mag.is_integer() {
                out.push_str(&format!("{mag_s}*sqrt({k})"));
            } else {
                out.push_str(&format!("{}*sqrt({k})/{}", mag.numer(), mag.denom()));
            }
        }
        out
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr_string())
    }
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (~{})", self.to_expr_string(), self.to_f64())
    }
}

impl PartialEq for Exact {
    fn eq(&self, other: &Exact) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Exact {}

impl PartialOrd for Exact {
    fn partial_cmp(&self, other: &Exact) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exact {
    fn cmp(&self, other: &Exact) -> Ordering {
        if self.enclosure.hi() < other.enclosure.lo() {
            return Ordering::Less;
        }
        if self.enclosure.lo() > other.enclosure.hi() {
            return Ordering::Greater;
        }
        (self - other).signum().cmp(&0)
    }
}

impl std::hash::Hash for Exact {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl From<i64> for Exact {
    fn from(n: i64) -> Exact {
        Exact::from_int(n)
    }
}

impl Neg for Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        Exact::from_terms(self.terms.into_iter().map(|(k, c)| (k, -c)).collect())
    }
}

impl Neg for &Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        -self.clone()
    }
}

impl Add<&Exact> for &Exact {
    type Output = Exact;
    fn add(self, rhs: &Exact) -> Exact {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        Exact::from_terms(terms)
    }
}

impl Sub<&Exact> for &Exact {
    type Output = Exact;
    fn sub(self, rhs: &Exact) -> Exact {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().map(|(k, c)| (*k, -c.clone())));
        Exact::from_terms(terms)
    }
}

impl Mul<&Exact> for &Exact {
    type Output = Exact;
    fn mul(self, rhs: &Exact) -> Exact {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (j, cj) in &self.terms {
            for (k, ck) in &rhs.terms {
                // √j·√k = g·√(j/g · k/g) with g = gcd(j, k)
                let g = j.gcd(k);
                terms.push(((j / g) * (k / g), cj * ck * big(g)));
            }
        }
        Exact::from_terms(terms)
    }
}

impl Div<&Exact> for &Exact {
    type Output = Exact;
    fn div(self, rhs: &Exact) -> Exact {
        self.checked_div(rhs).expect("exact division by zero")
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Exact> for Exact {
            type Output = Exact;
            fn $m(self, rhs: Exact) -> Exact { (&self).$m(&rhs) }
        }
        impl $tr<&Exact> for Exact {
            type Output = Exact;
            fn $m(self, rhs: &Exact) -> Exact { (&self).$m(rhs) }
        }
        impl $tr<Exact> for &Exact {
            type Output = Exact;
            fn $m(self, rhs: Exact) -> Exact { self.$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: u64) -> Exact {
        Exact::sqrt_int(n)
    }

    #[test]
    fn square_roots_reduce() {
        assert_eq!(s(8), Exact::from_int(2) * s(2));
        assert_eq!(s(4), Exact::from_int(2));
        let q = Exact::sqrt_rational(&BigRational::new(3.into(), 4.into())).unwrap();
        assert_eq!(q, s(3) / Exact::from_int(2));
        assert_eq!(s(2) * s(6), Exact::from_int(2) * s(3));
    }

    #[test]
    fn identities_are_exact() {
        let half = Exact::from_ratio(1, 2);
        let b = s(2) - &half;
        // 1 + 2(√2 - 1/2) = 2√2
        assert_eq!(Exact::one() + Exact::from_int(2) * &b, Exact::from_int(2) * s(2));
        // (√3/2)² + (1/2)² = 1
        let a = s(3) / Exact::from_int(2);
        assert_eq!(a.sqr() + half.sqr(), Exact::one());
        assert_eq!((s(2) - Exact::one()) / Exact::from_int(2), half.clone() * s(2) - half);
    }

    #[test]
    fn sign_of_nearly_cancelling_values() {
        // 2√2 - 7 + 5√3/2 is about 0.1585
        let d = Exact::from_int(2) * s(2) - Exact::from_int(7) + Exact::from_int(5) * s(3) / Exact::from_int(2);
        assert_eq!(d.signum(), 1);
        // √2 + √3 - √(5 + 2√6) vanishes; build (√2+√3)² - 5 - 2√6
        let t = (s(2) + s(3)).sqr() - Exact::from_int(5) - Exact::from_int(2) * s(6);
        assert_eq!(t.signum(), 0);
        assert!(t.is_zero());
        // 1.41421 + 1.73205 - 3.16228 ~ -0.016
        let u = s(2) + s(3) - s(10);
        assert_eq!(u.signum(), -1);
        let v = Exact::from_int(70) * s(2) - Exact::from_int(99);
        assert_eq!(v.signum(), -1);
    }

    #[test]
    fn division_rationalises() {
        let x = Exact::one() / (s(2) + s(3) + s(5));
        let back = x * (s(2) + s(3) + s(5));
        assert_eq!(back, Exact::one());
        assert!(Exact::one().checked_div(&(s(2) - s(2))).is_err());
    }

    #[test]
    fn expr_string_round_trips_in_value() {
        let x = Exact::from_ratio(-3, 4) + Exact::from_ratio(5, 7) * s(6);
        let f = x.to_f64();
        assert!((f - (-0.75 + 5.0 / 7.0 * 6f64.sqrt())).abs() < 1e-14);
        assert_eq!(x.to_expr_string(), "-3/4 + 5*sqrt(6)/7");
    }
}
