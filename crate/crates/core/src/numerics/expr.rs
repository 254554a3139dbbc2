//! Symbolic constants.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' integer)?
//! atom    := number | 'sqrt' '(' expr ')' | 'pi' | 'f' '(' expr ')' | '(' expr ')'
//! number  := digits ('.' digits)?
//! ```
//!
//! Decimals denote the exact rational they spell. `pi` and `f(..)` (the
//! quadrilateral-lemma curve) only evaluate in interval mode.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Exact, Interval};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigRational),
    Pi,
    Sqrt(Box<Expr>),
    F(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser { s: src.as_bytes(), pos: 0, src };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }

    /// Exact value; fails on `pi` and `f(..)`.
    pub fn exact(&self) -> Result<Exact> {
        Ok(match self {
            Expr::Num(q) => Exact::from_rational(q.clone()),
            Expr::Pi => return Err(Error::Domain("pi has no exact surd value".into())),
            Expr::F(_) => return Err(Error::Domain("f(a) has no exact surd value".into())),
            Expr::Sqrt(e) => e.exact()?.sqrt()?,
            Expr::Neg(e) => -e.exact()?,
            Expr::Add(a, b) => a.exact()? + b.exact()?,
            Expr::Sub(a, b) => a.exact()? - b.exact()?,
            Expr::Mul(a, b) => a.exact()? * b.exact()?,
            Expr::Div(a, b) => a.exact()?.checked_div(&b.exact()?)?,
            Expr::Pow(a, n) => {
                let base = a.exact()?;
                (0..*n).fold(Exact::one(), |acc, _| acc * &base)
            }
        })
    }

    /// Interval enclosure of the value.
    pub fn interval(&self) -> Result<Interval> {
        Ok(match self {
            Expr::Num(q) => super::exact::rational_interval(q),
            Expr::Pi => Interval::pi(),
            Expr::F(a) => crate::lemmas::fcurve::f_enclosure(a.interval()?)?,
            Expr::Sqrt(e) => {
                let v = e.interval()?;
                if v.hi() < 0.0 {
                    return Err(Error::Domain(format!("sqrt of negative value in {self}")));
                }
                v.sqrt()?
            }
            Expr::Neg(e) => -e.interval()?,
            Expr::Add(a, b) => a.interval()? + b.interval()?,
            Expr::Sub(a, b) => a.interval()? - b.interval()?,
            Expr::Mul(a, b) => a.interval()? * b.interval()?,
            Expr::Div(a, b) => a.interval()?.checked_div(&b.interval()?)?,
            Expr::Pow(a, n) => {
                let base = a.interval()?;
                (0..*n).fold(Interval::one(), |acc, _| acc * base)
            }
        })
    }

    pub fn is_exact(&self) -> bool {
        match self {
            Expr::Num(_) => true,
            Expr::Pi | Expr::F(_) => false,
            Expr::Sqrt(e) | Expr::Neg(e) | Expr::Pow(e, _) => e.is_exact(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.is_exact() && b.is_exact()
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

/// Parses and evaluates a constant to an interval.
pub fn make_constant(src: &str) -> Result<Interval> {
    Expr::parse(src)?.interval()
}

/// Parses and evaluates a constant exactly.
pub fn exact_constant(src: &str) -> Result<Exact> {
    Expr::parse(src)?.exact()
}

impl FromStr for Expr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Expr> {
        Expr::parse(s)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Num(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Expr::Pi => f.write_str("pi"),
            Expr::Sqrt(e) => write!(f, "sqrt({e})"),
            Expr::F(e) => write!(f, "f({e})"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                wrap(f, e, 3)
            }
            Expr::Add(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" + ")?;
                wrap(f, b, 2)
            }
            Expr::Sub(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" - ")?;
                wrap(f, b, 2)
            }
            Expr::Mul(a, b) => {
                wrap(f, a, 2)?;
                f.write_str("*")?;
                wrap(f, b, 3)
            }
            Expr::Div(a, b) => {
                wrap(f, a, 2)?;
                f.write_str("/")?;
                wrap(f, b, 3)
            }
            Expr::Pow(a, n) => {
                wrap(f, a, 5)?;
                write!(f, "^{n}")
            }
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in constant {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let n: u32 = self.src[start..self.pos]
                .parse()
                .map_err(|_| self.error("expected integer exponent"))?;
            if n > 64 {
                return Err(self.error("exponent too large"));
            }
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.ident().to_string();
                match name.as_str() {
                    "pi" => Ok(Expr::Pi),
                    "sqrt" | "f" => {
                        self.expect(b'(')?;
                        let e = self.expr()?;
                        self.expect(b')')?;
                        Ok(if name == "sqrt" { Expr::Sqrt(Box::new(e)) } else { Expr::F(Box::new(e)) })
                    }
                    _ => {
                        self.pos = start;
                        Err(self.error(&format!("unknown identifier {name:?}")))
                    }
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let int_part = &self.src[start..self.pos];
        let mut frac_part = "";
        if self.pos < self.s.len() && self.s[self.pos] == b'.' {
            self.pos += 1;
            let fs = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            frac_part = &self.src[fs..self.pos];
        }
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(self.error("malformed number"));
        }
        let digits = format!("{int_part}{frac_part}");
        let numer: BigInt = if digits.is_empty() { BigInt::zero() } else {
            digits.parse().map_err(|_| self.error("malformed number"))?
        };
        let denom = (0..frac_part.len()).fold(BigInt::one(), |acc, _| acc * 10);
        Ok(Expr::Num(BigRational::new(numer, denom)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_constants_are_tight() {
        let c = make_constant("sqrt(2) - 1/2").unwrap();
        assert!(c.contains(0.914_213_562_373_095));
        assert!(c.width() < 1e-12);
        let z = make_constant("0").unwrap();
        assert!(z.is_point() && z.lo() == 0.0);
        let q = make_constant("2*sqrt(2) - 2").unwrap();
        assert!(q.contains(0.828_427_124_746_190));
        assert!(q.width() < 1e-12);
    }

    #[test]
    fn decimals_are_exact_rationals() {
        assert_eq!(exact_constant("0.9").unwrap(), Exact::from_ratio(9, 10));
        assert_eq!(exact_constant("0.6^2 + 0.8^2").unwrap(), Exact::one());
        assert_eq!(exact_constant("-(1 - 3/2)").unwrap(), Exact::from_ratio(1, 2));
        assert_eq!(exact_constant("2 - 1 - 1").unwrap(), Exact::zero());
        assert_eq!(exact_constant("8/2/2").unwrap(), Exact::from_int(2));
    }

    #[test]
    fn malformed_input_is_rejected() {
        for bad in ["", "sqrt(2", "1 +", "2 ** 3", "cos(1)", "1 2", ".", "sqrt 2"] {
            assert!(matches!(Expr::parse(bad), Err(Error::Parse(_))), "{bad}");
        }
        assert!(exact_constant("sqrt(-1)").is_err());
        assert!(make_constant("1/(1-1)").is_err());
        assert!(exact_constant("pi").is_err());
    }

    #[test]
    fn display_reparses_to_same_value() {
        for src in ["sqrt(2) - 1/2", "-(3 - sqrt(3))*2/5", "(1 + 2)^2 - 0.505*sqrt(2)", "1 - (2 - 3)"] {
            let e = Expr::parse(src).unwrap();
            let again = Expr::parse(&e.to_string()).unwrap();
            assert_eq!(e.exact().unwrap(), again.exact().unwrap(), "{src} vs {e}");
        }
    }
}
