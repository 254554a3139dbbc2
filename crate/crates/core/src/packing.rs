//! Packings: validation in the closed unit-square regime (upper bounds)
//! and the open box regime (lower-bound arguments), and chessboard
//! constructions.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{boxes_overlap, square_in_container, ContainerSquare, Point, Square};
use crate::numerics::expr::{exact_constant, make_constant};
use crate::numerics::{Exact, Interval, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// Closed squares of side exactly 1; shared edges allowed.
    Unit,
    /// Open squares of side in `(1, 1.01]`.
    Box,
}

#[derive(Clone, Debug)]
pub struct PackingInstance {
    pub container: ContainerSquare,
    pub regime: Regime,
    pub squares: Vec<Square>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PackingIssue {
    pub kind: String,
    pub indices: Vec<usize>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct PackingReport {
    pub verdict: Verdict,
    pub regime: Regime,
    pub count: usize,
    pub container_side: Interval,
    pub pairs_checked: usize,
    pub issues: Vec<PackingIssue>,
}

/// `True` iff every square certifiably lies in the container, has the
/// regime's side, and no two interiors meet.
pub fn validate_packing(p: &PackingInstance) -> PackingReport {
    let mut issues = Vec::new();
    for (i, sq) in p.squares.iter().enumerate() {
        let side = match p.regime {
            Regime::Unit => sq.side.ge(&Interval::one()).and(sq.side.le(&Interval::one())),
            Regime::Box => sq.is_box(),
        };
        if !side.is_true() {
            issues.push(PackingIssue { kind: "side outside regime".into(), indices: vec![i], verdict: side });
        }
        let inside = square_in_container(sq, &p.container);
        if !inside.is_true() {
            issues.push(PackingIssue { kind: "not inside container".into(), indices: vec![i], verdict: inside });
        }
    }
    let n = p.squares.len();
    let mut overlaps: Vec<PackingIssue> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let squares = &p.squares;
            (i + 1..n).filter_map(move |j| match boxes_overlap(&squares[i], &squares[j]) {
                Verdict::False => None,
                v => Some(PackingIssue { kind: "interiors may meet".into(), indices: vec![i, j], verdict: v }),
            })
        })
        .collect();
    overlaps.sort_by(|a, b| a.indices.cmp(&b.indices));
    issues.extend(overlaps);
    // Each issue as a verdict on validity: a certain overlap refutes it.
    let verdict = Verdict::all(issues.iter().map(|i| match (i.indices.len(), i.verdict) {
        (2, Verdict::True) => Verdict::False,
        (_, v) => v,
    }));
    PackingReport {
        verdict,
        regime: p.regime,
        count: n,
        container_side: p.container.side_interval(),
        pairs_checked: n * n.saturating_sub(1) / 2,
        issues,
    }
}

/// `n` closed unit squares on the grid of `[0, m]^2`, filled row by row.
pub fn trivial_packing(n: usize, m: usize) -> Result<PackingInstance> {
    if m == 0 || n > m * m {
        return Err(Error::Invalid(format!("{n} unit squares do not fit a {m}x{m} grid")));
    }
    let squares = (0..n)
        .map(|k| Square::axis_aligned((k % m) as f64 + 0.5, (k / m) as f64 + 0.5, 1.0))
        .collect();
    Ok(PackingInstance { container: ContainerSquare::new(Exact::from_int(m as i64))?, regime: Regime::Unit, squares })
}

impl PackingInstance {
    /// All squares turned a quarter about the container centre.
    pub fn quarter_turn(&self) -> PackingInstance {
        let c = self.container.side_interval() / Interval::from_i64(2);
        let pivot = Point::new(c, c);
        PackingInstance { squares: self.squares.iter().map(|s| s.quarter_turn(&pivot)).collect(), ..self.clone() }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SquareSpec {
    center: (String, String),
    #[serde(default = "zero")]
    angle: String,
    side: String,
}

fn zero() -> String {
    "0".into()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PackingSpec {
    #[serde(default)]
    name: Option<String>,
    container: String,
    regime: Regime,
    squares: Vec<SquareSpec>,
}

pub fn parse_packing(text: &str) -> Result<PackingInstance> {
    let spec: PackingSpec = serde_json::from_str(text).map_err(|e| Error::Parse(format!("packing: {e}")))?;
    let container = ContainerSquare::new(exact_constant(&spec.container)?)?;
    let mut squares = Vec::with_capacity(spec.squares.len());
    for (i, s) in spec.squares.iter().enumerate() {
        let c = Point::new(make_constant(&s.center.0)?, make_constant(&s.center.1)?);
        let sq = Square::new(c, make_constant(&s.angle)?, make_constant(&s.side)?)
            .map_err(|e| Error::Parse(format!("square {i}: {e}")))?;
        squares.push(sq);
    }
    Ok(PackingInstance { container, regime: spec.regime, squares })
}

pub fn load_packing(path: impl AsRef<Path>) -> Result<PackingInstance> {
    parse_packing(&std::fs::read_to_string(path)?)
}

/// Serialises a chessboard packing; centres are half-integers, written as
/// decimals.
pub fn packing_to_json(name: &str, p: &PackingInstance) -> String {
    let fmt = |x: Interval| {
        let m = x.mid();
        format!("{m}")
    };
    let spec = PackingSpec {
        name: Some(name.into()),
        container: p.container.side.to_expr_string(),
        regime: p.regime,
        squares: p
            .squares
            .iter()
            .map(|s| SquareSpec { center: (fmt(s.center.x), fmt(s.center.y)), angle: fmt(s.angle), side: fmt(s.side) })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&spec).expect("serialisable");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chessboards_validate() {
        for (n, m) in [(22, 5), (33, 6), (25, 5)] {
            assert!(validate_packing(&trivial_packing(n, m).unwrap()).verdict.is_true(), "{n} {m}");
        }
        assert!(trivial_packing(26, 5).is_err());
    }

    #[test]
    fn duplicate_and_protruding_squares_fail() {
        let mut p = trivial_packing(3, 2).unwrap();
        p.squares.push(p.squares[0]);
        let r = validate_packing(&p);
        assert_eq!(r.verdict, Verdict::False);
        assert_eq!(r.issues[0].indices, vec![0, 3]);
        let mut p = trivial_packing(1, 2).unwrap();
        p.squares[0] = Square::axis_aligned(1.6, 0.5, 1.0);
        assert_eq!(validate_packing(&p).verdict, Verdict::False);
    }

    #[test]
    fn round_trip_and_quarter_turn() {
        let p = trivial_packing(22, 5).unwrap();
        let q = parse_packing(&packing_to_json("t", &p)).unwrap();
        assert_eq!(q.squares.len(), 22);
        assert!(validate_packing(&q).verdict.is_true());
        assert!(validate_packing(&p.quarter_turn()).verdict.is_true());
    }

    #[test]
    fn box_regime_rejects_unit_sides() {
        let mut p = trivial_packing(1, 2).unwrap();
        p.regime = Regime::Box;
        assert_eq!(validate_packing(&p).verdict, Verdict::False);
    }
}
