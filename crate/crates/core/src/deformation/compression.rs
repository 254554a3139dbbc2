//! Vertical compression of a row configuration towards one row, and the
//! horizontal moves available once a row is squeezed.

use serde::Serialize;

use super::schedule::{Constraint, ConstraintKind, MovementSchedule};
use crate::certificates::figures::edge_gap;
use crate::certificates::layout::{colour_rows, Wall};
use crate::certificates::Certificate;
use crate::error::{Error, Result};
use crate::geometry::ExactPoint;
use crate::lemmas::application::quad_threshold;
use crate::numerics::{Exact, Relation};
use crate::report::CheckRecord;

/// `sqrt(3)/2`, the largest vertical row distance kept by compression.
pub fn row_spacing() -> Exact {
    Exact::sqrt_int(3) / Exact::from_int(2)
}

/// Row heights of `F_i` for `n` rows in `[0, side]` (`i` from 1): rows
/// below `i` packed up from the bottom edge, rows above packed down from
/// the top edge, row `i` centred between its neighbours.
pub fn f_targets(side: &Exact, n: usize, i: usize) -> Result<Vec<Exact>> {
    if n < 2 {
        return Err(Error::Invalid("compression needs at least two rows".into()));
    }
    if i == 0 || i > n {
        return Err(Error::Invalid(format!("row {i} out of range 1..={n}")));
    }
    let e = edge_gap();
    let g = row_spacing();
    let low = |k: usize| &e + &(Exact::from_int(k as i64 - 1) * &g);
    let high = |k: usize| &(side - &e) - &(Exact::from_int((n - k) as i64) * &g);
    let mut y: Vec<Exact> = (1..=n).map(|k| if k < i { low(k) } else { high(k) }).collect();
    y[i - 1] = if i == 1 {
        e.clone()
    } else if i == n {
        side - &e
    } else {
        (&low(i - 1) + &high(i + 1)) / Exact::from_int(2)
    };
    Ok(y)
}

/// A compression schedule with its certified row gaps.
#[derive(Clone, Debug)]
pub struct Compression {
    pub schedule: MovementSchedule,
    pub row: usize,
    pub heights: Vec<Exact>,
    pub checks: Vec<CheckRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompressionSummary {
    pub row: usize,
    pub heights: Vec<f64>,
    pub gaps_to_neighbours: Vec<f64>,
}

impl Compression {
    pub fn summary(&self) -> CompressionSummary {
        let i = self.row - 1;
        let mut gaps = Vec::new();
        if i > 0 {
            gaps.push((&self.heights[i] - &self.heights[i - 1]).to_f64());
        }
        if i + 1 < self.heights.len() {
            gaps.push((&self.heights[i + 1] - &self.heights[i]).to_f64());
        }
        CompressionSummary {
            row: self.row,
            heights: self.heights.iter().map(Exact::to_f64).collect(),
            gaps_to_neighbours: gaps,
        }
    }
}

/// The bound `2(sqrt(2) - 1/2) + 2(0.8) + 3 sqrt(3)/2 > 6` that caps the
/// compressed row distances at 0.8 in a six-row square of side 6.
pub fn compression_inequality() -> CheckRecord {
    let lhs = &(&(Exact::from_int(2) * &edge_gap()) + &Exact::from_ratio(8, 5)) + &(Exact::from_int(3) * &row_spacing());
    CheckRecord::exact("2(sqrt(2)-1/2) + 2(0.8) + 3 sqrt(3)/2 > 6", &lhs, Relation::Gt, &Exact::from_int(6))
}

/// Moves the rows of `base` vertically in one linear piece to `F_i`.
/// Declares the row-distance and edge-distance constraints for the whole
/// schedule.
pub fn row_compression_targets(base: &Certificate, i: usize) -> Result<Compression> {
    let config = &base.config;
    let rows = colour_rows(config, base.color)?;
    let n = rows.len();
    let side = &config.container.side;
    let heights = f_targets(side, n, i)?;
    for r in &rows {
        let y = &config.points[r[0]].pos.y;
        if r.iter().any(|&p| &config.points[p].pos.y != y) {
            return Err(Error::Invalid("rows must be horizontal".into()));
        }
    }
    let mut ms = MovementSchedule::stationary(format!("{} F_{i}", base.color), base.clone());
    let mut next = ms.last_positions().to_vec();
    for (k, r) in rows.iter().enumerate() {
        for &p in r {
            next[p] = ExactPoint::new(next[p].x.clone(), heights[k].clone());
        }
    }
    ms.push(next);

    let id = |p: usize| config.points[p].id.clone();
    for k in 0..n - 1 {
        ms.constraints.push(Constraint {
            label: format!("v(row {}, row {}) <= sqrt(3)/2", k + 1, k + 2),
            kind: ConstraintKind::VerticalGap { a: id(rows[k][0]), b: id(rows[k + 1][0]) },
            relation: Relation::Le,
            bound: row_spacing(),
            from_knot: 0,
        });
    }
    ms.constraints.push(Constraint {
        label: "row 1 to bottom edge <= sqrt(2)-1/2".into(),
        kind: ConstraintKind::WallDistance { p: id(rows[0][0]), wall: Wall::Bottom },
        relation: Relation::Le,
        bound: edge_gap(),
        from_knot: 0,
    });
    ms.constraints.push(Constraint {
        label: format!("row {n} to top edge <= sqrt(2)-1/2"),
        kind: ConstraintKind::WallDistance { p: id(rows[n - 1][0]), wall: Wall::Top },
        relation: Relation::Le,
        bound: edge_gap(),
        from_knot: 0,
    });

    let mut checks = Vec::new();
    let eight = Exact::from_ratio(4, 5);
    if i > 1 {
        let v = &heights[i - 1] - &heights[i - 2];
        checks.push(CheckRecord::exact(format!("F_{i}: v(row {i}, row {}) <= 0.8", i - 1), &v, Relation::Le, &eight));
    }
    if i < n {
        let v = &heights[i] - &heights[i - 1];
        checks.push(CheckRecord::exact(format!("F_{i}: v(row {i}, row {}) <= 0.8", i + 1), &v, Relation::Le, &eight));
    }
    Ok(Compression { schedule: ms, row: i, heights, checks })
}

/// Row `i` starts at `x = 1/2`: it is shifted `shift` to the left and
/// back, then its leftmost point slides to `x = slide_to` and back. Rows
/// starting elsewhere are left alone. Returns whether moves were added.
pub fn add_row_moves(ms: &mut MovementSchedule, i: usize, shift: Option<&Exact>, slide_to: &Exact) -> Result<bool> {
    let config = ms.base.config.clone();
    let rows = colour_rows(&config, ms.base.color)?;
    if i == 0 || i > rows.len() {
        return Err(Error::Invalid(format!("row {i} out of range")));
    }
    let row = rows[i - 1].clone();
    let pos = ms.last_positions().to_vec();
    let half = Exact::from_ratio(1, 2);
    if pos[row[0]].x != half {
        return Ok(false);
    }
    let id = |p: usize| config.points[p].id.clone();
    let zero = Exact::zero();
    let start = ms.knots.len() - 1;
    if let Some(d) = shift {
        ms.push_translation(&row, &-d, &zero);
        ms.push_translation(&row, d, &zero);
        // Critical points: adjacent-row neighbours at horizontal distance 1/2.
        for adj in [i.checked_sub(2), (i < rows.len()).then_some(i)].into_iter().flatten() {
            for &p in &row {
                for &q in &rows[adj] {
                    if (&pos[p].x - &pos[q].x).abs() == half {
                        ms.constraints.push(Constraint {
                            label: format!("|{} - {}| <= 1", id(p), id(q)),
                            kind: ConstraintKind::PairDistance { a: id(p), b: id(q) },
                            relation: Relation::Le,
                            bound: Exact::one(),
                            from_knot: start,
                        });
                    }
                }
            }
        }
    }
    let slide = ms.knots.len() - 1;
    let step = slide_to - &half;
    ms.push_translation(&row[..1], &step, &zero);
    ms.push_translation(&row[..1], &-&step, &zero);
    for adj in [i.checked_sub(2), (i < rows.len()).then_some(i)].into_iter().flatten() {
        ms.constraints.push(Constraint {
            label: format!("v(row {i}, row {}) < 2 sqrt(2) - 2", adj + 1),
            kind: ConstraintKind::VerticalGap { a: id(row[0]), b: id(rows[adj][0]) },
            relation: Relation::Lt,
            bound: quad_threshold(),
            from_knot: slide,
        });
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::figures::{fig1, fig2_blue};
    use crate::deformation::schedule::verify_schedule;

    #[test]
    fn targets_in_closed_form() {
        let six = Exact::from_int(6);
        let e = edge_gap();
        let y = f_targets(&six, 6, 1).unwrap();
        assert_eq!(y[0], e);
        assert_eq!(y[5], &six - &e);
        let gap = (&y[1] - &y[0]).to_f64();
        assert!((gap - 0.707471).abs() < 1e-6, "{gap}");
        for i in 2..=5 {
            let y = f_targets(&six, 6, i).unwrap();
            let lo = (&y[i - 1] - &y[i - 2]).to_f64();
            let hi = (&y[i] - &y[i - 1]).to_f64();
            assert!((lo - hi).abs() < 1e-12 && (lo - 0.786748).abs() < 1e-6, "{lo} {hi}");
        }
        assert!(f_targets(&six, 1, 1).is_err());
        assert!(compression_inequality().verdict.is_true());
    }

    #[test]
    fn compress_figure1_to_f2_with_moves() {
        let base = fig1().unwrap().certificates.remove(0);
        let mut c = row_compression_targets(&base, 2).unwrap();
        assert!(c.checks.iter().all(|r| r.verdict.is_true()));
        assert!(add_row_moves(&mut c.schedule, 2, Some(&Exact::from_ratio(1, 10)), &Exact::one()).unwrap());
        let rep = verify_schedule(&c.schedule).unwrap();
        assert!(
            rep.verdict.is_true(),
            "{:?} {:?}",
            rep.pieces.iter().filter_map(|p| p.failure.clone()).collect::<Vec<_>>(),
            rep.constraints.iter().filter(|c| !c.verdict.is_true()).map(|c| c.label.clone()).collect::<Vec<_>>()
        );
        assert_eq!(rep.obligations.len(), 33);
        let left = rep.obligations.iter().find(|o| o.class.base == "r2.1").unwrap();
        assert_eq!(left.path.len(), 6);
    }

    #[test]
    fn five_point_rows_do_not_move() {
        let base = fig1().unwrap().certificates.remove(0);
        let mut c = row_compression_targets(&base, 1).unwrap();
        assert!(!add_row_moves(&mut c.schedule, 1, Some(&Exact::from_ratio(1, 10)), &Exact::one()).unwrap());
        assert!(verify_schedule(&c.schedule).unwrap().verdict.is_true());
    }

    #[test]
    fn blue_row_one_slides() {
        let base = fig2_blue().unwrap().certificates.remove(0);
        let mut c = row_compression_targets(&base, 1).unwrap();
        assert!(add_row_moves(&mut c.schedule, 1, Some(&Exact::from_ratio(1, 10)), &Exact::one()).unwrap());
        assert!(verify_schedule(&c.schedule).unwrap().verdict.is_true());
    }
}
