//! Grid search for a box that avoids every point of one colour. Finding
//! nothing is not a proof: the grid has gaps.

use rayon::prelude::*;
use serde::Serialize;

use super::format::{Color, Configuration};
use crate::geometry::{box_contains_point, square_in_container, ExactPoint, Point, Square};
use crate::numerics::{Interval, Verdict};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Grid {
    pub step: f64,
    /// Degrees.
    pub angle_step: f64,
    pub side: f64,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { step: 0.02, angle_step: 1.0, side: 1.001 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub center: (f64, f64),
    pub angle_degrees: f64,
    pub side: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FalsificationResult {
    pub found: bool,
    pub witness: Option<Witness>,
    pub grid: Grid,
    pub boxes_scanned: u64,
    pub note: String,
}

struct Candidate {
    cx: f64,
    cy: f64,
    angle_deg: f64,
}

/// Interval certification of a candidate found by the f64 scan.
fn certify(c: &Candidate, side: f64, pts: &[Point], config: &Configuration) -> bool {
    let angle = Interval::point(c.angle_deg) * Interval::pi() / Interval::from_i64(180);
    let Ok(sq) = Square::new(Point::from_f64(c.cx, c.cy), angle, Interval::point(side)) else {
        return false;
    };
    square_in_container(&sq, &config.container).is_true()
        && pts.iter().all(|p| box_contains_point(&sq, p) == Verdict::False)
}

pub fn falsify(config: &Configuration, color: Color, grid: Grid) -> FalsificationResult {
    assert!(grid.step > 0.0 && grid.angle_step > 0.0, "grid steps must be positive");
    let exact: Vec<&ExactPoint> = config.of_color(color).map(|p| &p.pos).collect();
    let pts_f: Vec<(f64, f64)> = exact.iter().map(|p| p.to_f64()).collect();
    let pts_i: Vec<Point> = exact.iter().map(|p| p.to_interval()).collect();
    let l = config.container.side.to_f64();
    let h = grid.side / 2.0;
    let n_angles = (90.0 / grid.angle_step).ceil() as usize;
    let margin = 1e-9;

    let scan = |k: usize| -> (Option<Candidate>, u64) {
        let deg = k as f64 * grid.angle_step;
        if deg >= 90.0 {
            return (None, 0);
        }
        let (s, c) = deg.to_radians().sin_cos();
        // Half extent of the rotated square along either axis.
        let e = h * (c + s) + margin;
        let n = ((l - 2.0 * e) / grid.step).floor();
        if n < 0.0 {
            return (None, 0);
        }
        let n = n as usize;
        let mut scanned = 0;
        for i in 0..=n {
            let cx = e + i as f64 * grid.step;
            for j in 0..=n {
                let cy = e + j as f64 * grid.step;
                scanned += 1;
                let empty = pts_f.iter().all(|&(px, py)| {
                    let (dx, dy) = (px - cx, py - cy);
                    (dx * c + dy * s).abs() > h + margin || (-dx * s + dy * c).abs() > h + margin
                });
                if empty {
                    let cand = Candidate { cx, cy, angle_deg: deg };
                    if certify(&cand, grid.side, &pts_i, config) {
                        return (Some(cand), scanned);
                    }
                }
            }
        }
        (None, scanned)
    };

    let results: Vec<(Option<Candidate>, u64)> = (0..n_angles).into_par_iter().map(scan).collect();
    let boxes_scanned = results.iter().map(|r| r.1).sum();
    let first = results.into_iter().find_map(|r| r.0);
    let found = first.is_some();
    FalsificationResult {
        found,
        witness: first.map(|c| Witness { center: (c.cx, c.cy), angle_degrees: c.angle_deg, side: grid.side }),
        grid,
        boxes_scanned,
        note: if found {
            "certified empty box inside the container".into()
        } else {
            "no empty box on this grid; not a proof of unavoidability".into()
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ContainerSquare;
    use crate::numerics::Exact;

    #[test]
    fn empty_configuration_has_a_witness() {
        let config = Configuration { container: ContainerSquare::new(Exact::from_int(6)).unwrap(), points: vec![] };
        let r = falsify(&config, Color::Red, Grid::default());
        assert!(r.found);
        let w = r.witness.unwrap();
        assert_eq!(w.angle_degrees, 0.0);
    }
}
