//! Random-box sampling against a lemma application. A testing aid: a clean
//! run is evidence, not proof.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::application::{LemmaApplication, LemmaKind};
use crate::geometry::{ConvexPolygon, ExactPoint};

#[derive(Clone, Debug, Serialize)]
pub struct SoundnessRun {
    pub samples: u64,
    pub violations: u64,
    /// First violating box as (cx, cy, angle, side).
    pub first_violation: Option<(f64, f64, f64, f64)>,
}

struct CanonicalCase {
    region: ConvexPolygon,
    outcomes: Vec<(f64, f64)>,
    /// Whether meeting the line `y = 0` is an allowed outcome.
    has_edge: bool,
}

fn canonical_case(app: &LemmaApplication) -> Option<CanonicalCase> {
    let map = |p: &ExactPoint| if app.kind == LemmaKind::Triangle { p.clone() } else { app.frame.apply(p) };
    let region = ConvexPolygon::new(app.region.vertices().iter().map(map).collect()).ok()?;
    let outcomes = app.outcome_points().iter().map(|p| map(p).to_f64()).collect();
    Some(CanonicalCase { region, outcomes, has_edge: app.kind != LemmaKind::Triangle })
}

/// Samples `samples` boxes with centres uniform in the region, angle
/// uniform in `[0, π/2)` and side uniform in `(1, 1.01]`; each must contain
/// an outcome point or meet the escape line.
pub fn lemma_soundness(app: &LemmaApplication, samples: u64, seed: u64) -> SoundnessRun {
    let Some(case) = canonical_case(app) else {
        return SoundnessRun { samples: 0, violations: 1, first_violation: None };
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let [x0, y0, x1, y1] = case.region.bbox();
    let mut violations = 0;
    let mut first = None;
    let mut drawn = 0;
    while drawn < samples {
        let cx = rng.gen_range(x0..=x1);
        let cy = rng.gen_range(y0..=y1);
        if !case.region.contains_f64(cx, cy) {
            continue;
        }
        drawn += 1;
        let angle = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
        let side = 1.01 - rng.gen_range(0.0..0.01);
        let (s, c) = angle.sin_cos();
        let h = side / 2.0;
        let hit_point = case.outcomes.iter().any(|&(px, py)| {
            let (dx, dy) = (px - cx, py - cy);
            (dx * c + dy * s).abs() < h && (-dx * s + dy * c).abs() < h
        });
        let hit_edge = case.has_edge && cy - h * (c.abs() + s.abs()) < 0.0;
        if !hit_point && !hit_edge {
            violations += 1;
            first.get_or_insert((cx, cy, angle, side));
        }
    }
    SoundnessRun { samples, violations, first_violation: first }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lemmas::application::{AnchorReading, Frame, Params};
    use crate::geometry::ExactSegment;
    use crate::numerics::expr::exact_constant;
    use crate::numerics::Exact;

    fn rect(b: &str, reading: AnchorReading) -> LemmaApplication {
        let b = exact_constant(b).unwrap();
        let z = Exact::zero();
        let one = Exact::one();
        let top_left = match reading {
            AnchorReading::Corners => b.clone(),
            AnchorReading::Literal => one.clone(),
        };
        LemmaApplication {
            kind: LemmaKind::RectEdge,
            region: ConvexPolygon::new(vec![
                ExactPoint::new(z.clone(), z.clone()),
                ExactPoint::new(one.clone(), z.clone()),
                ExactPoint::new(one.clone(), b.clone()),
                ExactPoint::new(z.clone(), b.clone()),
            ])
            .unwrap(),
            anchors: vec![ExactPoint::new(z.clone(), top_left), ExactPoint::new(one.clone(), b.clone())],
            escapes: vec![ExactSegment::new(ExactPoint::new(z.clone(), z.clone()), ExactPoint::new(one.clone(), z))],
            params: Params { a: Some(one), b: Some(b) },
            frame: Frame::identity(),
            reading,
        }
    }

    #[test]
    fn tight_rectangle_has_no_violations() {
        let run = lemma_soundness(&rect("sqrt(2) - 1/2", AnchorReading::Corners), 100_000, 7);
        assert_eq!(run.violations, 0);
    }

    #[test]
    fn oversized_rectangle_is_caught() {
        let run = lemma_soundness(&rect("1", AnchorReading::Corners), 200_000, 7);
        assert!(run.violations > 0);
    }
}
