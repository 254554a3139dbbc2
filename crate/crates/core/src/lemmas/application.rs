//! Region lemmas and the check that a concrete region satisfies one.
//!
//! Each region lemma is stated in a canonical frame. An application carries
//! a rigid motion `p ↦ M p + o` taking the region into that frame; the
//! checker maps everything across; the region must lie inside the
//! canonical shape and the outcomes must match it exactly.
//!
//! Canonical statements, with outcomes a box centred in the region must
//! reach:
//!
//! * `Triangle`: any triangle with sides at most 1; outcomes are the
//!   vertices.
//! * `RectEdge`: `[0,a]×[0,b]` with `a, b ≤ 1`, `a + 2b ≤ 2√2`; outcomes
//!   are the line `y = 0` and two corner points (see [`AnchorReading`]).
//! * `QuadEdge`: `(0,0),(a,0),(a,b),(0,1)` with `2√2-2 < a < 1`,
//!   `0 < b < 1`, `|(a,b)-(0,1)| ≤ 1` and `b < f(a)`; outcomes are `y = 0`,
//!   `(0,1)` and `(a,b)`.
//! * `QuadEdgeSmallA`: the same quadrilateral with `0 < a < 2√2-2`,
//!   `0 < b ≤ 1` and `|(a,b)-(0,1)| ≤ 1`.
//!
//! Outcome points may be config points of the certificate's colour
//! (anchors) or points on the container boundary (degenerate escapes,
//! unreachable by a packed box). The line `y = 0` must be carried by a
//! container side; its escape segment is `[0,a]×{0}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::fcurve;
use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, ExactPoint, ExactSegment};
use crate::numerics::{Exact, Interval, Relation, Verdict};
use crate::report::{verdict_of, CheckRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LemmaKind {
    Triangle,
    RectEdge,
    QuadEdge,
    QuadEdgeSmallA,
    CloseLine,
    ParallelLines,
    PointBehindLine,
}

impl LemmaKind {
    pub fn is_region_lemma(self) -> bool {
        matches!(
            self,
            LemmaKind::Triangle | LemmaKind::RectEdge | LemmaKind::QuadEdge | LemmaKind::QuadEdgeSmallA
        )
    }
}

impl fmt::Display for LemmaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Which corner pair a `RectEdge` application names as its point outcomes.
///
/// `Corners` takes the two corners opposite the escape edge, `(0,b)` and
/// `(a,b)`. `Literal` takes `(0,a)` and `(a,b)` as the lemma is sometimes
/// transcribed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnchorReading {
    #[default]
    Corners,
    Literal,
}

/// Rigid motion `p ↦ M p + o` into the canonical frame.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    pub matrix: [[Exact; 2]; 2],
    pub offset: [Exact; 2],
}

impl Frame {
    pub fn identity() -> Frame {
        Frame::new([[1, 0], [0, 1]], [Exact::zero(), Exact::zero()])
    }

    /// Integer matrix (rotations by quarter turns and reflections).
    pub fn new(m: [[i64; 2]; 2], offset: [Exact; 2]) -> Frame {
        Frame {
            matrix: [
                [Exact::from_int(m[0][0]), Exact::from_int(m[0][1])],
                [Exact::from_int(m[1][0]), Exact::from_int(m[1][1])],
            ],
            offset,
        }
    }

    pub fn apply(&self, p: &ExactPoint) -> ExactPoint {
        let m = &self.matrix;
        ExactPoint::new(
            &(&m[0][0] * &p.x + &m[0][1] * &p.y) + &self.offset[0],
            &(&m[1][0] * &p.x + &m[1][1] * &p.y) + &self.offset[1],
        )
    }

    /// `M Mᵀ = I`, reflections allowed.
    pub fn is_rigid(&self) -> bool {
        let m = &self.matrix;
        let r0 = &m[0][0] * &m[0][0] + &m[0][1] * &m[0][1];
        let r1 = &m[1][0] * &m[1][0] + &m[1][1] * &m[1][1];
        let dot = &m[0][0] * &m[1][0] + &m[0][1] * &m[1][1];
        r0 == Exact::one() && r1 == Exact::one() && dot.is_zero()
    }

    pub fn linear_part_eq(&self, other: &Frame) -> bool {
        self.matrix == other.matrix
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Params {
    pub a: Option<Exact>,
    pub b: Option<Exact>,
}

#[derive(Clone, Debug)]
pub struct LemmaApplication {
    pub kind: LemmaKind,
    pub region: ConvexPolygon,
    /// Points a box must contain, config points of one colour.
    pub anchors: Vec<ExactPoint>,
    /// Container-boundary pieces: one edge `[0,a]×{0}` and any number of
    /// degenerate (single point) escapes.
    pub escapes: Vec<ExactSegment>,
    pub params: Params,
    pub frame: Frame,
    pub reading: AnchorReading,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub kind: LemmaKind,
    pub verdict: Verdict,
    pub checks: Vec<CheckRecord>,
    /// Strictness or reading notes recorded for the audit trail.
    pub notes: Vec<String>,
}

fn ex(n: i64) -> Exact {
    Exact::from_int(n)
}

pub fn two_sqrt2() -> Exact {
    ex(2) * Exact::sqrt_int(2)
}

pub fn quad_threshold() -> Exact {
    two_sqrt2() - ex(2)
}

fn same_point_set(a: &[ExactPoint], b: &[ExactPoint]) -> bool {
    let mut a: Vec<&ExactPoint> = a.iter().collect();
    let mut b: Vec<&ExactPoint> = b.iter().collect();
    a.sort_by(|p, q| p.lex_cmp(q));
    b.sort_by(|p, q| p.lex_cmp(q));
    a.dedup();
    b.dedup();
    a == b
}

fn same_segment(s: &ExactSegment, a: &ExactPoint, b: &ExactPoint) -> bool {
    (&s.a == a && &s.b == b) || (&s.a == b && &s.b == a)
}

impl LemmaApplication {
    /// Canonical outcome points for this kind and parameters.
    pub fn canonical_outcomes(&self) -> Result<Vec<ExactPoint>> {
        let (a, b) = self.ab()?;
        Ok(match self.kind {
            LemmaKind::RectEdge => match self.reading {
                AnchorReading::Corners => vec![ExactPoint::new(Exact::zero(), b.clone()), ExactPoint::new(a, b)],
                AnchorReading::Literal => vec![ExactPoint::new(Exact::zero(), a.clone()), ExactPoint::new(a, b)],
            },
            LemmaKind::QuadEdge | LemmaKind::QuadEdgeSmallA => {
                vec![ExactPoint::new(Exact::zero(), Exact::one()), ExactPoint::new(a, b)]
            }
            _ => return Err(Error::Invalid(format!("{} has no canonical outcomes", self.kind))),
        })
    }

    pub fn canonical_region(&self) -> Result<Vec<ExactPoint>> {
        let (a, b) = self.ab()?;
        let z = Exact::zero();
        Ok(match self.kind {
            LemmaKind::RectEdge => vec![
                ExactPoint::new(z.clone(), z.clone()),
                ExactPoint::new(a.clone(), z.clone()),
                ExactPoint::new(a, b.clone()),
                ExactPoint::new(z, b),
            ],
            LemmaKind::QuadEdge | LemmaKind::QuadEdgeSmallA => vec![
                ExactPoint::new(z.clone(), z.clone()),
                ExactPoint::new(a.clone(), z.clone()),
                ExactPoint::new(a, b),
                ExactPoint::new(z, Exact::one()),
            ],
            _ => return Err(Error::Invalid(format!("{} has no canonical region", self.kind))),
        })
    }

    fn ab(&self) -> Result<(Exact, Exact)> {
        match (&self.params.a, &self.params.b) {
            (Some(a), Some(b)) => Ok((a.clone(), b.clone())),
            _ => Err(Error::Invalid(format!("{} application needs params a and b", self.kind))),
        }
    }

    /// Outcome points as given: anchors plus degenerate escapes.
    pub fn outcome_points(&self) -> Vec<ExactPoint> {
        let mut pts = self.anchors.clone();
        pts.extend(self.escapes.iter().filter(|e| e.is_degenerate()).map(|e| e.a.clone()));
        pts
    }

    pub fn escape_edges(&self) -> impl Iterator<Item = &ExactSegment> {
        self.escapes.iter().filter(|e| !e.is_degenerate())
    }
}

/// Checks that the application's hypotheses hold. Line lemmas are checked
/// by [`super::line::guaranteed_line_intersection`] instead.
pub fn check_lemma(app: &LemmaApplication) -> Result<LemmaReport> {
    if !app.kind.is_region_lemma() {
        return Err(Error::Invalid(format!(
            "{} is a line lemma; use guaranteed_line_intersection",
            app.kind
        )));
    }
    if !app.frame.is_rigid() {
        return Err(Error::Invalid("malformed frame: not a rigid motion".into()));
    }
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let one = Exact::one();
    let zero = Exact::zero();

    if app.kind == LemmaKind::Triangle {
        let v = app.outcome_points();
        checks.push(CheckRecord::fact("triangle has three outcome vertices", v.len() == 3));
        if v.len() == 3 {
            for i in 0..3 {
                let d2 = v[i].dist2(&v[(i + 1) % 3]);
                checks.push(CheckRecord::exact(format!("triangle side {i} squared"), &d2, Relation::Le, &one));
            }
            let inside = ConvexPolygon::new(v.clone())
                .map(|t| app.region.vertices().iter().all(|p| t.contains(p)))
                .unwrap_or(false);
            checks.push(CheckRecord::fact("region lies in the outcome triangle", inside));
        }
        checks.push(CheckRecord::fact("triangle has no escape edge", app.escape_edges().count() == 0));
        return Ok(LemmaReport { kind: app.kind, verdict: verdict_of(&checks), checks, notes });
    }

    let (a, b) = app.ab()?;
    let canon_region: Vec<ExactPoint> = app.region.vertices().iter().map(|p| app.frame.apply(p)).collect();
    let inside = match ConvexPolygon::new(app.canonical_region()?) {
        Ok(shape) => canon_region.iter().all(|p| shape.contains(p)),
        Err(_) => false,
    };
    checks.push(CheckRecord::fact("region lies in the canonical shape", inside));
    let canon_outcomes: Vec<ExactPoint> = app.outcome_points().iter().map(|p| app.frame.apply(p)).collect();
    checks.push(CheckRecord::fact(
        "outcome points map onto canonical outcomes",
        same_point_set(&canon_outcomes, &app.canonical_outcomes()?),
    ));
    let edges: Vec<&ExactSegment> = app.escape_edges().collect();
    let origin = ExactPoint::new(zero.clone(), zero.clone());
    let a_end = ExactPoint::new(a.clone(), zero.clone());
    checks.push(CheckRecord::fact(
        "single escape edge maps onto [0,a]x{0}",
        edges.len() == 1 && same_segment(&ExactSegment::new(app.frame.apply(&edges[0].a), app.frame.apply(&edges[0].b)), &origin, &a_end),
    ));

    match app.kind {
        LemmaKind::RectEdge => {
            checks.push(CheckRecord::exact("a", &a, Relation::Gt, &zero));
            checks.push(CheckRecord::exact("b", &b, Relation::Gt, &zero));
            checks.push(CheckRecord::exact("a", &a, Relation::Le, &one));
            checks.push(CheckRecord::exact("b", &b, Relation::Le, &one));
            checks.push(CheckRecord::exact("a + 2b", &(&a + &(ex(2) * &b)), Relation::Le, &two_sqrt2()));
            if app.reading == AnchorReading::Literal {
                notes.push("rectangle outcomes use the (0,a),(a,b) reading".into());
            }
        }
        LemmaKind::QuadEdge => {
            checks.push(CheckRecord::exact("a", &a, Relation::Gt, &quad_threshold()));
            checks.push(CheckRecord::exact("a", &a, Relation::Lt, &one));
            checks.push(CheckRecord::exact("b", &b, Relation::Gt, &zero));
            checks.push(CheckRecord::exact("b", &b, Relation::Lt, &one));
            let d2 = &a * &a + (&b - &one).sqr();
            checks.push(CheckRecord::exact("|(a,b)-(0,1)|^2", &d2, Relation::Le, &one));
            let f_check = match fcurve::eval_f(a.enclosure()) {
                Ok(p) => CheckRecord::interval("b < f(a)", b.enclosure(), Relation::Lt, p.f_value),
                Err(e) => {
                    notes.push(format!("f(a) not certified: {e}"));
                    CheckRecord {
                        verdict: Verdict::Indeterminate,
                        ..CheckRecord::interval("b < f(a)", b.enclosure(), Relation::Lt, Interval::zero())
                    }
                }
            };
            checks.push(f_check);
        }
        LemmaKind::QuadEdgeSmallA => {
            checks.push(CheckRecord::exact("a", &a, Relation::Gt, &zero));
            checks.push(CheckRecord::exact("a", &a, Relation::Lt, &quad_threshold()));
            checks.push(CheckRecord::exact("b", &b, Relation::Gt, &zero));
            checks.push(CheckRecord::exact("b", &b, Relation::Le, &one));
            let d2 = &a * &a + (&b - &one).sqr();
            checks.push(CheckRecord::exact("|(a,b)-(0,1)|^2", &d2, Relation::Le, &one));
        }
        _ => unreachable!(),
    }
    Ok(LemmaReport { kind: app.kind, verdict: verdict_of(&checks), checks, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::expr::exact_constant;

    fn c(s: &str) -> Exact {
        exact_constant(s).unwrap()
    }

    fn pt(x: &str, y: &str) -> ExactPoint {
        ExactPoint::new(c(x), c(y))
    }

    fn canonical_app(kind: LemmaKind, a: &str, b: &str) -> LemmaApplication {
        let (a, b) = (c(a), c(b));
        let z = Exact::zero();
        let region = match kind {
            LemmaKind::RectEdge => vec![
                ExactPoint::new(z.clone(), z.clone()),
                ExactPoint::new(a.clone(), z.clone()),
                ExactPoint::new(a.clone(), b.clone()),
                ExactPoint::new(z.clone(), b.clone()),
            ],
            _ => vec![
                ExactPoint::new(z.clone(), z.clone()),
                ExactPoint::new(a.clone(), z.clone()),
                ExactPoint::new(a.clone(), b.clone()),
                ExactPoint::new(z.clone(), Exact::one()),
            ],
        };
        let top_left = if kind == LemmaKind::RectEdge { b.clone() } else { Exact::one() };
        LemmaApplication {
            kind,
            region: ConvexPolygon::new(region).unwrap(),
            anchors: vec![ExactPoint::new(z.clone(), top_left), ExactPoint::new(a.clone(), b.clone())],
            escapes: vec![ExactSegment::new(
                ExactPoint::new(z.clone(), z.clone()),
                ExactPoint::new(a.clone(), z.clone()),
            )],
            params: Params { a: Some(a), b: Some(b) },
            frame: Frame::identity(),
            reading: AnchorReading::Corners,
        }
    }

    #[test]
    fn equilateral_triangle_holds() {
        let v = vec![pt("0", "0"), pt("1", "0"), pt("1/2", "sqrt(3)/2")];
        let app = LemmaApplication {
            kind: LemmaKind::Triangle,
            region: ConvexPolygon::new(v.clone()).unwrap(),
            anchors: v,
            escapes: vec![],
            params: Params::default(),
            frame: Frame::identity(),
            reading: AnchorReading::Corners,
        };
        assert_eq!(check_lemma(&app).unwrap().verdict, Verdict::True);
    }

    #[test]
    fn rectangle_bound_is_tight() {
        assert_eq!(check_lemma(&canonical_app(LemmaKind::RectEdge, "1", "0.92")).unwrap().verdict, Verdict::False);
        // equality a + 2b = 2√2 is allowed
        assert_eq!(
            check_lemma(&canonical_app(LemmaKind::RectEdge, "1", "sqrt(2) - 1/2")).unwrap().verdict,
            Verdict::True
        );
    }

    #[test]
    fn quadrilateral_lemmas() {
        assert_eq!(
            check_lemma(&canonical_app(LemmaKind::QuadEdge, "sqrt(3)/2", "1/2")).unwrap().verdict,
            Verdict::True
        );
        assert_eq!(check_lemma(&canonical_app(LemmaKind::QuadEdgeSmallA, "0.8", "1")).unwrap().verdict, Verdict::True);
        assert_eq!(check_lemma(&canonical_app(LemmaKind::QuadEdgeSmallA, "0.8", "0.4")).unwrap().verdict, Verdict::True);
        // small-a lemma refuses a above the threshold, the other refuses below
        assert_eq!(
            check_lemma(&canonical_app(LemmaKind::QuadEdgeSmallA, "sqrt(3)/2", "1/2")).unwrap().verdict,
            Verdict::False
        );
        assert_eq!(check_lemma(&canonical_app(LemmaKind::QuadEdge, "0.8", "1/2")).unwrap().verdict, Verdict::False);
    }

    #[test]
    fn frames_must_be_rigid_and_consistent() {
        let mut app = canonical_app(LemmaKind::RectEdge, "1", "0.9");
        app.frame = Frame::new([[2, 0], [0, 1]], [Exact::zero(), Exact::zero()]);
        assert!(check_lemma(&app).is_err());

        // a reflected placement along the top edge of [0,5]²
        let mut app = canonical_app(LemmaKind::RectEdge, "1", "0.9");
        let shift = |p: &ExactPoint| ExactPoint::new(&p.x + &c("2"), c("5") - &p.y);
        app.region = ConvexPolygon::new(app.region.vertices().iter().map(shift).collect()).unwrap();
        app.anchors = app.anchors.iter().map(shift).collect();
        app.escapes = app.escapes.iter().map(|e| ExactSegment::new(shift(&e.a), shift(&e.b))).collect();
        app.frame = Frame::new([[1, 0], [0, -1]], [c("-2"), c("5")]);
        assert_eq!(check_lemma(&app).unwrap().verdict, Verdict::True);

        app.frame = Frame::identity();
        assert_eq!(check_lemma(&app).unwrap().verdict, Verdict::False);
    }

    #[test]
    fn literal_reading_changes_outcomes() {
        let mut app = canonical_app(LemmaKind::RectEdge, "1", "0.9");
        app.reading = AnchorReading::Literal;
        assert_eq!(check_lemma(&app).unwrap().verdict, Verdict::False);
        app.anchors[0] = pt("0", "1");
        assert_eq!(check_lemma(&app).unwrap().verdict, Verdict::True);
    }

    #[test]
    fn line_lemmas_are_rejected_here() {
        let mut app = canonical_app(LemmaKind::RectEdge, "1", "0.9");
        app.kind = LemmaKind::CloseLine;
        assert!(check_lemma(&app).is_err());
    }
}
