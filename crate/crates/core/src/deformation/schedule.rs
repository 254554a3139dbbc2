//! Movement schedules: piecewise-linear motion of a point set, checked to
//! stay unavoidable at every parameter value.
//!
//! On each linear piece the decomposition keeps its combinatorics and every
//! vertex moves linearly, so each lemma hypothesis is a polynomial of
//! degree at most two in the piece parameter and is bounded exactly. The
//! tiling is verified exactly at the start of each piece; with edges
//! twinned, boundary vertices held on their walls and every piece strictly
//! convex throughout, it persists along the piece.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::obligations::{CoverageObligation, ObligationClass};
use super::poly::Quadratic;
use crate::certificates::layout::{colour_rows, instantiate, turn_values, Layout, Piece, Wall};
use crate::certificates::{Certificate, Color};
use crate::error::{Error, Result};
use crate::geometry::{polygons_cover_square, ExactPoint};
use crate::lemmas::application::{quad_threshold, two_sqrt2};
use crate::lemmas::{check_lemma, fcurve, LemmaApplication, LemmaKind};
use crate::numerics::{Exact, Relation, Verdict};
use crate::report::{first_failure, CheckRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Precondition {
    /// In a box with no other point of its colour.
    Alone,
    SharesBox,
    Uncovered,
    /// Possibly in one of the two previous states.
    MaybeExceptional,
}

#[derive(Clone, Debug, Serialize)]
pub enum ConstraintKind {
    /// Vertical distance between two points (row representatives).
    VerticalGap { a: String, b: String },
    PairDistance { a: String, b: String },
    WallDistance { p: String, wall: Wall },
}

/// A declared parameter-dependent constraint `quantity rel bound`.
#[derive(Clone, Debug, Serialize)]
pub struct Constraint {
    pub label: String,
    pub kind: ConstraintKind,
    pub relation: Relation,
    #[serde(skip)]
    pub bound: Exact,
    /// The constraint applies to the pieces starting at this knot or later.
    pub from_knot: usize,
}

#[derive(Clone, Debug)]
pub struct MovementSchedule {
    pub name: String,
    pub base: Certificate,
    /// Increasing parameter values; piece `k` runs from knot `k` to `k+1`.
    pub knots: Vec<Exact>,
    /// Positions of every configuration point at each knot.
    pub positions: Vec<Vec<ExactPoint>>,
    pub default_precondition: Precondition,
    pub preconditions: BTreeMap<String, Precondition>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PieceReport {
    pub index: usize,
    pub verdict: Verdict,
    pub regions: usize,
    pub checks: usize,
    /// Lemma kinds in use, with counts.
    pub kinds: BTreeMap<String, usize>,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScheduleReport {
    pub name: String,
    pub color: Color,
    pub verdict: Verdict,
    pub pieces: Vec<PieceReport>,
    pub constraints: Vec<CheckRecord>,
    pub obligations: Vec<CoverageObligation>,
}

impl MovementSchedule {
    /// A schedule that starts and stays at the base configuration.
    pub fn stationary(name: impl Into<String>, base: Certificate) -> MovementSchedule {
        let pos: Vec<ExactPoint> = base.config.points.iter().map(|p| p.pos.clone()).collect();
        MovementSchedule {
            name: name.into(),
            base,
            knots: vec![Exact::zero()],
            positions: vec![pos],
            default_precondition: Precondition::Alone,
            preconditions: BTreeMap::new(),
            constraints: Vec::new(),
        }
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.base
            .config
            .points
            .iter()
            .position(|p| p.id == id)
            .ok_or_else(|| Error::Invalid(format!("unknown point {id}")))
    }

    pub fn last_positions(&self) -> &[ExactPoint] {
        self.positions.last().expect("schedule has a knot")
    }

    /// Appends a linear piece ending at `positions`, one unit of parameter
    /// long.
    pub fn push(&mut self, positions: Vec<ExactPoint>) {
        let t = self.knots.last().expect("schedule has a knot") + &Exact::one();
        self.knots.push(t);
        self.positions.push(positions);
    }

    /// Appends a piece moving the listed points by `(dx, dy)`.
    pub fn push_translation(&mut self, ids: &[usize], dx: &Exact, dy: &Exact) {
        let mut next = self.last_positions().to_vec();
        for &i in ids {
            next[i] = ExactPoint::new(&next[i].x + dx, &next[i].y + dy);
        }
        self.push(next);
    }

    pub fn precondition(&self, id: &str) -> Precondition {
        self.preconditions.get(id).copied().unwrap_or(self.default_precondition)
    }

    /// Affine change of parameter `t ↦ scale t + shift`, `scale > 0`.
    pub fn reparametrized(&self, scale: &Exact, shift: &Exact) -> MovementSchedule {
        MovementSchedule { knots: self.knots.iter().map(|t| &(scale * t) + shift).collect(), ..self.clone() }
    }
}

fn lerp_all(a: &[ExactPoint], b: &[ExactPoint], t: &Exact) -> Vec<ExactPoint> {
    a.iter().zip(b).map(|(p, q)| p.lerp(q, t)).collect()
}

/// Hypotheses of one application as `(label, value, rel, bound)`; values
/// are at most quadratic in the positions.
fn hypothesis_values(app: &LemmaApplication) -> Vec<(&'static str, Exact, Relation, Exact)> {
    let zero = Exact::zero;
    let one = Exact::one;
    let mut out = Vec::new();
    if app.kind == LemmaKind::Triangle {
        let v = app.outcome_points();
        if v.len() == 3 {
            for (k, label) in ["side 0 squared", "side 1 squared", "side 2 squared"].into_iter().enumerate() {
                out.push((label, v[k].dist2(&v[(k + 1) % 3]), Relation::Le, one()));
            }
        }
        return out;
    }
    let (Some(a), Some(b)) = (app.params.a.clone(), app.params.b.clone()) else {
        return out;
    };
    let gap = &(&a * &a) + &(&b - &one()).sqr();
    match app.kind {
        LemmaKind::RectEdge => {
            out.push(("a > 0", a.clone(), Relation::Gt, zero()));
            out.push(("b > 0", b.clone(), Relation::Gt, zero()));
            out.push(("a <= 1", a.clone(), Relation::Le, one()));
            out.push(("b <= 1", b.clone(), Relation::Le, one()));
            out.push(("a + 2b <= 2 sqrt(2)", &a + &(Exact::from_int(2) * &b), Relation::Le, two_sqrt2()));
        }
        LemmaKind::QuadEdge => {
            out.push(("a > 2 sqrt(2) - 2", a.clone(), Relation::Gt, quad_threshold()));
            out.push(("a < 1", a, Relation::Lt, one()));
            out.push(("b > 0", b.clone(), Relation::Gt, zero()));
            out.push(("b < 1", b, Relation::Lt, one()));
            out.push(("|(a,b)-(0,1)|^2 <= 1", gap, Relation::Le, one()));
        }
        LemmaKind::QuadEdgeSmallA => {
            out.push(("a > 0", a.clone(), Relation::Gt, zero()));
            out.push(("a < 2 sqrt(2) - 2", a, Relation::Lt, quad_threshold()));
            out.push(("b > 0", b.clone(), Relation::Gt, zero()));
            out.push(("b <= 1", b, Relation::Le, one()));
            out.push(("|(a,b)-(0,1)|^2 <= 1", gap, Relation::Le, one()));
        }
        _ => {}
    }
    out
}

fn holds(v: &Exact, rel: Relation, rhs: &Exact) -> bool {
    match rel {
        Relation::Lt => v < rhs,
        Relation::Le => v <= rhs,
        Relation::Gt => v > rhs,
        Relation::Ge => v >= rhs,
    }
}

/// Region vertices map exactly onto the canonical shape's vertices.
fn region_is_canonical(app: &LemmaApplication) -> bool {
    if app.kind == LemmaKind::Triangle {
        let v = app.outcome_points();
        return v.len() == 3 && app.region.vertices().iter().all(|p| v.contains(p));
    }
    let Ok(canon) = app.canonical_region() else { return false };
    let mapped: Vec<ExactPoint> = app.region.vertices().iter().map(|p| app.frame.apply(p)).collect();
    mapped.len() == canon.len() && mapped.iter().all(|p| canon.contains(p))
}

/// All checks for one option of one slot along a piece. Returns the
/// number of checks and the first failure.
fn option_checks(
    pieces: &[Piece],
    p0: &[ExactPoint],
    ph: &[ExactPoint],
    p1: &[ExactPoint],
    side: &Exact,
) -> (usize, Option<String>, Vec<LemmaApplication>) {
    let mut count = 0;
    let mut start_apps = Vec::new();
    for piece in pieces {
        let apps: Result<Vec<LemmaApplication>> =
            [p0, ph, p1].iter().map(|p| instantiate(piece, p, side)).collect();
        let apps = match apps {
            Ok(a) => a,
            Err(e) => return (count, Some(format!("{:?} piece not constructible: {e}", piece.kind)), start_apps),
        };
        for (end, app) in [("start", &apps[0]), ("end", &apps[2])] {
            count += 1;
            match check_lemma(app) {
                Ok(r) if r.verdict.is_true() => {}
                Ok(r) => {
                    let what = first_failure(&r.checks).map(|c| c.label.clone()).unwrap_or_default();
                    return (count, Some(format!("{:?} at piece {end}: {what}", piece.kind)), start_apps);
                }
                Err(e) => return (count, Some(format!("{:?} at piece {end}: {e}", piece.kind)), start_apps),
            }
            count += 1;
            if !region_is_canonical(app) {
                return (count, Some(format!("{:?} at piece {end}: region is not the canonical shape", piece.kind)), start_apps);
            }
        }
        let hv: Vec<_> = apps.iter().map(hypothesis_values).collect();
        for k in 0..hv[0].len() {
            count += 1;
            let (label, _, rel, rhs) = &hv[0][k];
            let q = Quadratic::from_samples(&hv[0][k].1, &hv[1][k].1, &hv[2][k].1);
            if !holds(&q.worst(*rel), *rel, rhs) {
                return (count, Some(format!("{:?} inside piece: {label}", piece.kind)), start_apps);
            }
        }
        if piece.kind == LemmaKind::QuadEdge {
            // f decreases in a, so b_max < f(a_max) covers the piece.
            count += 1;
            let a_max = apps[0].params.a.clone().unwrap().max(apps[2].params.a.clone().unwrap());
            let b_max = apps[0].params.b.clone().unwrap().max(apps[2].params.b.clone().unwrap());
            let ok = fcurve::eval_f(a_max.enclosure())
                .map(|f| b_max.enclosure().lt(&f.f_value).is_true())
                .unwrap_or(false);
            if !ok {
                return (count, Some("QuadEdge inside piece: b < f(a)".into()), start_apps);
            }
        }
        let turns: Vec<Vec<Exact>> = [p0, ph, p1].iter().map(|p| turn_values(piece, p, side)).collect();
        for k in 0..turns[0].len() {
            count += 1;
            let q = Quadratic::from_samples(&turns[0][k], &turns[1][k], &turns[2][k]);
            if !q.min_on_unit().is_positive() {
                return (count, Some(format!("{:?} loses strict convexity inside piece", piece.kind)), start_apps);
            }
        }
        start_apps.push(apps.into_iter().next().unwrap());
    }
    (count, None, start_apps)
}

fn check_piece(ms: &MovementSchedule, rows: &[Vec<usize>], k: usize) -> PieceReport {
    let side = &ms.base.config.container.side;
    let p0 = &ms.positions[k];
    let p1 = &ms.positions[k + 1];
    let ph = lerp_all(p0, p1, &Exact::from_ratio(1, 2));
    let mut sorted_rows = rows.to_vec();
    for r in &mut sorted_rows {
        r.sort_by(|&a, &b| ph[a].x.cmp(&ph[b].x));
    }
    let mut report = PieceReport {
        index: k,
        verdict: Verdict::True,
        regions: 0,
        checks: 0,
        kinds: BTreeMap::new(),
        failure: None,
    };
    let layout = match Layout::build(side, &sorted_rows, &ph) {
        Ok(l) => l,
        Err(e) => {
            report.verdict = Verdict::False;
            report.failure = Some(e.to_string());
            return report;
        }
    };
    let mut choice = Vec::with_capacity(layout.slots.len());
    let mut start_apps = Vec::new();
    for (j, slot) in layout.slots.iter().enumerate() {
        let mut first_failure = None;
        let mut chosen = None;
        for (c, opt) in slot.options.iter().enumerate() {
            let (n, fail, apps) = option_checks(opt, p0, &ph, p1, side);
            report.checks += n;
            match fail {
                None => {
                    chosen = Some((c, apps));
                    break;
                }
                Some(f) => {
                    first_failure.get_or_insert(f);
                }
            }
        }
        match chosen {
            Some((c, apps)) => {
                choice.push(c);
                for a in &apps {
                    *report.kinds.entry(a.kind.to_string()).or_default() += 1;
                }
                start_apps.extend(apps);
            }
            None => {
                report.verdict = Verdict::False;
                report.failure = Some(format!("slot {j}: {}", first_failure.unwrap_or_default()));
                return report;
            }
        }
    }
    report.regions = start_apps.len();
    report.checks += 1;
    if !layout.edges_twinned(&choice) {
        report.verdict = Verdict::False;
        report.failure = Some("decomposition edges are not twinned".into());
        return report;
    }
    report.checks += 1;
    let polys: Vec<_> = start_apps.iter().map(|a| a.region.clone()).collect();
    let cov = polygons_cover_square(&polys, &ms.base.config.container);
    if !cov.verdict.is_true() {
        report.verdict = cov.verdict;
        report.failure = Some("regions do not cover the container at the piece start".into());
    }
    report
}

fn constraint_value(c: &Constraint, ms: &MovementSchedule, pos: &[ExactPoint]) -> Result<Exact> {
    let side = &ms.base.config.container.side;
    let p = |id: &str| ms.index_of(id).map(|i| pos[i].clone());
    Ok(match &c.kind {
        ConstraintKind::VerticalGap { a, b } => (&p(a)?.y - &p(b)?.y).abs(),
        ConstraintKind::PairDistance { a, b } => p(a)?.dist2(&p(b)?),
        ConstraintKind::WallDistance { p: id, wall } => {
            let q = p(id)?;
            match wall {
                Wall::Left => q.x,
                Wall::Right => side - &q.x,
                Wall::Bottom => q.y,
                Wall::Top => side - &q.y,
            }
        }
    })
}

/// Declared constraints, each bounded over every piece. Pair distances
/// are compared squared.
fn constraint_checks(ms: &MovementSchedule) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for c in &ms.constraints {
        let squared = matches!(c.kind, ConstraintKind::PairDistance { .. });
        let bound = if squared { c.bound.sqr() } else { c.bound.clone() };
        if c.from_knot >= ms.positions.len() {
            return Err(Error::Invalid(format!("constraint {} starts after the last knot", c.label)));
        }
        let mut worst: Option<Exact> = None;
        for k in c.from_knot..ms.positions.len().saturating_sub(1).max(c.from_knot + 1) {
            let p0 = &ms.positions[k];
            let p1 = ms.positions.get(k + 1).unwrap_or(p0);
            let ph = lerp_all(p0, p1, &Exact::from_ratio(1, 2));
            // Vertical gaps are absolute values of linear functions whose
            // sign is fixed, hence linear.
            let q = Quadratic::from_samples(
                &constraint_value(c, ms, p0)?,
                &constraint_value(c, ms, &ph)?,
                &constraint_value(c, ms, p1)?,
            );
            let w = q.worst(c.relation);
            worst = Some(match worst {
                None => w,
                Some(prev) => match c.relation {
                    Relation::Lt | Relation::Le => prev.max(w),
                    _ => prev.min(w),
                },
            });
        }
        let w = worst.expect("at least one piece");
        let label = if squared { format!("{} (squared)", c.label) } else { c.label.clone() };
        out.push(CheckRecord::exact(label, &w, c.relation, &bound));
    }
    Ok(out)
}

/// Checks the schedule and emits one obligation per point of the
/// certificate's colour: its swept path lies in a single box.
pub fn verify_schedule(ms: &MovementSchedule) -> Result<ScheduleReport> {
    let n = ms.base.config.points.len();
    if ms.knots.len() != ms.positions.len() || ms.positions.iter().any(|p| p.len() != n) {
        return Err(Error::Invalid(format!("schedule {}: malformed knot data", ms.name)));
    }
    if ms.knots.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid(format!("schedule {}: knots must increase", ms.name)));
    }
    let base: Vec<&ExactPoint> = ms.base.config.points.iter().map(|p| &p.pos).collect();
    if ms.positions[0].iter().zip(&base).any(|(p, q)| p != *q) {
        return Err(Error::Invalid(format!("schedule {}: does not start at the base configuration", ms.name)));
    }
    for (i, p) in ms.base.config.points.iter().enumerate() {
        let moves = ms.positions.iter().any(|k| k[i] != p.pos);
        if !moves {
            continue;
        }
        if p.color != ms.base.color {
            return Err(Error::Invalid(format!("schedule {}: point {} of the other colour moves", ms.name, p.id)));
        }
        let pre = ms.precondition(&p.id);
        if pre != Precondition::Alone {
            return Err(Error::Invalid(format!(
                "schedule {}: point {} is {:?} and must stay constant",
                ms.name, p.id, pre
            )));
        }
    }

    let rows = colour_rows(&ms.base.config, ms.base.color)?;
    let pieces: Vec<PieceReport> = if ms.positions.len() == 1 {
        let mut single = ms.clone();
        single.positions.push(ms.positions[0].clone());
        vec![check_piece(&single, &rows, 0)]
    } else {
        (0..ms.positions.len() - 1).into_par_iter().map(|k| check_piece(ms, &rows, k)).collect()
    };
    let constraints = constraint_checks(ms)?;
    let verdict = Verdict::all(pieces.iter().map(|p| p.verdict)).and(Verdict::all(constraints.iter().map(|c| c.verdict)));

    let mut obligations = Vec::new();
    for (i, p) in ms.base.config.points.iter().enumerate() {
        if p.color != ms.base.color {
            continue;
        }
        let mut path: Vec<ExactPoint> = Vec::new();
        for k in &ms.positions {
            if path.last() != Some(&k[i]) {
                path.push(k[i].clone());
            }
        }
        obligations.push(CoverageObligation {
            path,
            class: ObligationClass { color: p.color, base: p.id.clone() },
            alone: ms.precondition(&p.id) == Precondition::Alone,
            source: ms.name.clone(),
        });
    }
    Ok(ScheduleReport { name: ms.name.clone(), color: ms.base.color, verdict, pieces, constraints, obligations })
}
