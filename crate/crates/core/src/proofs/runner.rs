//! Replays a proof script step by step.
//!
//! A step's `verdict` says whether its own checks hold. Steps that close an
//! argument also carry a `contradiction`; a script (or a case) is proved
//! when every step holds and some step reaches a contradiction.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::audit::{audit, AuditItem};
use super::script::{AssumeBasis, Case, Mutation, ProofScript, Step};
use crate::certificates::{load_certificate_file, verify_certificate, Certificate, Color, ConfigPoint, Configuration};
use crate::deformation::{
    add_row_moves, merge_obligations, row_compression_targets, verify_schedule, CoverageObligation, MovementSchedule,
    ObligationGroup, Precondition,
};
use crate::error::{Error, Result};
use crate::geometry::{ContainerSquare, ExactPoint, PointSpec};
use crate::lemmas::line::{close_line_radius, max_half_diagonal};
use crate::numerics::expr::exact_constant;
use crate::numerics::{Exact, Relation, Verdict};
use crate::report::CheckRecord;
use crate::resource::{
    feasible_midpoint_region, line_resource_contradiction, region_in_disk, window_analysis, window_region, CoveredPoint,
    ResourceLine,
};

#[derive(Clone, Debug, Serialize)]
pub struct Assumption {
    pub step: String,
    pub statement: String,
    /// `checked` (verified by the step), `trusted` or `case`.
    pub status: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    pub id: String,
    pub op: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contradiction: Option<Verdict>,
    pub summary: String,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cases: Vec<CaseReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub name: String,
    pub assumption: String,
    pub verdict: Verdict,
    pub steps: Vec<StepReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProofReport {
    pub name: String,
    pub claim: String,
    pub verdict: Verdict,
    /// The first step (depth first) that does not hold.
    pub failed_step: Option<String>,
    pub reason: Option<String>,
    pub conclusion: Option<String>,
    pub mutations: Vec<String>,
    pub steps: Vec<StepReport>,
    pub audit: Vec<AuditItem>,
    pub assumptions: Vec<Assumption>,
    pub checks_total: usize,
}

enum Output {
    Certificate(Certificate),
    Obligations(Vec<CoverageObligation>),
    Groups(Vec<ObligationGroup>),
    Resource { line: ResourceLine, claims: Vec<usize>, established: Vec<bool> },
    Normalization { color: Color, below: Exact, points: Vec<ConfigPoint> },
    Done,
}

type Env = BTreeMap<String, Arc<Output>>;

struct Ctx<'a> {
    script: &'a ProofScript,
    side: Exact,
}

struct Outcome {
    report: StepReport,
    output: Output,
    assumptions: Vec<Assumption>,
    audit: Vec<AuditItem>,
}

impl Outcome {
    fn new(step: &Step, verdict: Verdict, summary: String, checks: Vec<CheckRecord>, output: Output) -> Outcome {
        Outcome {
            report: StepReport {
                id: step.id().into(),
                op: step.op().into(),
                verdict,
                contradiction: None,
                summary,
                checks,
                details: Value::Null,
                cases: Vec::new(),
            },
            output,
            assumptions: Vec::new(),
            audit: Vec::new(),
        }
    }

    fn failed(step: &Step, why: String) -> Outcome {
        Outcome::new(step, Verdict::False, why, Vec::new(), Output::Done)
    }

    fn assume(mut self, statement: impl Into<String>, status: &str) -> Outcome {
        self.assumptions.push(Assumption { step: self.report.id.clone(), statement: statement.into(), status: status.into() });
        self
    }

    fn details(mut self, v: Value) -> Outcome {
        self.report.details = v;
        self
    }
}

fn all_checks(checks: &[CheckRecord]) -> Verdict {
    Verdict::all(checks.iter().map(|c| c.verdict))
}

fn get<'e>(env: &'e Env, id: &str) -> Result<&'e Output> {
    env.get(id).map(|o| o.as_ref()).ok_or_else(|| Error::Invalid(format!("step {id:?} has no usable output")))
}

fn certificate<'e>(env: &'e Env, id: &str) -> Result<&'e Certificate> {
    match get(env, id)? {
        Output::Certificate(c) => Ok(c),
        _ => Err(Error::Invalid(format!("step {id:?} is not a certificate step"))),
    }
}

fn groups<'e>(env: &'e Env, id: &str) -> Result<&'e Vec<ObligationGroup>> {
    match get(env, id)? {
        Output::Groups(g) => Ok(g),
        _ => Err(Error::Invalid(format!("step {id:?} is not a merge step"))),
    }
}

fn point(script: &ProofScript, at: &(String, String)) -> Result<ExactPoint> {
    Ok(ExactPoint::new(script.value(&at.0)?, script.value(&at.1)?))
}

fn apply_file_mutations(step: &str, color: Color, config: &Configuration, muts: &[Mutation]) -> Result<Configuration> {
    let mut config = config.clone();
    for m in muts {
        match m {
            Mutation::RowY { step: s, row, value } if s == step => {
                let y = exact_constant(value)?;
                let mut hit = false;
                for p in config.points.iter_mut().filter(|p| p.color == color && p.row == Some(*row)) {
                    p.pos.y = y.clone();
                    hit = true;
                }
                if !hit {
                    return Err(Error::Parse(format!("mutation: step {step} has no {color} row {row}")));
                }
            }
            Mutation::Point { step: s, point, coord, value } if s == step => {
                let v = exact_constant(value)?;
                let p = config
                    .points
                    .iter_mut()
                    .find(|p| &p.id == point)
                    .ok_or_else(|| Error::Parse(format!("mutation: step {step} has no point {point}")))?;
                match coord {
                    'x' => p.pos.x = v,
                    _ => p.pos.y = v,
                }
            }
            _ => {}
        }
    }
    Ok(config)
}

fn run_certificate(ctx: &Ctx, step: &Step, file: &str, color: Color) -> Result<Outcome> {
    let path = ctx.script.path(file);
    let loaded = load_certificate_file(&path)?;
    let config = apply_file_mutations(step.id(), color, &loaded.config, &ctx.script.mutations)?;
    let loaded = loaded.with_config(config);
    let Some(cert) = loaded.certificate(color).cloned() else {
        return Ok(Outcome::failed(step, format!("{file} has no {color} certificate")));
    };
    let report = verify_certificate(&cert)?;
    let mut checks = vec![CheckRecord::fact(
        format!("container side is {}", ctx.side.to_expr_string()),
        cert.config.container.side == ctx.side,
    )];
    checks.extend(report.config_checks.iter().cloned());
    let verdict = all_checks(&checks).and(report.verdict);
    let summary = match &report.failure {
        None => format!(
            "{} {color} points, {} regions, coverage by {} cells",
            report.points,
            report.regions.len(),
            report.coverage.cells_checked
        ),
        Some(f) => format!("{color} certificate of {file}: {f}"),
    };
    let region_checks: usize = report.regions.iter().map(|r| r.checks.len()).sum();
    let details = json!({
        "file": file,
        "points": report.points,
        "regions": report.regions.len(),
        "region_checks": region_checks,
        "failure": report.failure,
        "region_reports": report.regions,
    });
    Ok(Outcome::new(step, verdict, summary, checks, Output::Certificate(cert)).details(details))
}

fn reflect(p: &ExactPoint, axis: &str, at: &Exact) -> Result<ExactPoint> {
    let two_at = at + at;
    match axis {
        "x" => Ok(ExactPoint::new(&two_at - &p.x, p.y.clone())),
        "y" => Ok(ExactPoint::new(p.x.clone(), &two_at - &p.y)),
        _ => Err(Error::Invalid(format!("mirror axis must be x or y, not {axis:?}"))),
    }
}

fn sorted(mut v: Vec<ExactPoint>) -> Vec<ExactPoint> {
    v.sort_by(|a, b| a.lex_cmp(b));
    v
}

fn run_mirror(ctx: &Ctx, env: &Env, step: &Step, source: &str, image: &str, axis: &str, at: &str) -> Result<Outcome> {
    let s = certificate(env, source)?;
    let t = certificate(env, image)?;
    let at = ctx.script.value(at)?;
    let mapped = sorted(s.config.of_color(s.color).map(|p| reflect(&p.pos, axis, &at)).collect::<Result<_>>()?);
    let target = sorted(t.config.of_color(t.color).map(|p| p.pos.clone()).collect());
    let checks = vec![
        CheckRecord::fact(format!("{} and {} have equally many points", source, image), mapped.len() == target.len()),
        CheckRecord::fact(format!("{image} is {source} reflected in {axis} = {}", at.to_expr_string()), mapped == target),
    ];
    let verdict = all_checks(&checks);
    let summary = format!("{} {} points reflect onto {} {} points", mapped.len(), s.color, target.len(), t.color);
    Ok(Outcome::new(step, verdict, summary, checks, Output::Done))
}

fn run_assume(ctx: &Ctx, env: &Env, step: &Step, cert: &str, basis: &AssumeBasis, statement: &str) -> Result<Outcome> {
    let c = certificate(env, cert)?;
    let count = c.config.count(c.color);
    let n = ctx.script.theorem.n;
    let (checks, status) = match basis {
        AssumeBasis::OnePerBox => (
            vec![CheckRecord::fact(format!("{} {} points, one per box of {n}", count, c.color), count == n)],
            "checked",
        ),
        AssumeBasis::OneException => (
            vec![
                CheckRecord::fact(format!("{} {} points for {n} boxes", count, c.color), count == n + 1),
                CheckRecord::exact(
                    "two points in one box are closer than its diagonal 1.01 sqrt(2) < 2",
                    &(Exact::from_ratio(101, 100) * Exact::sqrt_int(2)),
                    Relation::Lt,
                    &Exact::from_int(2),
                ),
            ],
            "checked",
        ),
        AssumeBasis::Trusted => (Vec::new(), "trusted"),
    };
    let verdict = all_checks(&checks);
    Ok(Outcome::new(step, verdict, statement.to_string(), checks, Output::Done).assume(statement, status))
}

fn run_symmetry(
    ctx: &Ctx,
    env: &Env,
    step: &Step,
    certs: &[String],
    exception: &str,
    below: &str,
    above: &str,
) -> Result<Outcome> {
    let mut checks = Vec::new();
    for id in certs {
        let c = certificate(env, id)?;
        let side = &c.config.container.side;
        let pts = sorted(c.config.of_color(c.color).map(|p| p.pos.clone()).collect());
        let image = sorted(pts.iter().map(|p| ExactPoint::new(side - &p.x, p.y.clone())).collect());
        checks.push(CheckRecord::fact(format!("{} points of {id} invariant under x -> {} - x", c.color, side.to_expr_string()), pts == image));
    }
    let c = certificate(env, exception)?;
    let lo = ctx.script.value(below)?;
    let hi = ctx.script.value(above)?;
    let reach = Exact::from_ratio(101, 100) * Exact::sqrt_int(2);
    let reach2 = reach.sqr();
    let pts: Vec<&ConfigPoint> = c.config.of_color(c.color).collect();
    let mut straddling = 0usize;
    let mut pairs = 0usize;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            if p.pos.dist2(&q.pos) >= reach2 {
                continue;
            }
            pairs += 1;
            let (a, b) = if p.pos.x <= q.pos.x { (p, q) } else { (q, p) };
            if a.pos.x < lo && b.pos.x > hi {
                straddling += 1;
            }
        }
    }
    checks.push(CheckRecord::fact(
        format!(
            "no two {} points closer than 1.01 sqrt(2) lie in x < {} and x > {} ({pairs} close pairs)",
            c.color,
            lo.to_expr_string(),
            hi.to_expr_string()
        ),
        straddling == 0,
    ));
    let verdict = all_checks(&checks);
    let statement = format!(
        "the exceptional {} points avoid x < {} (reflect otherwise), so {} points with x < {} are alone in their boxes",
        c.color,
        lo.to_expr_string(),
        c.color,
        lo.to_expr_string()
    );
    let points = c.config.of_color(c.color).cloned().collect();
    let out = Output::Normalization { color: c.color, below: lo, points };
    Ok(Outcome::new(step, verdict, statement.clone(), checks, out).assume(statement, "trusted"))
}

fn run_audit(step: &Step, items: &[String]) -> Result<Outcome> {
    let items = audit(items)?;
    let checks: Vec<CheckRecord> = items.iter().map(|i| i.check.clone()).collect();
    let verdict = all_checks(&checks);
    let held = checks.iter().filter(|c| c.verdict.is_true()).count();
    let mut o = Outcome::new(step, verdict, format!("{held}/{} named inequalities hold", checks.len()), checks, Output::Done);
    o.audit = items;
    Ok(o)
}

#[allow(clippy::too_many_arguments)]
fn run_movement(
    ctx: &Ctx,
    env: &Env,
    step: &Step,
    cert: &str,
    compress: bool,
    moves: &[super::script::RowMove],
    slide_to: &str,
    maybe: Option<&super::script::MaybeExceptional>,
) -> Result<Outcome> {
    let base = certificate(env, cert)?.clone();
    let slide_to = ctx.script.value(slide_to)?;
    let mut preconditions = BTreeMap::new();
    if let Some(m) = maybe {
        let thr = ctx.script.value(&m.x_at_least)?;
        for p in base.config.of_color(base.color) {
            if p.row.is_some_and(|r| m.rows.contains(&r)) && p.pos.x >= thr {
                preconditions.insert(p.id.clone(), Precondition::MaybeExceptional);
            }
        }
    }
    let mut plans = Vec::new();
    for mv in moves {
        let shift = mv.shift.as_deref().map(|s| ctx.script.value(s)).transpose()?;
        plans.push((mv.row, shift));
    }
    if plans.is_empty() {
        plans.push((0, None));
    }
    let results: Vec<Result<(Vec<CheckRecord>, crate::deformation::ScheduleReport, Value)>> = plans
        .par_iter()
        .map(|(row, shift)| {
            let mut checks = Vec::new();
            let mut heights = Value::Null;
            let mut ms = if compress && *row > 0 {
                let c = row_compression_targets(&base, *row)?;
                checks.extend(c.checks.iter().cloned());
                heights = json!(c.summary());
                c.schedule
            } else {
                MovementSchedule::stationary(format!("{} stationary", base.color), base.clone())
            };
            ms.preconditions = preconditions.clone();
            let moved = if *row > 0 { add_row_moves(&mut ms, *row, shift.as_ref(), &slide_to)? } else { false };
            let rep = verify_schedule(&ms)?;
            checks.extend(rep.constraints.iter().cloned());
            let d = json!({
                "row": row,
                "moved": moved,
                "knots": ms.knots.len(),
                "compression": heights,
                "pieces": rep.pieces,
            });
            Ok((checks, rep, d))
        })
        .collect();
    let mut checks = Vec::new();
    let mut obligations = Vec::new();
    let mut details = Vec::new();
    let mut verdict = Verdict::True;
    let mut failures = Vec::new();
    for r in results {
        let (c, rep, d) = r?;
        verdict = verdict.and(rep.verdict).and(all_checks(&c));
        if !rep.verdict.is_true() {
            if let Some(f) = rep.pieces.iter().find_map(|p| p.failure.clone()) {
                failures.push(format!("{}: {f}", rep.name));
            }
        }
        if let Some(f) = c.iter().find(|c| !c.verdict.is_true()) {
            failures.push(format!("{}: {}", rep.name, f.label));
        }
        checks.extend(c);
        obligations.extend(rep.obligations);
        details.push(d);
    }
    let summary = if failures.is_empty() {
        format!(
            "{} schedule(s) of {} points stay unavoidable; {} coverage obligations",
            details.len(),
            base.color,
            obligations.len()
        )
    } else {
        failures.join("; ")
    };
    let exceptional = preconditions.len();
    let mut o = Outcome::new(step, verdict, summary, checks, Output::Obligations(obligations)).details(json!({ "schedules": details, "maybe_exceptional": exceptional }));
    o = o.assume(
        format!("each moving {} point is alone in its box and the set stays unavoidable, so its path lies in that box", base.color),
        "checked",
    );
    Ok(o)
}

fn run_merge(env: &Env, step: &Step, inputs: &[String]) -> Result<Outcome> {
    let mut all = Vec::new();
    for id in inputs {
        match get(env, id)? {
            Output::Obligations(o) => all.extend(o.iter().cloned()),
            _ => return Err(Error::Invalid(format!("step {id:?} is not a movement step"))),
        }
    }
    match merge_obligations(&all) {
        Ok(groups) => {
            let multi = groups.iter().filter(|g| g.classes.len() > 1).count();
            let summary = format!("{} obligations in {} boxes, {} holding several classes", all.len(), groups.len(), multi);
            let check = CheckRecord::fact("no box receives two lone points of one colour", true);
            Ok(Outcome::new(step, Verdict::True, summary, vec![check], Output::Groups(groups)))
        }
        Err(Error::Invalid(msg)) => {
            let check = CheckRecord::fact("no box receives two lone points of one colour", false);
            let mut o = Outcome::new(step, Verdict::True, msg, vec![check], Output::Done);
            o.report.contradiction = Some(Verdict::True);
            Ok(o)
        }
        Err(e) => Err(e),
    }
}

fn leftmost(g: &ObligationGroup) -> ExactPoint {
    g.shapes
        .iter()
        .flat_map(|s| [&s.a, &s.b])
        .min_by(|a, b| a.lex_cmp(b))
        .cloned()
        .expect("groups have shapes")
}

fn run_line_resource(ctx: &Ctx, env: &Env, step: &Step, merge: &str, line_x: &str, capacity: &str, color: Color) -> Result<Outcome> {
    let gs = groups(env, merge)?;
    let x = ctx.script.value(line_x)?;
    let cap = ctx.script.value(capacity)?;
    let container = ContainerSquare::new(ctx.side.clone())?;
    let line = ResourceLine::vertical_from_bottom(x.clone(), cap, &container)?;
    let mut claims = Vec::new();
    let mut covered = Vec::new();
    for (i, g) in gs.iter().enumerate() {
        let Some(lone) = g.lone(color) else { continue };
        let p = leftmost(g);
        if p.x >= x {
            continue;
        }
        claims.push(i);
        let (px, py) = p.to_f64();
        covered.push(CoveredPoint { label: format!("box of {} at ({px:.4}, {py:.4})", lone.base), point: p });
    }
    let mut checks = Vec::new();
    for (a, &i) in claims.iter().enumerate() {
        for &j in &claims[a + 1..] {
            checks.push(CheckRecord::fact(
                format!("boxes of {} and {} are distinct", gs[i].lone(color).unwrap().base, gs[j].lone(color).unwrap().base),
                gs[i].distinct_from(&gs[j]),
            ));
        }
    }
    let report = line_resource_contradiction(&line, &container, &covered)?;
    let established: Vec<bool> = report.claims.iter().map(|c| c.exceeds_one).collect();
    checks.extend(report.checks.iter().cloned());
    let distinct = Verdict::all(checks.iter().filter(|c| c.label.starts_with("boxes of")).map(|c| c.verdict));
    let mut o = Outcome::new(step, distinct, report.conclusion.clone(), checks, Output::Resource { line, claims, established })
        .details(json!({ "claims": report.claims, "capacity": report.capacity_exact }));
    o.report.contradiction = Some(report.verdict);
    Ok(o)
}

#[allow(clippy::too_many_arguments)]
fn run_midpoint(
    ctx: &Ctx,
    env: &Env,
    step: &Step,
    resource: &str,
    merge: &str,
    row: usize,
    anchor: &(String, String),
    target: &super::script::Target,
    radius: &str,
    normalization: Option<&str>,
) -> Result<Outcome> {
    let Output::Resource { line, claims, established } = get(env, resource)? else {
        return Err(Error::Invalid(format!("step {resource:?} is not a line resource step")));
    };
    let gs = groups(env, merge)?;
    let anchor = point(ctx.script, anchor)?;
    let t = point(ctx.script, &target.at)?;
    let radius = ctx.script.value(radius)?;
    let rows = line
        .capacity
        .to_f64()
        .round()
        .max(0.0) as usize;
    let mut checks = Vec::new();

    let home = gs.iter().position(|g| g.contains(&anchor));
    checks.push(CheckRecord::fact("the anchor lies in a covered shape", home.is_some()));
    let Some(home) = home else {
        return Ok(Outcome::new(step, Verdict::False, "anchor is not covered by any merged box".into(), checks, Output::Done));
    };
    let n_est = established.iter().filter(|e| **e).count();
    let home_claim = claims.iter().position(|&c| c == home);
    checks.push(CheckRecord::fact(
        format!("{n_est} of the other boxes each cut more than 1 from the line of length {rows}"),
        n_est + 1 == rows && home_claim.is_some_and(|k| !established[k]),
    ));
    let window = window_analysis(line, rows, row)?;
    let keep = (target.kind == "denied").then_some(&t);
    let region = window_region(line, &window, &anchor, keep)?;
    let env_r = feasible_midpoint_region(&region);
    let disk = region_in_disk(&region, &t, &radius)?;
    checks.push(disk.check.clone());

    let (closing, why) = match target.kind.as_str() {
        "denied" => {
            let ok = window.denied.contains(&t);
            checks.push(CheckRecord::fact("the target is a denied end of the window", ok));
            (Verdict::from_bool(ok), "the box would contain a point of the line it cannot reach".to_string())
        }
        "point" => {
            let Some(norm) = normalization else {
                return Err(Error::Invalid("target kind point needs a normalization step".into()));
            };
            let Output::Normalization { color, below, points } = get(env, norm)? else {
                return Err(Error::Invalid(format!("step {norm:?} is not a symmetry step")));
            };
            let hit = points.iter().find(|p| p.pos == t);
            let lone_target = hit.is_some_and(|p| p.pos.x < *below);
            checks.push(CheckRecord::fact(format!("the target is a {color} point left of x = {}", below.to_expr_string()), lone_target));
            let other = gs[home].lone(*color).filter(|c| hit.is_some_and(|p| p.id != c.base));
            checks.push(CheckRecord::fact(format!("the box already holds a different lone {color} point"), other.is_some()));
            let why = format!(
                "the box would hold {} and {}, two {color} points, one of them alone",
                hit.map(|p| p.id.as_str()).unwrap_or("?"),
                other.map(|c| c.base.as_str()).unwrap_or("?")
            );
            (Verdict::from_bool(lone_target && other.is_some()), why)
        }
        k => return Err(Error::Invalid(format!("unknown target kind {k:?}"))),
    };
    let structural = Verdict::all(checks.iter().filter(|c| c.label != disk.check.label).map(|c| c.verdict));
    let contradiction = disk.verdict.and(closing).and(structural);
    let (mx, my) = t.to_f64();
    let summary = if contradiction.is_true() {
        format!("every admissible centre is within {} of ({mx:.4}, {my:.4}): {why}", radius.to_expr_string())
    } else {
        format!("region not certified inside the disk about ({mx:.4}, {my:.4}); max distance {}", disk.max_distance)
    };
    let vertices: Vec<Value> = env_r
        .vertices
        .iter()
        .map(|v| json!({ "point": [v.point.x.mid(), v.point.y.mid()], "enclosure": v.point, "between": v.between, "feasible": v.feasible }))
        .collect();
    let details = json!({
        "window": window,
        "constraints": region.description,
        "vertices": vertices,
        "max_distance": disk.max_distance,
        "target": PointSpec::from_exact(&t),
        "geometry": {
            "line_x": line.segment.a.x.to_f64(),
            "edge_x": (&line.segment.a.x + &close_line_radius()).to_f64(),
            "anchor": anchor.to_f64(),
            "reach": max_half_diagonal().to_f64(),
            "denied": window.denied.iter().map(|d| d.to_f64()).collect::<Vec<_>>(),
            "excluded": window.denied.iter().filter(|d| Some(*d) != keep).map(|d| d.to_f64()).collect::<Vec<_>>(),
            "target": t.to_f64(),
            "radius": radius.to_f64(),
            "side": ctx.side.to_f64(),
        },
    });
    let mut o = Outcome::new(step, structural, summary, checks, Output::Done).details(details);
    o.report.contradiction = Some(contradiction);
    o = o.assume(
        "the boxes meeting the line cut it in the order of the rows they cover",
        "trusted",
    );
    Ok(o)
}

struct Run {
    steps: Vec<StepReport>,
    assumptions: Vec<Assumption>,
    audit: Vec<AuditItem>,
}

fn run_case(ctx: &Ctx, env: &Env, case: &Case) -> Result<(CaseReport, Run)> {
    let mut env = env.clone();
    let run = run_steps(ctx, &case.steps, &mut env)?;
    let verdict = sequence_verdict(&run.steps);
    Ok((
        CaseReport { name: case.name.clone(), assumption: case.assumption.clone(), verdict, steps: run.steps.clone() },
        run,
    ))
}

fn run_split(ctx: &Ctx, env: &Env, step: &Step, statement: &str, cases: &[Case]) -> Result<Outcome> {
    let results: Vec<Result<(CaseReport, Run)>> = cases.par_iter().map(|c| run_case(ctx, env, c)).collect();
    let mut reports = Vec::new();
    let mut assumptions = vec![Assumption { step: step.id().into(), statement: statement.into(), status: "trusted".into() }];
    let mut audit = Vec::new();
    for r in results {
        let (rep, run) = r?;
        assumptions.push(Assumption { step: step.id().into(), statement: format!("case {}: {}", rep.name, rep.assumption), status: "case".into() });
        assumptions.extend(run.assumptions);
        audit.extend(run.audit);
        reports.push(rep);
    }
    let verdict = Verdict::all(reports.iter().map(|c| c.verdict));
    let closed = reports.iter().filter(|c| c.verdict.is_true()).count();
    let summary = format!("{closed}/{} cases end in a contradiction", reports.len());
    let mut o = Outcome::new(step, verdict, summary, Vec::new(), Output::Done);
    o.report.contradiction = Some(verdict);
    o.report.cases = reports;
    o.assumptions = assumptions;
    o.audit = audit;
    Ok(o)
}

/// Every step holds and some step reaches a contradiction.
fn sequence_verdict(steps: &[StepReport]) -> Verdict {
    let holds = Verdict::all(steps.iter().map(|s| s.verdict));
    let closes = steps.iter().filter_map(|s| s.contradiction).fold(Verdict::False, |acc, v| match (acc, v) {
        (Verdict::True, _) | (_, Verdict::True) => Verdict::True,
        (Verdict::Indeterminate, _) | (_, Verdict::Indeterminate) => Verdict::Indeterminate,
        _ => Verdict::False,
    });
    holds.and(closes)
}

fn run_step(ctx: &Ctx, env: &Env, step: &Step) -> Result<Outcome> {
    match step {
        Step::Certificate { file, color, .. } => run_certificate(ctx, step, file, *color),
        Step::MirrorCheck { source, image, axis, at, .. } => run_mirror(ctx, env, step, source, image, axis, at),
        Step::Assume { certificate, basis, statement, .. } => run_assume(ctx, env, step, certificate, basis, statement),
        Step::Symmetry { certificates, exception, below, above, .. } => {
            run_symmetry(ctx, env, step, certificates, exception, below, above)
        }
        Step::Audit { items, .. } => run_audit(step, items),
        Step::Movement { certificate, compress, moves, slide_to, maybe_exceptional, .. } => {
            run_movement(ctx, env, step, certificate, *compress, moves, slide_to, maybe_exceptional.as_ref())
        }
        Step::Merge { inputs, .. } => run_merge(env, step, inputs),
        Step::LineResource { merge, line_x, capacity, distinct_color, .. } => {
            run_line_resource(ctx, env, step, merge, line_x, capacity, *distinct_color)
        }
        Step::CaseSplit { statement, cases, .. } => run_split(ctx, env, step, statement, cases),
        Step::MidpointRegion { resource, merge, row, anchor, target, radius, normalization, .. } => {
            run_midpoint(ctx, env, step, resource, merge, *row, anchor, target, radius, normalization.as_deref())
        }
    }
}

fn run_steps(ctx: &Ctx, steps: &[Step], env: &mut Env) -> Result<Run> {
    let mut run = Run { steps: Vec::new(), assumptions: Vec::new(), audit: Vec::new() };
    for step in steps {
        let outcome = match run_step(ctx, env, step) {
            Ok(o) => o,
            // Data that is readable but inconsistent fails the step.
            Err(e) if !e.is_parse() => Outcome::failed(step, e.to_string()),
            Err(e) => return Err(e),
        };
        let usable = outcome.report.verdict.is_true();
        if usable && !matches!(outcome.output, Output::Done) {
            env.insert(step.id().to_string(), Arc::new(outcome.output));
        }
        run.assumptions.extend(outcome.assumptions);
        run.audit.extend(outcome.audit);
        run.steps.push(outcome.report);
    }
    Ok(run)
}

fn first_failure(steps: &[StepReport]) -> Option<String> {
    for s in steps {
        if !s.verdict.is_true() {
            for c in &s.cases {
                if !c.verdict.is_true() {
                    if let Some(f) = first_failure(&c.steps) {
                        return Some(f);
                    }
                    return Some(format!("{}/{}", s.id, c.name));
                }
            }
            return Some(s.id.clone());
        }
    }
    None
}

fn count_checks(steps: &[StepReport]) -> usize {
    steps
        .iter()
        .map(|s| s.checks.len() + s.cases.iter().map(|c| count_checks(&c.steps)).sum::<usize>())
        .sum()
}

/// Replays the script. Parse errors in the script or its data files are
/// returned as `Err`; every other failure is reported in the verdict.
pub fn run_proof(script: &ProofScript) -> Result<ProofReport> {
    let side = exact_constant(&script.theorem.side)?;
    let ctx = Ctx { script, side: side.clone() };
    let mut env = Env::new();
    let run = run_steps(&ctx, &script.steps, &mut env)?;
    let verdict = sequence_verdict(&run.steps);
    let failed_step = if verdict.is_true() { None } else { first_failure(&run.steps) };
    let reason = match (&failed_step, verdict) {
        (_, Verdict::True) => None,
        (Some(f), _) => Some(format!("step {f} does not hold")),
        (None, _) => Some("every step holds but none reaches a contradiction".into()),
    };
    let checks_total = count_checks(&run.steps) + run.audit.len();
    let mutations = script.mutations.iter().map(|m| m.to_string()).collect();
    Ok(ProofReport {
        name: script.name.clone(),
        claim: format!("{} boxes of side in (1, 1.01] do not fit in [0,{}]^2", script.theorem.n, side.to_expr_string()),
        verdict,
        failed_step,
        reason,
        conclusion: verdict.is_true().then(|| script.conclusion.clone()),
        mutations,
        steps: run.steps,
        audit: run.audit,
        assumptions: run.assumptions,
        checks_total,
    })
}

fn write_steps(out: &mut String, steps: &[StepReport], depth: usize) {
    let pad = "  ".repeat(depth);
    for s in steps {
        let closing = match s.contradiction {
            Some(Verdict::True) => "  [contradiction]",
            _ => "",
        };
        let _ = writeln!(out, "{pad}{:<13} {} ({}): {}{closing}", s.verdict.to_string(), s.id, s.op, s.summary);
        for c in s.checks.iter().filter(|c| !c.verdict.is_true()) {
            let _ = writeln!(out, "{pad}    {c}");
        }
        for c in &s.cases {
            let _ = writeln!(out, "{pad}  case {} [{}]: {}", c.name, c.verdict, c.assumption);
            write_steps(out, &c.steps, depth + 2);
        }
    }
}

impl ProofReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "proof {}: {}", self.name, self.claim);
        for m in &self.mutations {
            let _ = writeln!(out, "mutation {m}");
        }
        write_steps(&mut out, &self.steps, 1);
        let _ = writeln!(out, "assumptions:");
        for a in &self.assumptions {
            let _ = writeln!(out, "  [{}] {}: {}", a.status, a.step, a.statement);
        }
        let _ = writeln!(out, "checks: {}", self.checks_total);
        match (&self.conclusion, &self.reason) {
            (Some(c), _) => {
                let _ = writeln!(out, "verdict: {} -- {c}", self.verdict);
            }
            (None, _) => {
                let _ = writeln!(out, "verdict: {} -- {}", self.verdict, self.reason.as_deref().unwrap_or(""));
            }
        }
        out
    }
}
