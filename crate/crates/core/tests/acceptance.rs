//! One pass/fail line per acceptance criterion.
//!
//! `cargo test --test acceptance` prints the lines on stderr.
//! Criteria recorded in `KNOWN_RED` are reported as failing with their
//! analysis. The test asserts that every other criterion passes and that
//! each known-red criterion still fails.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{data, prove, CURATED_MUTATIONS};
use unavoidable::certificates::figures::edge_gap;
use unavoidable::certificates::{falsify, load_certificate_file, verify_certificate, verify_file, Color, Grid};
use unavoidable::geometry::{ContainerSquare, ExactPoint, Square};
use unavoidable::lemmas::fcurve::eval_f;
use unavoidable::lemmas::montecarlo::lemma_soundness;
use unavoidable::numerics::expr::exact_constant;
use unavoidable::numerics::{trig, Exact, Interval, Verdict};
use unavoidable::packing::{trivial_packing, validate_packing};
use unavoidable::proofs::{audit_item, bounds_table};
use unavoidable::resource::{feasible_midpoint_region, region_in_disk, window_analysis, window_region, ResourceLine};

const RUNTIME_LIMIT: Duration = Duration::from_secs(60);
const AUDIT_WIDTH: f64 = 1e-9;
const F_TOL: f64 = 1e-9;
const RESIDUAL_TOL: f64 = 1e-9;
const FALSIFY_STEP: f64 = 0.02;
const FALSIFY_ANGLE_STEP: f64 = 1.0;
const FALSIFY_LIMIT: Duration = Duration::from_secs(300);
const REGION_TOL: f64 = 0.01;
const REGION_RADIUS: (i64, i64) = (1, 2);
const MONOTONE_CASES: usize = 100_000;
const MC_SAMPLES: u64 = 1_000_000;

/// Criteria expected to fail, with the reason they fail.
const KNOWN_RED: &[(u32, &str)] = &[(
    6,
    "the printed lower-row corners (1.13, 0.56), (1.13, 1.24) are the circle evaluated at x = 1.13; \
     the exact corners sit at x = sqrt(2)-1/2+(sqrt(2)-1)/2 = 1.1213 with y = 0.9 -/+ 0.3522, \
     so both y values miss by 0.012",
)];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let s33 = prove("scripts/s33.proof", &[]);
    let s22 = prove("scripts/s22.proof", &[]);
    let elapsed = t.elapsed();
    let concl = |r: &unavoidable::proofs::ProofReport, needle: &str| r.conclusion.as_deref().is_some_and(|c| c.contains(needle));
    let proofs_ok = s33.verdict.is_true() && s22.verdict.is_true() && concl(&s33, "s(33) \u{2265} 6") && concl(&s22, "s(22) \u{2265} 5");
    let packings_ok = [(22, 5), (33, 6)].iter().all(|&(n, m)| validate_packing(&trivial_packing(n, m).unwrap()).verdict.is_true());
    let table = bounds_table(&[(22, Exact::from_int(5)), (33, Exact::from_int(6))]);
    let rendered: Vec<String> = [22, 33].iter().map(|n| table.get(*n).unwrap().to_string()).collect();
    let exact_ok = rendered[0].starts_with("s(22) = 5") && rendered[1].starts_with("s(33) = 6");
    let fast = elapsed < RUNTIME_LIMIT;
    outcome(
        proofs_ok && packings_ok && exact_ok && fast,
        format!(
            "s33 {} / s22 {} in {:.1?} (limit {:?}); packings {}; {} | {}",
            s33.verdict,
            s22.verdict,
            elapsed,
            RUNTIME_LIMIT,
            packings_ok,
            rendered[0].split("  ").next().unwrap(),
            rendered[1].split("  ").next().unwrap()
        ),
    )
}

fn criterion_2() -> Outcome {
    let ids = ["compression-bound", "behind-line-reach", "parallel-boundary", "f-quad"];
    let mut worst = 0.0f64;
    let mut ok = true;
    for id in ids {
        let it = audit_item(id).unwrap();
        worst = worst.max(it.check.width());
        ok &= it.check.verdict.is_true() && it.check.width() < AUDIT_WIDTH;
    }
    // The boundary case is an exact equality, settled strictly by the
    // box side exceeding 1.
    let r2 = Exact::sqrt_int(2);
    let boundary = &(Exact::from_int(2) * r2.clone()) - &(Exact::from_int(2) * (r2 - Exact::from_ratio(1, 2)));
    ok &= boundary == Exact::one();
    let all: Vec<_> = unavoidable::proofs::S33_ITEMS.iter().chain(unavoidable::proofs::S22_ITEMS).collect();
    let all_true = all.iter().all(|i| audit_item(i).unwrap().check.verdict.is_true());
    outcome(
        ok && all_true,
        format!("4 named items True, max width {worst:.1e} (< {AUDIT_WIDTH:.0e}); {} audit items all True: {all_true}", all.len()),
    )
}

/// Dense grid over `theta in (0, pi/4]` refined by golden section, in f64.
fn grid_oracle(a: f64) -> (f64, f64) {
    let g = |t: f64| t.cos() / (1.0 + t.cos()) + (1.0 - a * t.cos()) / t.sin();
    let n = 200_000;
    let q = std::f64::consts::FRAC_PI_4;
    let best = (1..=n).min_by(|&i, &j| g(q * i as f64 / n as f64).total_cmp(&g(q * j as f64 / n as f64))).unwrap();
    let (mut lo, mut hi) = (q * (best.max(2) - 1) as f64 / n as f64, q * (best + 1).min(n) as f64 / n as f64);
    for _ in 0..200 {
        let m1 = lo + (hi - lo) * 0.381_966_011_250_105;
        let m2 = hi - (hi - lo) * 0.381_966_011_250_105;
        if g(m1) < g(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let t = 0.5 * (lo + hi);
    (g(t), t.cos())
}

fn criterion_3() -> Outcome {
    let mut worst_f = 0.0f64;
    let mut worst_res = 0.0f64;
    let mut ok = true;
    for s in ["0.83", "0.85", "sqrt(3)/2", "0.9", "0.95"] {
        let a = exact_constant(s).unwrap().enclosure();
        let p = eval_f(a).unwrap();
        let (f, _) = grid_oracle(a.mid());
        let diff = (p.f_value.mid() - f).abs().max(p.f_value.width());
        let res = p.residual.lo().abs().max(p.residual.hi().abs());
        worst_f = worst_f.max(diff);
        worst_res = worst_res.max(res);
        ok &= diff < F_TOL && res <= RESIDUAL_TOL;
    }
    outcome(ok, format!("max |f - oracle| {worst_f:.1e} (< {F_TOL:.0e}), max cubic residual {worst_res:.1e} (<= {RESIDUAL_TOL:.0e})"))
}

fn criterion_4() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (file, color, n) in [
        ("figures/fig1.cert", Color::Red, 33),
        ("figures/fig2_red.cert", Color::Red, 33),
        ("figures/fig2_blue.cert", Color::Blue, 33),
        ("figures/fig3.cert", Color::Red, 22),
        ("figures/fig3.cert", Color::Blue, 23),
    ] {
        let f = load_certificate_file(data(file)).unwrap();
        let c = f.certificate(color).unwrap();
        let r = verify_certificate(c).unwrap();
        ok &= r.verdict.is_true() && r.points == n;
        parts.push(format!("{} {color} {}: {}", file.trim_start_matches("figures/"), r.points, r.verdict));
    }
    let fig1 = load_certificate_file(data("figures/fig1.cert")).unwrap();
    let cert = fig1.certificates[0].clone();
    let flipped = cert
        .config
        .points
        .iter()
        .filter(|p| {
            let mut c = cert.clone();
            c.config = c.config.without_point(&p.id);
            verify_certificate(&c).unwrap().verdict == Verdict::False
        })
        .count();
    ok &= flipped == 33;
    outcome(ok, format!("{}; anchor deletions flipping to False: {flipped}/33", parts.join(", ")))
}

fn criterion_5() -> Outcome {
    let grid = Grid { step: FALSIFY_STEP, angle_step: FALSIFY_ANGLE_STEP, ..Grid::default() };
    let mut ok = true;
    let mut clean = 0;
    for (file, colors) in [
        ("figures/fig1.cert", &[Color::Red][..]),
        ("figures/fig2_red.cert", &[Color::Red][..]),
        ("figures/fig2_blue.cert", &[Color::Blue][..]),
        ("figures/fig3.cert", &[Color::Red, Color::Blue][..]),
    ] {
        let f = load_certificate_file(data(file)).unwrap();
        assert!(verify_file(&f).unwrap().0.is_true());
        for &c in colors {
            let r = falsify(&f.config, c, grid);
            ok &= !r.found;
            clean += usize::from(!r.found);
        }
    }
    let fig1 = load_certificate_file(data("figures/fig1.cert")).unwrap();
    let target = ExactPoint::new(Exact::one(), edge_gap());
    let id = fig1.config.points.iter().find(|p| p.pos == target).unwrap().id.clone();
    let t = Instant::now();
    let r = falsify(&fig1.config.without_point(&id), Color::Red, grid);
    let elapsed = t.elapsed();
    ok &= r.found && elapsed < FALSIFY_LIMIT;
    let w = r.witness.map(|w| format!("({:.3}, {:.3}) at {:.0} deg", w.center.0, w.center.1, w.angle_degrees)).unwrap_or_default();
    outcome(
        ok,
        format!("{clean}/5 verified certificates clean at step {FALSIFY_STEP}, {FALSIFY_ANGLE_STEP} deg; without (1, sqrt(2)-1/2): witness {w} in {elapsed:.1?}"),
    )
}

fn near(vertices: &[(f64, f64)], want: (f64, f64)) -> Option<(f64, f64)> {
    vertices
        .iter()
        .copied()
        .find(|v| (v.0 - want.0).abs() <= REGION_TOL && (v.1 - want.1).abs() <= REGION_TOL)
}

fn criterion_6() -> Outcome {
    let container = ContainerSquare::new(Exact::from_int(5)).unwrap();
    let line = ResourceLine::vertical(edge_gap(), &container).unwrap();
    let radius = Exact::from_ratio(REGION_RADIUS.0, REGION_RADIUS.1);
    let cases = [
        (3, "5/2", ExactPoint::parse("3/2", "5/2").unwrap(), false, vec![(1.12, 2.45), (1.12, 2.55), (1.2, 2.4), (1.2, 2.6)]),
        (1, "9/10", ExactPoint::new(edge_gap(), Exact::one()), true, vec![(1.13, 0.56), (1.13, 1.24)]),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (row, y, target, keep, printed) in cases {
        let w = window_analysis(&line, 5, row).unwrap();
        let anchor = ExactPoint::parse("1/2", y).unwrap();
        let region = window_region(&line, &w, &anchor, keep.then_some(&target)).unwrap();
        let vertices: Vec<(f64, f64)> = feasible_midpoint_region(&region).vertices.iter().map(|v| v.point.mid()).collect();
        let disk = region_in_disk(&region, &target, &radius).unwrap();
        ok &= disk.verdict.is_true();
        for p in &printed {
            match near(&vertices, *p) {
                Some(v) => parts.push(format!("({}, {}) ~ ({:.4}, {:.4})", p.0, p.1, v.0, v.1)),
                None => {
                    ok = false;
                    let closest = vertices
                        .iter()
                        .min_by(|a, b| (a.0 - p.0).hypot(a.1 - p.1).total_cmp(&(b.0 - p.0).hypot(b.1 - p.1)))
                        .copied()
                        .unwrap_or((f64::NAN, f64::NAN));
                    parts.push(format!("({}, {}) MISSED, nearest ({:.4}, {:.4})", p.0, p.1, closest.0, closest.1));
                }
            }
        }
        parts.push(format!("row {row} disk: {}", disk.verdict));
    }
    outcome(ok, parts.join("; "))
}

fn criterion_7() -> Outcome {
    let mut sizes = vec![(22, 5), (33, 6)];
    sizes.extend((2..=6).map(|m| (m * m - 1, m)));
    let mut ok = true;
    let mut refuted = 0;
    for &(n, m) in &sizes {
        let p = trivial_packing(n, m).unwrap();
        ok &= validate_packing(&p).verdict.is_true();
        let mut overlap = p.clone();
        let c = p.squares[0].center;
        overlap.squares.push(Square::axis_aligned(c.x.mid() + 0.5, c.y.mid() + 0.25, 1.0));
        let mut protrude = p.clone();
        protrude.squares[0] = Square::axis_aligned(c.x.mid() - 0.1, c.y.mid(), 1.0);
        for bad in [overlap, protrude] {
            let v = validate_packing(&bad).verdict;
            ok &= v == Verdict::False;
            refuted += usize::from(v == Verdict::False);
        }
    }
    outcome(ok, format!("{} trivial packings True; {refuted}/{} injected overlaps and protrusions False", sizes.len(), 2 * sizes.len()))
}

fn random_interval(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> (Interval, Interval, f64) {
    let mut a = rng.gen_range(lo..hi);
    let mut b = rng.gen_range(lo..hi);
    if a > b {
        std::mem::swap(&mut a, &mut b);
    }
    let mut c = rng.gen_range(a..=b);
    let mut d = rng.gen_range(a..=b);
    if c > d {
        std::mem::swap(&mut c, &mut d);
    }
    let x = rng.gen_range(c..=d);
    (Interval::new(a, b), Interval::new(c, d), x)
}

fn within(inner: Interval, outer: Interval) -> bool {
    outer.lo() <= inner.lo() && inner.hi() <= outer.hi()
}

/// Inclusion isotonicity and point containment over random nested
/// intervals; returns the number of violations.
fn monotone_violations(cases: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for k in 0..cases {
        let (y1, x1, p1) = random_interval(&mut rng, -10.0, 10.0);
        let (y2, x2, p2) = random_interval(&mut rng, 0.5, 8.0);
        let (yt, xt, pt) = random_interval(&mut rng, -1.5, 1.5);
        let pt1 = Interval::point(p1);
        let pt2 = Interval::point(p2);
        let ok = match k % 8 {
            0 => within(x1 + x2, y1 + y2) && (pt1 + pt2).contains(p1 + p2) && within(pt1 + pt2, x1 + x2),
            1 => within(x1 - x2, y1 - y2) && (pt1 - pt2).contains(p1 - p2) && within(pt1 - pt2, x1 - x2),
            2 => within(x1 * x2, y1 * y2) && (pt1 * pt2).contains(p1 * p2) && within(pt1 * pt2, x1 * x2),
            3 => within(x1 / x2, y1 / y2) && (pt1 / pt2).contains(p1 / p2) && within(pt1 / pt2, x1 / x2),
            4 => within(x1.sqr(), y1.sqr()) && pt1.sqr().contains(p1 * p1) && within(pt1.sqr(), x1.sqr()),
            5 => {
                let (s, t) = (x2.sqrt().unwrap(), y2.sqrt().unwrap());
                within(s, t) && pt2.sqrt().unwrap().contains(p2.sqrt())
            }
            6 => {
                let (s, t, u) = (trig::sin(xt).unwrap(), trig::sin(yt).unwrap(), trig::sin(Interval::point(pt)).unwrap());
                within(s, t) && within(u, s)
            }
            _ => {
                let (s, t, u) = (trig::cos(xt).unwrap(), trig::cos(yt).unwrap(), trig::cos(Interval::point(pt)).unwrap());
                within(s, t) && within(u, s)
            }
        };
        bad += usize::from(!ok);
    }
    bad
}

fn criterion_8() -> Outcome {
    let violations = monotone_violations(MONOTONE_CASES, 0x5eed);

    let mut apps = 0;
    let mut mc_bad = 0;
    for (file, color) in [
        ("figures/fig1.cert", Color::Red),
        ("figures/fig2_blue.cert", Color::Blue),
        ("figures/fig3.cert", Color::Red),
        ("figures/fig3.cert", Color::Blue),
    ] {
        let f = load_certificate_file(data(file)).unwrap();
        let cert = f.certificate(color).unwrap();
        assert!(verify_certificate(cert).unwrap().verdict.is_true());
        for (i, app) in cert.applications.iter().enumerate() {
            let run = lemma_soundness(app, MC_SAMPLES, 1000 + i as u64);
            apps += 1;
            mc_bad += run.violations + u64::from(run.samples != MC_SAMPLES);
        }
    }

    let mut survived = Vec::new();
    for (script, m) in CURATED_MUTATIONS {
        if prove(script, &[m]).verdict.is_true() {
            survived.push(format!("{script} {m}"));
        }
    }
    outcome(
        violations == 0 && mc_bad == 0 && survived.is_empty(),
        format!(
            "monotonicity {violations}/{MONOTONE_CASES} violations; Monte-Carlo {mc_bad} violations over {apps} applications x {MC_SAMPLES}; \
             mutations failing {}/{}{}",
            CURATED_MUTATIONS.len() - survived.len(),
            CURATED_MUTATIONS.len(),
            if survived.is_empty() { String::new() } else { format!(" (survivors: {})", survived.join(", ")) }
        ),
    )
}

#[test]
fn acceptance_criteria() {
    let criteria: [(u32, &str, fn() -> Outcome); 8] = [
        (1, "end-to-end proofs and bounds", criterion_1),
        (2, "inequality audit", criterion_2),
        (3, "f-curve oracle equivalence", criterion_3),
        (4, "certificate suite and anchor deletions", criterion_4),
        (5, "falsifier cross-check", criterion_5),
        (6, "deficient-row region analysis", criterion_6),
        (7, "packing validation", criterion_7),
        (8, "property suites", criterion_8),
    ];
    let mut unexpected = Vec::new();
    for (n, name, run) in criteria {
        let t = Instant::now();
        let o = run();
        let known = KNOWN_RED.iter().find(|(k, _)| *k == n);
        // Straight to the stderr handle, so the lines show without `--nocapture`.
        let mut err = std::io::stderr().lock();
        let _ = writeln!(err, "criterion {n} [{}] {name}: {} ({:.1?})", if o.pass { "PASS" } else { "FAIL" }, o.detail, t.elapsed());
        if let (false, Some((_, why))) = (o.pass, known) {
            let _ = writeln!(err, "    known red: {why}");
        }
        if o.pass == known.is_some() {
            unexpected.push(n);
        }
    }
    assert!(unexpected.is_empty(), "criteria with unexpected outcome: {unexpected:?}");
}
