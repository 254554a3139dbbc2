use serde::Serialize;

use super::format::{Certificate, CertificateFile, Color, Configuration};
use crate::error::{Error, Result};
use crate::geometry::{polygons_cover_square, ContainerSquare, ConvexPolygon, ExactPoint, ExactSegment, PointSpec};
use crate::lemmas::{check_lemma, LemmaKind};
use crate::numerics::{Exact, Verdict};
use crate::report::{first_failure, verdict_of, CheckRecord};

#[derive(Clone, Debug, Serialize)]
pub struct RegionReport {
    pub index: usize,
    pub kind: LemmaKind,
    pub verdict: Verdict,
    pub checks: Vec<CheckRecord>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverageSummary {
    pub verdict: Verdict,
    pub cells_checked: usize,
    pub uncovered: Option<PointSpec>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub color: Color,
    pub points: usize,
    pub container: String,
    pub verdict: Verdict,
    pub config_checks: Vec<CheckRecord>,
    pub coverage: CoverageSummary,
    pub regions: Vec<RegionReport>,
    /// Name of the first failing sub-check, when not True.
    pub failure: Option<String>,
    pub conclusion: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountBound {
    pub points: usize,
    pub side: String,
    pub claim: String,
    /// The bound says nothing about the intended packing size.
    pub vacuous: bool,
}

/// Closed segment lies on one side of the container.
fn on_boundary(seg: &ExactSegment, c: &ContainerSquare) -> bool {
    let zero = Exact::zero();
    let side = &c.side;
    let in_range = |v: &Exact| !v.is_negative() && v <= side;
    let pts = [&seg.a, &seg.b];
    if !pts.iter().all(|p| in_range(&p.x) && in_range(&p.y)) {
        return false;
    }
    pts.iter().all(|p| p.x == zero)
        || pts.iter().all(|p| &p.x == side)
        || pts.iter().all(|p| p.y == zero)
        || pts.iter().all(|p| &p.y == side)
}

fn strictly_inside(p: &ExactPoint, c: &ContainerSquare) -> bool {
    p.x.is_positive() && p.y.is_positive() && p.x < c.side && p.y < c.side
}

pub fn config_checks(config: &Configuration) -> Vec<CheckRecord> {
    let mut checks = Vec::new();
    let outside: Vec<&str> = config
        .points
        .iter()
        .filter(|p| !strictly_inside(&p.pos, &config.container))
        .map(|p| p.id.as_str())
        .collect();
    checks.push(CheckRecord::fact(
        if outside.is_empty() {
            "all points strictly inside the container".to_string()
        } else {
            format!("points outside the open container: {}", outside.join(", "))
        },
        outside.is_empty(),
    ));
    checks
}

pub fn verify_certificate(cert: &Certificate) -> Result<CertificateReport> {
    let config = &cert.config;
    let container = &config.container;
    let config_checks = config_checks(config);
    let colour_points: Vec<&ExactPoint> = config.of_color(cert.color).map(|p| &p.pos).collect();

    let mut regions = Vec::with_capacity(cert.applications.len());
    for (index, app) in cert.applications.iter().enumerate() {
        if !app.kind.is_region_lemma() {
            return Err(Error::Invalid(format!("application {index}: {} cannot cover a region", app.kind)));
        }
        let lemma = check_lemma(app)?;
        let mut checks = lemma.checks;
        for (k, anchor) in app.anchors.iter().enumerate() {
            let ok = colour_points.contains(&anchor);
            checks.push(CheckRecord::fact(
                format!("anchor {k} is a {} config point", cert.color),
                ok,
            ));
        }
        for (k, e) in app.escapes.iter().enumerate() {
            checks.push(CheckRecord::fact(format!("escape {k} on container boundary"), on_boundary(e, container)));
        }
        regions.push(RegionReport { index, kind: app.kind, verdict: verdict_of(&checks), checks, notes: lemma.notes });
    }

    let polys: Vec<ConvexPolygon> = cert.applications.iter().map(|a| a.region.clone()).collect();
    let cov = polygons_cover_square(&polys, container);
    let coverage = CoverageSummary {
        verdict: cov.verdict,
        cells_checked: cov.cells_checked,
        uncovered: cov.uncovered.as_ref().map(PointSpec::from_exact),
    };

    let verdict = verdict_of(&config_checks)
        .and(coverage.verdict)
        .and(Verdict::all(regions.iter().map(|r| r.verdict)));
    let failure = if verdict.is_true() {
        None
    } else if let Some(c) = first_failure(&config_checks) {
        Some(c.label.clone())
    } else if !coverage.verdict.is_true() {
        Some(match &coverage.uncovered {
            Some(p) => format!("coverage: ({}, {}) is in no region", p.0, p.1),
            None => "coverage".to_string(),
        })
    } else {
        regions.iter().find(|r| r.verdict != Verdict::True).map(|r| {
            let what = first_failure(&r.checks).map(|c| c.label.clone()).unwrap_or_default();
            format!("region {} ({}): {}", r.index, r.kind, what)
        })
    };
    let points = colour_points.len();
    let side = container.side.to_expr_string();
    let conclusion = verdict
        .is_true()
        .then(|| format!("at most {points} boxes fit in [0,{side}]^2, so s({}) >= {side}", points + 1));
    Ok(CertificateReport {
        color: cert.color,
        points,
        container: side,
        verdict,
        config_checks,
        coverage,
        regions,
        failure,
        conclusion,
    })
}

/// All certificates in a file; the verdict is their conjunction.
pub fn verify_file(file: &CertificateFile) -> Result<(Verdict, Vec<CertificateReport>)> {
    let reports = file.certificates.iter().map(verify_certificate).collect::<Result<Vec<_>>>()?;
    let v = Verdict::all(reports.iter().map(|r| r.verdict));
    Ok((v, reports))
}

/// The packing bound carried by a verified certificate. `target` is the
/// packing size the argument is about.
pub fn count_bound(report: &CertificateReport, target: Option<usize>) -> Result<CountBound> {
    if !report.verdict.is_true() {
        return Err(Error::Invalid("count_bound needs a verified certificate".into()));
    }
    let t = report.points;
    Ok(CountBound {
        points: t,
        side: report.container.clone(),
        claim: format!("s({}) >= {}", t + 1, report.container),
        vacuous: target.is_some_and(|n| t > n),
    })
}
