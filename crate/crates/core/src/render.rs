//! Static SVG drawings of certificates and of the midpoint regions of a
//! replayed proof.

use std::fmt::Write as _;

use serde_json::Value;

use crate::certificates::{CertificateFile, Color};
use crate::error::{Error, Result};
use crate::lemmas::LemmaKind;
use crate::proofs::{ProofReport, StepReport};

fn fill(kind: LemmaKind) -> &'static str {
    match kind {
        LemmaKind::Triangle => "#f4e3b5",
        LemmaKind::RectEdge => "#cfe3c8",
        LemmaKind::QuadEdge => "#c8d8ee",
        LemmaKind::QuadEdgeSmallA => "#e6cde6",
        _ => "#dddddd",
    }
}

fn stroke(c: Color) -> &'static str {
    match c {
        Color::Red => "#c0392b",
        Color::Blue => "#2559a8",
    }
}

/// The configuration of `file` over `[0, side]^2`, with the regions of
/// the certificate for `color` (the first certificate if `None`).
pub fn certificate_svg(file: &CertificateFile, color: Option<Color>) -> String {
    let side = file.config.container.side.to_f64();
    let s = 80.0;
    let pad = 20.0;
    let w = side * s + 2.0 * pad;
    let px = |x: f64| pad + x * s;
    let py = |y: f64| pad + (side - y) * s;
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{w:.0}" viewBox="0 0 {w:.0} {w:.0}">"#);
    let _ = writeln!(out, r#"<title>{}</title>"#, file.name);
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{w:.0}" height="{w:.0}" fill="#ffffff"/>"##);
    let cert = match color {
        Some(c) => file.certificate(c),
        None => file.certificates.first(),
    };
    if let Some(cert) = cert {
        for app in &cert.applications {
            let pts: Vec<String> = app
                .region
                .vertices()
                .iter()
                .map(|v| {
                    let (x, y) = v.to_f64();
                    format!("{:.2},{:.2}", px(x), py(y))
                })
                .collect();
            let _ = writeln!(
                out,
                r##"<polygon points="{}" fill="{}" stroke="#777777" stroke-width="0.6"/>"##,
                pts.join(" "),
                fill(app.kind)
            );
        }
    }
    let _ = writeln!(
        out,
        r##"<rect x="{pad}" y="{pad}" width="{:.2}" height="{:.2}" fill="none" stroke="#000000" stroke-width="1.5"/>"##,
        side * s,
        side * s
    );
    for p in &file.config.points {
        let (x, y) = p.pos.to_f64();
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="{}"><title>{} ({x:.4}, {y:.4})</title></circle>"#,
            px(x),
            py(y),
            stroke(p.color),
            p.id
        );
    }
    out.push_str("</svg>\n");
    out
}

struct Panel {
    title: String,
    geometry: Value,
    vertices: Vec<(f64, f64)>,
}

fn collect_panels(steps: &[StepReport], prefix: &str, out: &mut Vec<Panel>) {
    for s in steps {
        if s.op == "midpoint_region" {
            if let Some(g) = s.details.get("geometry") {
                let vertices = s
                    .details
                    .get("vertices")
                    .and_then(Value::as_array)
                    .map(|vs| {
                        vs.iter()
                            .filter_map(|v| {
                                let p = v.get("point")?.as_array()?;
                                Some((p.first()?.as_f64()?, p.get(1)?.as_f64()?))
                            })
                            .collect()
                    })
                    .unwrap_or_default();
                out.push(Panel { title: format!("{prefix}{}", s.id), geometry: g.clone(), vertices });
            }
        }
        for c in &s.cases {
            collect_panels(&c.steps, &format!("{prefix}{}: ", c.name), out);
        }
    }
}

fn pair(v: &Value) -> Option<(f64, f64)> {
    let a = v.as_array()?;
    Some((a.first()?.as_f64()?, a.get(1)?.as_f64()?))
}

fn num(g: &Value, key: &str) -> Result<f64> {
    g.get(key).and_then(Value::as_f64).ok_or_else(|| Error::Invalid(format!("region geometry lacks {key}")))
}

fn point(g: &Value, key: &str) -> Result<(f64, f64)> {
    g.get(key).and_then(pair).ok_or_else(|| Error::Invalid(format!("region geometry lacks {key}")))
}

/// One panel per midpoint-region step: the admissible centres shaded, the
/// line, the denied points in green and the disk about the target.
pub fn regions_svg(report: &ProofReport) -> Result<String> {
    let mut panels = Vec::new();
    collect_panels(&report.steps, "", &mut panels);
    if panels.is_empty() {
        return Err(Error::Invalid(format!("proof {} has no midpoint-region steps to draw", report.name)));
    }
    let s = 220.0;
    let (vw, vh) = (2.0, 2.0);
    let pw = vw * s;
    let ph = vh * s + 30.0;
    let total_w = pw * panels.len() as f64;
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total_w:.0}" height="{ph:.0}" viewBox="0 0 {total_w:.0} {ph:.0}">"#);
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{total_w:.0}" height="{ph:.0}" fill="#ffffff"/>"##);
    for (i, p) in panels.iter().enumerate() {
        let g = &p.geometry;
        let anchor = point(g, "anchor")?;
        let target = point(g, "target")?;
        let line_x = num(g, "line_x")?;
        let edge_x = num(g, "edge_x")?;
        let reach = num(g, "reach")?;
        let radius = num(g, "radius")?;
        let x0 = 0.0;
        let y0 = anchor.1 - vh / 2.0;
        let ox = i as f64 * pw;
        let px = |x: f64| ox + (x - x0) * s;
        let py = |y: f64| 30.0 + (y0 + vh - y) * s;
        let _ = writeln!(out, r#"<g id="panel{i}">"#);
        let _ = writeln!(out, r#"<text x="{:.1}" y="20" font-family="sans-serif" font-size="13">{}</text>"#, ox + 8.0, p.title);
        let _ = writeln!(out, r#"<clipPath id="view{i}"><rect x="{ox:.1}" y="30" width="{pw:.1}" height="{:.1}"/></clipPath>"#, vh * s);
        let _ = writeln!(out, r#"<mask id="region{i}">"#);
        let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="white"/>"#, px(anchor.0), py(anchor.1), reach * s);
        let _ = writeln!(out, r#"<rect x="{ox:.1}" y="0" width="{:.2}" height="{ph:.0}" fill="black"/>"#, px(edge_x) - ox);
        for e in g.get("excluded").and_then(Value::as_array).into_iter().flatten().filter_map(pair) {
            let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="black"/>"#, px(e.0), py(e.1), 0.5 * s);
        }
        out.push_str("</mask>\n");
        let _ = writeln!(out, r#"<g clip-path="url(#view{i})">"#);
        let _ = writeln!(out, r##"<rect x="{ox:.1}" y="30" width="{pw:.1}" height="{:.1}" fill="#9aa7b8" mask="url(#region{i})"/>"##, vh * s);
        let _ = writeln!(out, r##"<line x1="{0:.2}" y1="30" x2="{0:.2}" y2="{ph:.0}" stroke="#000000" stroke-width="1.2"/>"##, px(line_x));
        let _ = writeln!(
            out,
            r##"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none" stroke="#000000" stroke-dasharray="5,3"/>"##,
            px(target.0),
            py(target.1),
            radius * s
        );
        for d in g.get("denied").and_then(Value::as_array).into_iter().flatten().filter_map(pair) {
            let _ = writeln!(out, r##"<circle cx="{:.2}" cy="{:.2}" r="4" fill="#2e9e44"/>"##, px(d.0), py(d.1));
        }
        for v in &p.vertices {
            let _ = writeln!(
                out,
                r##"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="#000000"><title>({:.4}, {:.4})</title></circle>"##,
                px(v.0),
                py(v.1),
                v.0,
                v.1
            );
        }
        let _ = writeln!(out, r##"<circle cx="{:.2}" cy="{:.2}" r="4" fill="#2559a8"/>"##, px(anchor.0), py(anchor.1));
        let _ = writeln!(out, r##"<circle cx="{:.2}" cy="{:.2}" r="3" fill="#000000"/>"##, px(target.0), py(target.1));
        out.push_str("</g>\n</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::figures::fig3;

    #[test]
    fn figure3_draws_all_points() {
        let svg = certificate_svg(&fig3().unwrap(), Some(Color::Red));
        assert_eq!(svg.matches("<circle").count(), 45);
        assert_eq!(svg.matches("<polygon").count(), 46);
        assert!(svg.contains(r#"cx="60.00" cy="348.00""#), "point (0.5, 0.9)");
    }
}
