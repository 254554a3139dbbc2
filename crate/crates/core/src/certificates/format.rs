//! On-disk certificate files (JSON, constants as grammar strings).

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ContainerSquare, ConvexPolygon, ExactPoint, ExactSegment, PointSpec};
use crate::lemmas::{AnchorReading, Frame, LemmaApplication, LemmaKind, Params};
use crate::numerics::expr::exact_constant;
use crate::numerics::Exact;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConfigPoint {
    pub id: String,
    pub pos: ExactPoint,
    pub color: Color,
    /// Row index from the bottom, starting at 1.
    pub row: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    pub container: ContainerSquare,
    pub points: Vec<ConfigPoint>,
}

impl Configuration {
    pub fn of_color(&self, color: Color) -> impl Iterator<Item = &ConfigPoint> {
        self.points.iter().filter(move |p| p.color == color)
    }

    pub fn count(&self, color: Color) -> usize {
        self.of_color(color).count()
    }

    pub fn find(&self, id: &str) -> Option<&ConfigPoint> {
        self.points.iter().find(|p| p.id == id)
    }

    /// Rows of one colour, bottom to top, each sorted by x.
    pub fn rows(&self, color: Color) -> Vec<Vec<&ConfigPoint>> {
        let n = self.of_color(color).filter_map(|p| p.row).max().unwrap_or(0);
        let mut rows: Vec<Vec<&ConfigPoint>> = vec![Vec::new(); n];
        for p in self.of_color(color) {
            if let Some(r) = p.row {
                rows[r - 1].push(p);
            }
        }
        for r in &mut rows {
            r.sort_by(|a, b| a.pos.x.cmp(&b.pos.x));
        }
        rows
    }

    pub fn without_point(&self, id: &str) -> Configuration {
        Configuration {
            container: self.container.clone(),
            points: self.points.iter().filter(|p| p.id != id).cloned().collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub config: Configuration,
    pub color: Color,
    pub applications: Vec<LemmaApplication>,
}

/// A file: one configuration and one certificate per certified colour.
#[derive(Clone, Debug)]
pub struct CertificateFile {
    pub name: String,
    /// Packing size the file is meant to bound, if any.
    pub target: Option<usize>,
    pub config: Configuration,
    pub certificates: Vec<Certificate>,
}

impl CertificateFile {
    pub fn certificate(&self, color: Color) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.color == color)
    }

    pub fn with_config(&self, config: Configuration) -> CertificateFile {
        CertificateFile {
            config: config.clone(),
            certificates: self
                .certificates
                .iter()
                .map(|c| Certificate { config: config.clone(), ..c.clone() })
                .collect(),
            ..self.clone()
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileSpec {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<usize>,
    container: String,
    points: Vec<PointEntry>,
    certificates: Vec<SectionSpec>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointEntry {
    id: String,
    x: String,
    y: String,
    color: Color,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    row: Option<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SectionSpec {
    color: Color,
    applications: Vec<ApplicationSpec>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct ApplicationSpec {
    kind: LemmaKind,
    region: Vec<PointSpec>,
    anchors: Vec<PointSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    escapes: Vec<Vec<PointSpec>>,
    #[serde(default, skip_serializing_if = "ParamsSpec::is_empty")]
    params: ParamsSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    frame: Option<FrameSpec>,
    #[serde(default, skip_serializing_if = "is_default_reading")]
    reading: AnchorReading,
}

fn is_default_reading(r: &AnchorReading) -> bool {
    *r == AnchorReading::Corners
}

#[derive(Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<String>,
}

impl ParamsSpec {
    fn is_empty(&self) -> bool {
        self.a.is_none() && self.b.is_none()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FrameSpec {
    matrix: [[i64; 2]; 2],
    offset: [String; 2],
}

fn parse_points(specs: &[PointSpec]) -> Result<Vec<ExactPoint>> {
    specs.iter().map(PointSpec::resolve).collect()
}

fn opt_constant(s: &Option<String>) -> Result<Option<Exact>> {
    s.as_deref().map(exact_constant).transpose()
}

impl ApplicationSpec {
    pub(crate) fn resolve(&self) -> Result<LemmaApplication> {
        let region = ConvexPolygon::new(parse_points(&self.region)?)?;
        let anchors = parse_points(&self.anchors)?;
        let escapes = self
            .escapes
            .iter()
            .map(|e| match e.as_slice() {
                [p] => {
                    let p = p.resolve()?;
                    Ok(ExactSegment::new(p.clone(), p))
                }
                [p, q] => Ok(ExactSegment::new(p.resolve()?, q.resolve()?)),
                _ => Err(Error::Parse("an escape is one point or two endpoints".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        let params = Params { a: opt_constant(&self.params.a)?, b: opt_constant(&self.params.b)? };
        let frame = match &self.frame {
            None => Frame::identity(),
            Some(f) => Frame::new(f.matrix, [exact_constant(&f.offset[0])?, exact_constant(&f.offset[1])?]),
        };
        Ok(LemmaApplication { kind: self.kind, region, anchors, escapes, params, frame, reading: self.reading })
    }

    pub(crate) fn from_application(app: &LemmaApplication) -> ApplicationSpec {
        let pts = |v: &[ExactPoint]| v.iter().map(PointSpec::from_exact).collect::<Vec<_>>();
        let frame = if app.frame == Frame::identity() {
            None
        } else {
            let m = &app.frame.matrix;
            let int = |e: &Exact| e.as_rational().map(|q| q.to_integer().try_into().unwrap_or(0)).unwrap_or(0);
            Some(FrameSpec {
                matrix: [[int(&m[0][0]), int(&m[0][1])], [int(&m[1][0]), int(&m[1][1])]],
                offset: [app.frame.offset[0].to_expr_string(), app.frame.offset[1].to_expr_string()],
            })
        };
        ApplicationSpec {
            kind: app.kind,
            region: pts(app.region.vertices()),
            anchors: pts(&app.anchors),
            escapes: app
                .escapes
                .iter()
                .map(|e| if e.is_degenerate() { pts(&[e.a.clone()]) } else { pts(&[e.a.clone(), e.b.clone()]) })
                .collect(),
            params: ParamsSpec {
                a: app.params.a.as_ref().map(Exact::to_expr_string),
                b: app.params.b.as_ref().map(Exact::to_expr_string),
            },
            frame,
            reading: app.reading,
        }
    }
}

fn ctx<T>(r: Result<T>, what: impl Fn() -> String) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", what())),
        Error::Invalid(m) => Error::Parse(format!("{}: {m}", what())),
        other => other,
    })
}

pub fn parse_certificate_file(text: &str) -> Result<CertificateFile> {
    let spec: FileSpec = serde_json::from_str(text).map_err(|e| Error::Parse(format!("certificate: {e}")))?;
    let container = ctx(exact_constant(&spec.container).and_then(ContainerSquare::new), || "container".into())?;
    let mut points = Vec::with_capacity(spec.points.len());
    for p in &spec.points {
        let pos = ctx(ExactPoint::parse(&p.x, &p.y), || format!("point {}", p.id))?;
        if points.iter().any(|q: &ConfigPoint| q.id == p.id) {
            return Err(Error::Parse(format!("duplicate point id {}", p.id)));
        }
        points.push(ConfigPoint { id: p.id.clone(), pos, color: p.color, row: p.row });
    }
    let config = Configuration { container, points };
    let mut certificates = Vec::new();
    for s in &spec.certificates {
        let mut applications = Vec::with_capacity(s.applications.len());
        for (i, a) in s.applications.iter().enumerate() {
            applications.push(ctx(a.resolve(), || format!("{} application {i}", s.color))?);
        }
        certificates.push(Certificate { config: config.clone(), color: s.color, applications });
    }
    Ok(CertificateFile { name: spec.name, target: spec.target, config, certificates })
}

pub fn load_certificate_file(path: impl AsRef<Path>) -> Result<CertificateFile> {
    parse_certificate_file(&std::fs::read_to_string(path)?)
}

pub fn certificate_file_to_json(file: &CertificateFile) -> String {
    let spec = FileSpec {
        name: file.name.clone(),
        target: file.target,
        container: file.config.container.side.to_expr_string(),
        points: file
            .config
            .points
            .iter()
            .map(|p| PointEntry {
                id: p.id.clone(),
                x: p.pos.x.to_expr_string(),
                y: p.pos.y.to_expr_string(),
                color: p.color,
                row: p.row,
            })
            .collect(),
        certificates: file
            .certificates
            .iter()
            .map(|c| SectionSpec {
                color: c.color,
                applications: c.applications.iter().map(ApplicationSpec::from_application).collect(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&spec).expect("certificate serialises");
    out.push('\n');
    out
}
