//! Proof scripts: an ordered list of steps over shipped data files.
//!
//! String values beginning with `$` name an entry of the script's
//! `constants` table; everything else is a constant expression.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::certificates::Color;
use crate::error::{Error, Result};
use crate::numerics::expr::exact_constant;
use crate::numerics::Exact;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Theorem {
    /// Number of boxes assumed packed.
    pub n: usize,
    /// Side of the container.
    pub side: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofScript {
    pub name: String,
    pub theorem: Theorem,
    #[serde(default)]
    pub constants: BTreeMap<String, String>,
    pub steps: Vec<Step>,
    /// Printed when every step holds.
    pub conclusion: String,
    #[serde(skip)]
    pub base_dir: PathBuf,
    #[serde(skip)]
    pub mutations: Vec<Mutation>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowMove {
    pub row: usize,
    /// Horizontal shift to the left and back; omitted for a slide only.
    #[serde(default)]
    pub shift: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaybeExceptional {
    pub rows: Vec<usize>,
    pub x_at_least: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssumeBasis {
    /// The colour has exactly `n` points, so each box holds exactly one.
    OnePerBox,
    /// The colour has `n + 1` points: one uncovered, or one box with two
    /// points closer than the box diagonal.
    OneException,
    /// Recorded without a check.
    Trusted,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Target {
    /// `denied` (a point the box cannot cover) or `point` (a lone point of
    /// the anchor's colour).
    pub kind: String,
    pub at: (String, String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Case {
    pub name: String,
    pub assumption: String,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Step {
    /// Load and verify one colour's certificate from a file.
    Certificate { id: String, file: String, color: Color },
    /// The image certificate's points are the source's reflected in
    /// `y = at` (axis `y`) or `x = at` (axis `x`).
    MirrorCheck { id: String, source: String, image: String, axis: String, at: String },
    Assume { id: String, certificate: String, basis: AssumeBasis, statement: String },
    /// Invariance under `x -> side - x`, and the normalisation that the
    /// exceptional points avoid `x < below`.
    Symmetry { id: String, certificates: Vec<String>, exception: String, below: String, above: String },
    Audit { id: String, items: Vec<String> },
    Movement {
        id: String,
        certificate: String,
        #[serde(default)]
        compress: bool,
        moves: Vec<RowMove>,
        slide_to: String,
        #[serde(default)]
        maybe_exceptional: Option<MaybeExceptional>,
    },
    Merge { id: String, inputs: Vec<String> },
    LineResource { id: String, merge: String, line_x: String, capacity: String, distinct_color: Color },
    CaseSplit { id: String, statement: String, cases: Vec<Case> },
    MidpointRegion {
        id: String,
        resource: String,
        merge: String,
        row: usize,
        anchor: (String, String),
        target: Target,
        radius: String,
        #[serde(default)]
        normalization: Option<String>,
    },
}

impl Step {
    pub fn id(&self) -> &str {
        match self {
            Step::Certificate { id, .. }
            | Step::MirrorCheck { id, .. }
            | Step::Assume { id, .. }
            | Step::Symmetry { id, .. }
            | Step::Audit { id, .. }
            | Step::Movement { id, .. }
            | Step::Merge { id, .. }
            | Step::LineResource { id, .. }
            | Step::CaseSplit { id, .. }
            | Step::MidpointRegion { id, .. } => id,
        }
    }

    pub fn op(&self) -> &'static str {
        match self {
            Step::Certificate { .. } => "certificate",
            Step::MirrorCheck { .. } => "mirror_check",
            Step::Assume { .. } => "assume",
            Step::Symmetry { .. } => "symmetry",
            Step::Audit { .. } => "audit",
            Step::Movement { .. } => "movement",
            Step::Merge { .. } => "merge",
            Step::LineResource { .. } => "line_resource",
            Step::CaseSplit { .. } => "case_split",
            Step::MidpointRegion { .. } => "midpoint_region",
        }
    }
}

/// A `--mutate key=value` override.
#[derive(Clone, Debug, PartialEq)]
pub enum Mutation {
    /// Replaces a named constant.
    Constant { name: String, value: String },
    /// Sets the `y` of every point in row `row` of a certificate step's
    /// file.
    RowY { step: String, row: usize, value: String },
    /// Sets one coordinate of one point of a certificate step's file.
    Point { step: String, point: String, coord: char, value: String },
}

impl Mutation {
    /// `name=v`, `step.row<k>.y=v` or `step.point.<id>.<x|y>=v`.
    pub fn parse(spec: &str) -> Result<Mutation> {
        let (key, value) = spec
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("mutation {spec:?} is not key=value")))?;
        let value = value.trim().to_string();
        exact_constant(&value)?;
        let key = key.trim();
        if let Some((step, rest)) = key.split_once(".point.") {
            let (point, coord) = rest
                .rsplit_once('.')
                .ok_or_else(|| Error::Parse(format!("mutation {key:?}: expected .x or .y")))?;
            let coord = match coord {
                "x" => 'x',
                "y" => 'y',
                _ => return Err(Error::Parse(format!("mutation {key:?}: expected .x or .y"))),
            };
            return Ok(Mutation::Point { step: step.into(), point: point.into(), coord, value });
        }
        if let Some((step, rest)) = key.split_once(".row") {
            let row = rest
                .strip_suffix(".y")
                .and_then(|r| r.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("mutation {key:?}: expected step.row<k>.y")))?;
            return Ok(Mutation::RowY { step: step.into(), row, value });
        }
        if key.is_empty() || key.contains('.') {
            return Err(Error::Parse(format!("mutation key {key:?} not recognised")));
        }
        Ok(Mutation::Constant { name: key.into(), value })
    }
}

impl std::fmt::Display for Mutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mutation::Constant { name, value } => write!(f, "{name}={value}"),
            Mutation::RowY { step, row, value } => write!(f, "{step}.row{row}.y={value}"),
            Mutation::Point { step, point, coord, value } => write!(f, "{step}.point.{point}.{coord}={value}"),
        }
    }
}

impl ProofScript {
    /// Resolves `$name` references and constant expressions.
    pub fn value(&self, s: &str) -> Result<Exact> {
        match s.strip_prefix('$') {
            Some(name) => {
                let v = self
                    .constants
                    .get(name)
                    .ok_or_else(|| Error::Invalid(format!("unknown constant ${name}")))?;
                exact_constant(v)
            }
            None => exact_constant(s),
        }
    }

    pub fn path(&self, file: &str) -> PathBuf {
        self.base_dir.join(file)
    }

    /// Applies mutations; constants must exist and certificate mutations
    /// must name a certificate step.
    pub fn apply_mutations(&mut self, muts: &[Mutation]) -> Result<()> {
        let mut cert_steps = Vec::new();
        collect_certificate_ids(&self.steps, &mut cert_steps);
        for m in muts {
            match m {
                Mutation::Constant { name, value } => {
                    let slot = self
                        .constants
                        .get_mut(name)
                        .ok_or_else(|| Error::Parse(format!("mutation names unknown constant {name:?}")))?;
                    *slot = value.clone();
                    self.mutations.push(m.clone());
                }
                Mutation::RowY { step, .. } | Mutation::Point { step, .. } => {
                    if !cert_steps.iter().any(|s| s == step) {
                        return Err(Error::Parse(format!("mutation names unknown certificate step {step:?}")));
                    }
                    self.mutations.push(m.clone());
                }
            }
        }
        Ok(())
    }
}

fn collect_certificate_ids(steps: &[Step], out: &mut Vec<String>) {
    for s in steps {
        match s {
            Step::Certificate { id, .. } => out.push(id.clone()),
            Step::CaseSplit { cases, .. } => cases.iter().for_each(|c| collect_certificate_ids(&c.steps, out)),
            _ => {}
        }
    }
}

pub fn parse_script(text: &str, base_dir: &Path) -> Result<ProofScript> {
    let mut s: ProofScript = serde_json::from_str(text).map_err(|e| Error::Parse(format!("proof script: {e}")))?;
    s.base_dir = base_dir.to_path_buf();
    for (k, v) in &s.constants {
        exact_constant(v).map_err(|e| Error::Parse(format!("constant {k}: {e}")))?;
    }
    let mut ids = Vec::new();
    collect_ids(&s.steps, &mut ids);
    let mut sorted = ids.clone();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Parse(format!("duplicate step id {:?}", w[0])));
    }
    Ok(s)
}

fn collect_ids(steps: &[Step], out: &mut Vec<String>) {
    for s in steps {
        out.push(s.id().to_string());
        if let Step::CaseSplit { cases, .. } = s {
            cases.iter().for_each(|c| collect_ids(&c.steps, out));
        }
    }
}

pub fn load_script(path: impl AsRef<Path>) -> Result<ProofScript> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_script(&text, path.parent().unwrap_or(Path::new(".")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutation_keys() {
        assert_eq!(
            Mutation::parse("line-capacity=7").unwrap(),
            Mutation::Constant { name: "line-capacity".into(), value: "7".into() }
        );
        assert_eq!(
            Mutation::parse("fig3-red.row1.y=0.95").unwrap(),
            Mutation::RowY { step: "fig3-red".into(), row: 1, value: "0.95".into() }
        );
        assert_eq!(
            Mutation::parse("red.point.r1.1.x=1.05").unwrap(),
            Mutation::Point { step: "red".into(), point: "r1.1".into(), coord: 'x', value: "1.05".into() }
        );
        assert!(Mutation::parse("nothing").is_err());
        assert!(Mutation::parse("a=sqrt(").is_err());
    }
}
