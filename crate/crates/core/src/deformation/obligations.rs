//! Single-box coverage obligations and their consolidation.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::certificates::Color;
use crate::error::{Error, Result};
use crate::geometry::{orientation, ExactPoint, ExactSegment, PointSpec};

/// Obligations in one class lie in the box of one base point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ObligationClass {
    pub color: Color,
    pub base: String,
}

/// The swept path of one point: it lies entirely in one box, or entirely
/// outside every box.
#[derive(Clone, Debug, Serialize)]
pub struct CoverageObligation {
    #[serde(serialize_with = "ser_path")]
    pub path: Vec<ExactPoint>,
    pub class: ObligationClass,
    /// The base point is known to be in a box with no other point of its
    /// colour.
    pub alone: bool,
    pub source: String,
}

fn ser_path<S: serde::Serializer>(path: &[ExactPoint], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(path.len()))?;
    for p in path {
        seq.serialize_element(&PointSpec::from_exact(p))?;
    }
    seq.end()
}

impl CoverageObligation {
    pub fn segments(&self) -> Vec<ExactSegment> {
        if self.path.len() == 1 {
            return vec![ExactSegment::new(self.path[0].clone(), self.path[0].clone())];
        }
        self.path.windows(2).map(|w| ExactSegment::new(w[0].clone(), w[1].clone())).collect()
    }
}

/// Obligations known to share one box.
#[derive(Clone, Debug, Serialize)]
pub struct ObligationGroup {
    pub classes: Vec<ObligationClass>,
    /// Classes whose base point is alone in its box.
    pub alone: Vec<ObligationClass>,
    /// Union of the swept shapes, collinear overlaps merged.
    #[serde(serialize_with = "ser_segments")]
    pub shapes: Vec<ExactSegment>,
}

fn ser_segments<S: serde::Serializer>(segs: &[ExactSegment], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(segs.len()))?;
    for g in segs {
        seq.serialize_element(&(PointSpec::from_exact(&g.a), PointSpec::from_exact(&g.b)))?;
    }
    seq.end()
}

impl ObligationGroup {
    /// The box of `self` differs from the box of `other`: both hold a
    /// lone point of one colour, at different base points.
    pub fn distinct_from(&self, other: &ObligationGroup) -> bool {
        self.alone.iter().any(|a| other.alone.iter().any(|b| a.color == b.color && a.base != b.base))
    }

    /// Some lone class of the given colour; its box is then a real box.
    pub fn lone(&self, color: Color) -> Option<&ObligationClass> {
        self.alone.iter().find(|c| c.color == color)
    }

    pub fn contains(&self, p: &ExactPoint) -> bool {
        self.shapes.iter().any(|s| s.contains(p))
    }
}

fn segments_meet(s: &ExactSegment, t: &ExactSegment) -> bool {
    if s.is_degenerate() {
        return t.contains(&s.a);
    }
    if t.is_degenerate() {
        return s.contains(&t.a);
    }
    let d1 = orientation(&s.a, &s.b, &t.a);
    let d2 = orientation(&s.a, &s.b, &t.b);
    let d3 = orientation(&t.a, &t.b, &s.a);
    let d4 = orientation(&t.a, &t.b, &s.b);
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    s.contains(&t.a) || s.contains(&t.b) || t.contains(&s.a) || t.contains(&s.b)
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    let mut j = i;
    while parent[j] != r {
        let next = parent[j];
        parent[j] = r;
        j = next;
    }
    r
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Merges collinear overlapping segments and drops points lying on others.
fn consolidate(mut segs: Vec<ExactSegment>) -> Vec<ExactSegment> {
    loop {
        let mut merged = false;
        'outer: for i in 0..segs.len() {
            for j in 0..segs.len() {
                if i == j {
                    continue;
                }
                let (s, t) = (&segs[i], &segs[j]);
                if t.is_degenerate() && s.contains(&t.a) {
                    segs.remove(j);
                    merged = true;
                    break 'outer;
                }
                if s.is_degenerate() || t.is_degenerate() {
                    continue;
                }
                let collinear = orientation(&s.a, &s.b, &t.a) == 0 && orientation(&s.a, &s.b, &t.b) == 0;
                if collinear && (s.contains(&t.a) || s.contains(&t.b) || t.contains(&s.a)) {
                    let mut pts = vec![s.a.clone(), s.b.clone(), t.a.clone(), t.b.clone()];
                    pts.sort_by(|p, q| p.lex_cmp(q));
                    let joined = ExactSegment::new(pts[0].clone(), pts[3].clone());
                    let (hi, lo) = (i.max(j), i.min(j));
                    segs.remove(hi);
                    segs.remove(lo);
                    segs.push(joined);
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            break;
        }
    }
    segs.sort_by(|s, t| s.a.lex_cmp(&t.a).then(s.b.lex_cmp(&t.b)));
    segs.dedup();
    segs
}

/// Groups obligations that must share a box: same class, or shapes that
/// meet (boxes are disjoint open sets). Fails if a group would hold two
/// lone points of one colour.
pub fn merge_obligations(runs: &[CoverageObligation]) -> Result<Vec<ObligationGroup>> {
    let n = runs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let segs: Vec<Vec<ExactSegment>> = runs.iter().map(|o| o.segments()).collect();
    let mut by_class: BTreeMap<&ObligationClass, usize> = BTreeMap::new();
    for (i, o) in runs.iter().enumerate() {
        match by_class.get(&o.class) {
            Some(&j) => union(&mut parent, i, j),
            None => {
                by_class.insert(&o.class, i);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if find(&mut parent, i) == find(&mut parent, j) {
                continue;
            }
            if segs[i].iter().any(|s| segs[j].iter().any(|t| segments_meet(s, t))) {
                union(&mut parent, i, j);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out = Vec::new();
    for members in groups.values() {
        let mut classes: Vec<ObligationClass> = members.iter().map(|&i| runs[i].class.clone()).collect();
        classes.sort();
        classes.dedup();
        let mut alone: Vec<ObligationClass> =
            members.iter().filter(|&&i| runs[i].alone).map(|&i| runs[i].class.clone()).collect();
        alone.sort();
        alone.dedup();
        for w in alone.windows(2) {
            if w[0].color == w[1].color {
                return Err(Error::Invalid(format!(
                    "conflicting class assignment: lone points {} and {} would share a box",
                    w[0].base, w[1].base
                )));
            }
        }
        let shapes = consolidate(members.iter().flat_map(|&i| segs[i].clone()).collect());
        out.push(ObligationGroup { classes, alone, shapes });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: &str, y: &str) -> ExactPoint {
        ExactPoint::parse(x, y).unwrap()
    }

    fn ob(color: Color, base: &str, path: &[(&str, &str)]) -> CoverageObligation {
        CoverageObligation {
            path: path.iter().map(|(x, y)| pt(x, y)).collect(),
            class: ObligationClass { color, base: base.into() },
            alone: true,
            source: "test".into(),
        }
    }

    #[test]
    fn shift_and_slide_sweeps_join() {
        let a = ob(Color::Red, "p", &[("0.5", "2"), ("0.4", "2"), ("0.5", "2")]);
        let b = ob(Color::Red, "p", &[("0.5", "2"), ("1", "2"), ("0.5", "2")]);
        let g = merge_obligations(&[a, b]).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].shapes, vec![ExactSegment::new(pt("0.4", "2"), pt("1", "2"))]);
    }

    #[test]
    fn stationary_point_is_its_own_obligation() {
        let g = merge_obligations(&[ob(Color::Blue, "q", &[("1", "1")])]).unwrap();
        assert_eq!(g[0].shapes, vec![ExactSegment::new(pt("1", "1"), pt("1", "1"))]);
    }

    #[test]
    fn distinct_rows_stay_distinct_and_colours_merge() {
        let mut obs = Vec::new();
        for i in 1..=6 {
            let yi = format!("{i}");
            obs.push(ob(Color::Red, &format!("r{i}"), &[("1", yi.as_str())]));
            obs.push(ob(Color::Blue, &format!("b{i}"), &[("0.4", yi.as_str()), ("1", yi.as_str())]));
        }
        let g = merge_obligations(&obs).unwrap();
        assert_eq!(g.len(), 6);
        for i in 0..6 {
            assert_eq!(g[i].classes.len(), 2);
            for j in 0..6 {
                assert_eq!(g[i].distinct_from(&g[j]), i != j);
            }
        }
    }

    #[test]
    fn two_lone_points_in_one_group_conflict() {
        let a = ob(Color::Red, "p", &[("0", "0"), ("1", "0")]);
        let b = ob(Color::Red, "q", &[("1", "0")]);
        assert!(merge_obligations(&[a, b]).is_err());
    }
}
