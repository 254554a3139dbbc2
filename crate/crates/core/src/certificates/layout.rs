//! Row-based decompositions of a container into lemma regions.
//!
//! Points come in horizontal rows. The band between the bottom wall and
//! the lowest row is cut into rectangles at the row's points, likewise at
//! the top. Consecutive rows are zipped into triangles, and the two ends
//! of each strip become wall quadrilaterals. Vertices are stored as
//! references (a point, its foot on a wall, or a corner) so the same
//! structure can be evaluated for moving points.

use std::collections::HashMap;

use super::format::{Color, Configuration};
use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, ExactPoint, ExactSegment};
use crate::lemmas::{check_lemma, AnchorReading, Frame, LemmaApplication, LemmaKind, Params};
use crate::numerics::Exact;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Wall {
    Left,
    Right,
    Bottom,
    Top,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VRef {
    Pt(usize),
    Foot(usize, Wall),
    /// Vertical wall, horizontal wall.
    Corner(Wall, Wall),
}

impl VRef {
    pub fn walls(self) -> Vec<Wall> {
        match self {
            VRef::Pt(_) => vec![],
            VRef::Foot(_, w) => vec![w],
            VRef::Corner(a, b) => vec![a, b],
        }
    }

    pub fn resolve(self, pos: &[ExactPoint], side: &Exact) -> ExactPoint {
        let wall_coord = |w: Wall| match w {
            Wall::Left | Wall::Bottom => Exact::zero(),
            Wall::Right | Wall::Top => side.clone(),
        };
        match self {
            VRef::Pt(i) => pos[i].clone(),
            VRef::Foot(i, w @ (Wall::Left | Wall::Right)) => ExactPoint::new(wall_coord(w), pos[i].y.clone()),
            VRef::Foot(i, w) => ExactPoint::new(pos[i].x.clone(), wall_coord(w)),
            VRef::Corner(v, h) => ExactPoint::new(wall_coord(v), wall_coord(h)),
        }
    }

    /// Projection of a band corner onto the band's wall.
    fn onto(self, wall: Wall) -> VRef {
        match self {
            VRef::Pt(i) => VRef::Foot(i, wall),
            VRef::Foot(_, v) => VRef::Corner(v, wall),
            VRef::Corner(..) => self,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Triangle,
    /// Rectangle between a row and the bottom or top wall.
    Band { wall: Wall, left: VRef, right: VRef },
    /// Quadrilateral between two row ends and the left or right wall;
    /// `far` is the end at distance one from the wall.
    Side { wall: Wall, far: usize, near: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Piece {
    pub kind: LemmaKind,
    pub role: Role,
    /// Counter-clockwise at the reference positions.
    pub cycle: Vec<VRef>,
}

/// One region of the decomposition with alternative lemma choices; each
/// option is a list of pieces tiling the region.
#[derive(Clone, Debug)]
pub struct Slot {
    pub options: Vec<Vec<Piece>>,
}

#[derive(Clone, Debug)]
pub struct Layout {
    pub side: Exact,
    pub slots: Vec<Slot>,
}

fn ccw(cycle: Vec<VRef>, pos: &[ExactPoint], side: &Exact) -> Vec<VRef> {
    let p: Vec<ExactPoint> = cycle.iter().map(|v| v.resolve(pos, side)).collect();
    let mut area = Exact::zero();
    for i in 0..p.len() {
        area = area + p[i].cross(&p[(i + 1) % p.len()]);
    }
    if area.is_negative() {
        cycle.into_iter().rev().collect()
    } else {
        cycle
    }
}

fn band_slot(wall: Wall, left: VRef, right: VRef, pos: &[ExactPoint], side: &Exact) -> Slot {
    let cycle = match wall {
        Wall::Bottom => vec![left.onto(wall), right.onto(wall), right, left],
        _ => vec![left, right, right.onto(wall), left.onto(wall)],
    };
    let role = Role::Band { wall, left, right };
    Slot { options: vec![vec![Piece { kind: LemmaKind::RectEdge, role, cycle: ccw(cycle, pos, side) }]] }
}

fn side_slot(wall: Wall, a: usize, b: usize, pos: &[ExactPoint], side: &Exact) -> Slot {
    let dist = |i: usize| match wall {
        Wall::Left => pos[i].x.clone(),
        _ => side - &pos[i].x,
    };
    let (far, near) = if dist(a) >= dist(b) { (a, b) } else { (b, a) };
    let role = Role::Side { wall, far, near };
    let quad = ccw(vec![VRef::Foot(far, wall), VRef::Pt(far), VRef::Pt(near), VRef::Foot(near, wall)], pos, side);
    let t1 = ccw(vec![VRef::Foot(far, wall), VRef::Foot(near, wall), VRef::Pt(near)], pos, side);
    let t2 = ccw(vec![VRef::Foot(far, wall), VRef::Pt(near), VRef::Pt(far)], pos, side);
    let one = |kind| vec![Piece { kind, role, cycle: quad.clone() }];
    Slot {
        options: vec![
            one(LemmaKind::QuadEdge),
            one(LemmaKind::QuadEdgeSmallA),
            one(LemmaKind::RectEdge),
            vec![
                Piece { kind: LemmaKind::Triangle, role: Role::Triangle, cycle: t1 },
                Piece { kind: LemmaKind::Triangle, role: Role::Triangle, cycle: t2 },
            ],
        ],
    }
}

fn band_slots(row: &[usize], wall: Wall, pos: &[ExactPoint], side: &Exact) -> Vec<Slot> {
    let mut out = Vec::new();
    let first = row[0];
    let last = *row.last().unwrap();
    out.push(band_slot(wall, VRef::Foot(first, Wall::Left), VRef::Pt(first), pos, side));
    for w in row.windows(2) {
        out.push(band_slot(wall, VRef::Pt(w[0]), VRef::Pt(w[1]), pos, side));
    }
    out.push(band_slot(wall, VRef::Pt(last), VRef::Foot(last, Wall::Right), pos, side));
    out
}

fn strip_slots(lower: &[usize], upper: &[usize], pos: &[ExactPoint], side: &Exact) -> Vec<Slot> {
    let mut out = vec![side_slot(Wall::Left, lower[0], upper[0], pos, side)];
    let (mut i, mut j) = (0, 0);
    while i + 1 < lower.len() || j + 1 < upper.len() {
        let advance_lower = if i + 1 == lower.len() {
            false
        } else if j + 1 == upper.len() {
            true
        } else {
            pos[lower[i + 1]].x <= pos[upper[j + 1]].x
        };
        let tri = if advance_lower {
            i += 1;
            vec![VRef::Pt(lower[i - 1]), VRef::Pt(lower[i]), VRef::Pt(upper[j])]
        } else {
            j += 1;
            vec![VRef::Pt(lower[i]), VRef::Pt(upper[j]), VRef::Pt(upper[j - 1])]
        };
        out.push(Slot {
            options: vec![vec![Piece { kind: LemmaKind::Triangle, role: Role::Triangle, cycle: ccw(tri, pos, side) }]],
        });
    }
    out.push(side_slot(Wall::Right, *lower.last().unwrap(), *upper.last().unwrap(), pos, side));
    out
}

impl Layout {
    /// Structure from reference positions. `rows` holds point indices,
    /// bottom row first, each row sorted by x.
    pub fn build(side: &Exact, rows: &[Vec<usize>], pos: &[ExactPoint]) -> Result<Layout> {
        if rows.is_empty() || rows.iter().any(|r| r.is_empty()) {
            return Err(Error::Invalid("layout needs non-empty rows".into()));
        }
        let mut slots = band_slots(&rows[0], Wall::Bottom, pos, side);
        for w in rows.windows(2) {
            slots.extend(strip_slots(&w[0], &w[1], pos, side));
        }
        slots.extend(band_slots(rows.last().unwrap(), Wall::Top, pos, side));
        Ok(Layout { side: side.clone(), slots })
    }

    /// Every interior edge is shared by exactly two pieces with opposite
    /// directions; every other edge lies on one wall.
    pub fn edges_twinned(&self, choice: &[usize]) -> bool {
        let mut directed: HashMap<(VRef, VRef), usize> = HashMap::new();
        for (slot, &c) in self.slots.iter().zip(choice) {
            for piece in &slot.options[c] {
                let n = piece.cycle.len();
                for k in 0..n {
                    *directed.entry((piece.cycle[k], piece.cycle[(k + 1) % n])).or_default() += 1;
                }
            }
        }
        directed.iter().all(|(&(a, b), &count)| {
            if count != 1 {
                return false;
            }
            if directed.contains_key(&(b, a)) {
                return true;
            }
            let wa = a.walls();
            b.walls().iter().any(|w| wa.contains(w))
        })
    }
}

/// The rigid frame and parameters for a band or side piece.
fn frame_and_params(role: Role, pos: &[ExactPoint], side: &Exact) -> Option<(Frame, Exact, Exact)> {
    let z = Exact::zero;
    match role {
        Role::Triangle => None,
        Role::Band { wall, left, right } => {
            let l = left.resolve(pos, side);
            let r = right.resolve(pos, side);
            let a = &r.x - &l.x;
            match wall {
                Wall::Bottom => Some((Frame::new([[1, 0], [0, 1]], [-l.x.clone(), z()]), a, l.y)),
                _ => Some((Frame::new([[1, 0], [0, -1]], [-l.x.clone(), side.clone()]), a, side - &l.y)),
            }
        }
        Role::Side { wall, far, near } => {
            let f = &pos[far];
            let n = &pos[near];
            let up = n.y > f.y;
            let a = (&n.y - &f.y).abs();
            let (m, ox, oy, b) = match (wall, up) {
                (Wall::Left, true) => ([[0, 1], [1, 0]], -f.y.clone(), z(), n.x.clone()),
                (Wall::Left, false) => ([[0, -1], [1, 0]], f.y.clone(), z(), n.x.clone()),
                (_, true) => ([[0, 1], [-1, 0]], -f.y.clone(), side.clone(), side - &n.x),
                (_, false) => ([[0, -1], [-1, 0]], f.y.clone(), side.clone(), side - &n.x),
            };
            Some((Frame::new(m, [ox, oy]), a, b))
        }
    }
}

/// The lemma application for one piece at concrete positions.
pub fn instantiate(piece: &Piece, pos: &[ExactPoint], side: &Exact) -> Result<LemmaApplication> {
    let pts: Vec<ExactPoint> = piece.cycle.iter().map(|v| v.resolve(pos, side)).collect();
    let region = ConvexPolygon::new(pts.clone())?;
    let degenerate = |v: &VRef| {
        let p = v.resolve(pos, side);
        ExactSegment::new(p.clone(), p)
    };
    let (anchors, escapes, params, frame) = match piece.role {
        Role::Triangle => (
            piece.cycle.iter().filter(|v| matches!(v, VRef::Pt(_))).map(|v| v.resolve(pos, side)).collect(),
            piece.cycle.iter().filter(|v| !matches!(v, VRef::Pt(_))).map(degenerate).collect(),
            Params::default(),
            Frame::identity(),
        ),
        Role::Band { wall, left, right } => {
            let (frame, a, b) = frame_and_params(piece.role, pos, side).unwrap();
            let mut escapes =
                vec![ExactSegment::new(left.onto(wall).resolve(pos, side), right.onto(wall).resolve(pos, side))];
            let mut anchors = Vec::new();
            for v in [left, right] {
                match v {
                    VRef::Pt(_) => anchors.push(v.resolve(pos, side)),
                    _ => escapes.push(degenerate(&v)),
                }
            }
            (anchors, escapes, Params { a: Some(a), b: Some(b) }, frame)
        }
        Role::Side { wall, far, near } => {
            let (frame, a, b) = frame_and_params(piece.role, pos, side).unwrap();
            let b = if piece.kind == LemmaKind::RectEdge { frame.apply(&pos[far]).y } else { b };
            let escapes = vec![ExactSegment::new(
                VRef::Foot(far, wall).resolve(pos, side),
                VRef::Foot(near, wall).resolve(pos, side),
            )];
            (vec![pos[far].clone(), pos[near].clone()], escapes, Params { a: Some(a), b: Some(b) }, frame)
        }
    };
    Ok(LemmaApplication { kind: piece.kind, region, anchors, escapes, params, frame, reading: AnchorReading::Corners })
}

/// Signed doubled areas of consecutive vertex triples, positive for a
/// strictly convex counter-clockwise cycle.
pub fn turn_values(piece: &Piece, pos: &[ExactPoint], side: &Exact) -> Vec<Exact> {
    let p: Vec<ExactPoint> = piece.cycle.iter().map(|v| v.resolve(pos, side)).collect();
    let n = p.len();
    (0..n)
        .map(|k| {
            let (a, b, c) = (&p[k], &p[(k + 1) % n], &p[(k + 2) % n]);
            (b - a).cross(&(c - b))
        })
        .collect()
}

/// Row index lists for one colour, ready for [`Layout::build`].
pub fn colour_rows(config: &Configuration, color: Color) -> Result<Vec<Vec<usize>>> {
    let n = config.points.iter().filter(|p| p.color == color).filter_map(|p| p.row).max().unwrap_or(0);
    if n == 0 {
        return Err(Error::Invalid(format!("no {color} rows in configuration")));
    }
    let mut rows = vec![Vec::new(); n];
    for (i, p) in config.points.iter().enumerate() {
        if p.color == color {
            let r = p.row.ok_or_else(|| Error::Invalid(format!("point {} has no row", p.id)))?;
            rows[r - 1].push(i);
        }
    }
    for r in &mut rows {
        r.sort_by(|&a, &b| config.points[a].pos.x.cmp(&config.points[b].pos.x));
    }
    if rows.iter().any(|r| r.is_empty()) {
        return Err(Error::Invalid("empty row".into()));
    }
    Ok(rows)
}

/// Picks, for each slot, the first option whose pieces all check True.
pub fn decompose(config: &Configuration, color: Color) -> Result<Vec<LemmaApplication>> {
    let rows = colour_rows(config, color)?;
    let pos: Vec<ExactPoint> = config.points.iter().map(|p| p.pos.clone()).collect();
    let side = &config.container.side;
    let layout = Layout::build(side, &rows, &pos)?;
    let mut apps = Vec::new();
    for (k, slot) in layout.slots.iter().enumerate() {
        let chosen = slot.options.iter().find_map(|opt| {
            let built: Result<Vec<LemmaApplication>> = opt.iter().map(|p| instantiate(p, &pos, side)).collect();
            let built = built.ok()?;
            built
                .iter()
                .all(|a| check_lemma(a).map(|r| r.verdict.is_true()).unwrap_or(false))
                .then_some(built)
        });
        match chosen {
            Some(b) => apps.extend(b),
            None => return Err(Error::Invalid(format!("no lemma fits slot {k}"))),
        }
    }
    Ok(apps)
}
