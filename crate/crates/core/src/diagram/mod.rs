//! Oriented tangle, knot and link diagrams as Morse words: bottom-to-top sequences of cups, caps
//! and crossings between strands of equal direction.

mod builtins;
mod moves;
mod parse;
mod traverse;

use std::fmt;

use crate::error::{OqaError, Result};

pub use builtins::{builtin, builtin_names, curl_family, CurlFamily};
pub use moves::{applicable_moves, apply_move, Move, MoveDirection, MoveSite};
pub use parse::parse_diagram;
pub use traverse::{ComponentRecord, DiagramStats, Event, Label, Segment, TraversalRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Up,
    Down,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Up => Dir::Down,
            Dir::Down => Dir::Up,
        }
    }
}

/// The four local extrema and the two crossings.
///
/// A clockwise cup creates the pair `(up, down)`, a counterclockwise cup `(down, up)`; caps consume
/// the same pairs. `Xp` carries `ρ`, `Xn` carries `ρ⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SliceKind {
    CupCw,
    CupCcw,
    CapCw,
    CapCcw,
    Xp,
    Xn,
}

impl SliceKind {
    pub fn token(self) -> &'static str {
        match self {
            SliceKind::CupCw => "cup_cw",
            SliceKind::CupCcw => "cup_ccw",
            SliceKind::CapCw => "cap_cw",
            SliceKind::CapCcw => "cap_ccw",
            SliceKind::Xp => "xp",
            SliceKind::Xn => "xn",
        }
    }

    pub fn from_token(s: &str) -> Option<SliceKind> {
        Some(match s {
            "cup_cw" => SliceKind::CupCw,
            "cup_ccw" => SliceKind::CupCcw,
            "cap_cw" => SliceKind::CapCw,
            "cap_ccw" => SliceKind::CapCcw,
            "xp" => SliceKind::Xp,
            "xn" => SliceKind::Xn,
            _ => return None,
        })
    }

    pub fn is_crossing(self) -> bool {
        matches!(self, SliceKind::Xp | SliceKind::Xn)
    }

    pub fn is_cup(self) -> bool {
        matches!(self, SliceKind::CupCw | SliceKind::CupCcw)
    }

    pub fn is_cap(self) -> bool {
        matches!(self, SliceKind::CapCw | SliceKind::CapCcw)
    }

    pub fn is_clockwise(self) -> bool {
        matches!(self, SliceKind::CupCw | SliceKind::CapCw)
    }

    /// Clockwise and counterclockwise extrema exchanged; crossings unchanged.
    pub fn reversed(self) -> SliceKind {
        match self {
            SliceKind::CupCw => SliceKind::CupCcw,
            SliceKind::CupCcw => SliceKind::CupCw,
            SliceKind::CapCw => SliceKind::CapCcw,
            SliceKind::CapCcw => SliceKind::CapCw,
            k => k,
        }
    }

    /// `Xp` and `Xn` exchanged.
    pub fn switched(self) -> SliceKind {
        match self {
            SliceKind::Xp => SliceKind::Xn,
            SliceKind::Xn => SliceKind::Xp,
            k => k,
        }
    }

    /// Directions of the pair a cup creates or a cap consumes, left to right.
    fn pair(self) -> Option<(Dir, Dir)> {
        match self {
            SliceKind::CupCw | SliceKind::CapCw => Some((Dir::Up, Dir::Down)),
            SliceKind::CupCcw | SliceKind::CapCcw => Some((Dir::Down, Dir::Up)),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slice {
    pub kind: SliceKind,
    pub pos: usize,
}

impl Slice {
    pub fn new(kind: SliceKind, pos: usize) -> Slice {
        Slice { kind, pos }
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind.token(), self.pos)
    }
}

/// Closed diagrams have no loose ends; open ones have one strand entering at the bottom and leaving
/// at the top, pointing up (`Open`) or down (`OpenDown`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Boundary {
    Closed,
    Open,
    OpenDown,
}

impl Boundary {
    pub fn token(self) -> &'static str {
        match self {
            Boundary::Closed => "closed",
            Boundary::Open => "open",
            Boundary::OpenDown => "open_down",
        }
    }

    pub fn from_token(s: &str) -> Option<Boundary> {
        Some(match s {
            "closed" => Boundary::Closed,
            "open" | "open_up" => Boundary::Open,
            "open_down" => Boundary::OpenDown,
            _ => return None,
        })
    }

    pub fn is_open(self) -> bool {
        self != Boundary::Closed
    }

    fn initial(self) -> Vec<Dir> {
        match self {
            Boundary::Closed => vec![],
            Boundary::Open => vec![Dir::Up],
            Boundary::OpenDown => vec![Dir::Down],
        }
    }

    fn flipped(self) -> Boundary {
        match self {
            Boundary::Closed => Boundary::Closed,
            Boundary::Open => Boundary::OpenDown,
            Boundary::OpenDown => Boundary::Open,
        }
    }
}

/// A validated Morse word. Level `l` is the horizontal line below slice `l`; level `len` is the top.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorseDiagram {
    boundary: Boundary,
    slices: Vec<Slice>,
    levels: Vec<Vec<Dir>>,
}

impl MorseDiagram {
    pub fn new(boundary: Boundary, slices: Vec<Slice>) -> Result<Self> {
        let levels = validate(boundary, &slices)?;
        Ok(MorseDiagram { boundary, slices, levels })
    }

    /// The single upward strand.
    pub fn identity() -> Self {
        MorseDiagram::new(Boundary::Open, vec![]).expect("identity strand")
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }

    /// Strand directions at level `l`, left to right.
    pub fn level(&self, l: usize) -> &[Dir] {
        &self.levels[l]
    }

    pub fn max_width(&self) -> usize {
        self.levels.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn crossing_count(&self) -> usize {
        self.slices.iter().filter(|s| s.kind.is_crossing()).count()
    }

    pub fn writhe(&self) -> i64 {
        self.slices
            .iter()
            .map(|s| match s.kind {
                SliceKind::Xp => 1,
                SliceKind::Xn => -1,
                _ => 0,
            })
            .sum()
    }

    /// The same picture with every orientation reversed.
    pub fn reverse_orientation(&self) -> Self {
        let slices = self.slices.iter().map(|s| Slice::new(s.kind.reversed(), s.pos)).collect();
        MorseDiagram::new(self.boundary.flipped(), slices).expect("orientation reversal preserves validity")
    }

    /// Every crossing switched.
    pub fn mirror(&self) -> Self {
        let slices = self.slices.iter().map(|s| Slice::new(s.kind.switched(), s.pos)).collect();
        MorseDiagram::new(self.boundary, slices).expect("mirroring preserves validity")
    }

    /// The crossing at slice `i` replaced by its opposite.
    pub fn switch_crossing(&self, i: usize) -> Result<Self> {
        self.crossing_at(i)?;
        let mut slices = self.slices.clone();
        slices[i].kind = slices[i].kind.switched();
        MorseDiagram::new(self.boundary, slices)
    }

    /// The crossing at slice `i` replaced by its oriented smoothing.
    pub fn smooth_crossing(&self, i: usize) -> Result<Self> {
        self.crossing_at(i)?;
        let mut slices = self.slices.clone();
        slices.remove(i);
        MorseDiagram::new(self.boundary, slices)
    }

    fn crossing_at(&self, i: usize) -> Result<()> {
        match self.slices.get(i) {
            Some(s) if s.kind.is_crossing() => Ok(()),
            _ => Err(OqaError::Diagram(format!("slice {i} is not a crossing"))),
        }
    }

    /// Replaces `slices[start..start + len]` by `window` and revalidates.
    pub fn splice(&self, start: usize, len: usize, window: &[Slice]) -> Result<Self> {
        if start + len > self.slices.len() {
            return Err(OqaError::Diagram("splice window out of range".into()));
        }
        let mut slices = Vec::with_capacity(self.slices.len() + window.len() - len.min(window.len()));
        slices.extend_from_slice(&self.slices[..start]);
        slices.extend_from_slice(window);
        slices.extend_from_slice(&self.slices[start + len..]);
        MorseDiagram::new(self.boundary, slices)
    }

    /// `t1 ⋆ t2`: for upward tangles `t1` sits below `t2`, for downward ones above, so that the
    /// traversal always meets `t1` first.
    pub fn compose(t1: &Self, t2: &Self) -> Result<Self> {
        if !t1.boundary.is_open() || t1.boundary != t2.boundary {
            return Err(OqaError::Diagram(format!(
                "cannot compose {} with {}",
                t1.boundary.token(),
                t2.boundary.token()
            )));
        }
        let (lower, upper) = if t1.boundary == Boundary::Open { (t1, t2) } else { (t2, t1) };
        let mut slices = lower.slices.clone();
        slices.extend_from_slice(&upper.slices);
        MorseDiagram::new(t1.boundary, slices)
    }

    /// Closes an open strand with a return strand on its right; closed diagrams are returned as is.
    pub fn closure(&self) -> Self {
        let (cup, cap) = match self.boundary {
            Boundary::Closed => return self.clone(),
            Boundary::Open => (SliceKind::CupCw, SliceKind::CapCw),
            Boundary::OpenDown => (SliceKind::CupCcw, SliceKind::CapCcw),
        };
        let mut slices = vec![Slice::new(cup, 0)];
        slices.extend_from_slice(&self.slices);
        slices.push(Slice::new(cap, 0));
        MorseDiagram::new(Boundary::Closed, slices).expect("closing a 1-1 tangle on the right")
    }

    /// The Morse word in the text grammar.
    pub fn serialize(&self) -> String {
        let mut out = format!("boundary: {}\n", self.boundary.token());
        for s in &self.slices {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out
    }

    /// One-line form, slices separated by ` / `.
    pub fn word(&self) -> String {
        let mut parts = vec![format!("boundary: {}", self.boundary.token())];
        parts.extend(self.slices.iter().map(Slice::to_string));
        parts.join(" / ")
    }
}

impl fmt::Display for MorseDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

fn validate(boundary: Boundary, slices: &[Slice]) -> Result<Vec<Vec<Dir>>> {
    let mut levels = Vec::with_capacity(slices.len() + 1);
    let mut cur = boundary.initial();
    for (idx, s) in slices.iter().enumerate() {
        let bad = |msg: String| OqaError::Invalid { slice: idx, msg: format!("{s}: {msg}") };
        let width = cur.len();
        let p = s.pos;
        let next = match s.kind {
            SliceKind::CupCw | SliceKind::CupCcw => {
                if p > width {
                    return Err(bad(format!("position beyond the {width} strands present")));
                }
                let (l, r) = s.kind.pair().expect("extremum");
                let mut n = cur.clone();
                n.splice(p..p, [l, r]);
                n
            }
            SliceKind::CapCw | SliceKind::CapCcw => {
                if p + 1 >= width {
                    return Err(bad(format!("needs strands {p} and {} but only {width} present", p + 1)));
                }
                let want = s.kind.pair().expect("extremum");
                if (cur[p], cur[p + 1]) != want {
                    return Err(bad(format!(
                        "needs ({}, {}) but strands are ({}, {})",
                        dir_name(want.0),
                        dir_name(want.1),
                        dir_name(cur[p]),
                        dir_name(cur[p + 1])
                    )));
                }
                let mut n = cur.clone();
                n.drain(p..p + 2);
                n
            }
            SliceKind::Xp | SliceKind::Xn => {
                if p + 1 >= width {
                    return Err(bad(format!("needs strands {p} and {} but only {width} present", p + 1)));
                }
                if cur[p] != cur[p + 1] {
                    return Err(bad("crossing strands must point the same way".into()));
                }
                cur.clone()
            }
        };
        levels.push(std::mem::replace(&mut cur, next));
    }
    if cur != boundary.initial() {
        return Err(OqaError::Invalid {
            slice: slices.len(),
            msg: format!("top boundary has {} strands, expected {}", cur.len(), boundary.token()),
        });
    }
    levels.push(cur);
    Ok(levels)
}

fn dir_name(d: Dir) -> &'static str {
    match d {
        Dir::Up => "up",
        Dir::Down => "down",
    }
}
