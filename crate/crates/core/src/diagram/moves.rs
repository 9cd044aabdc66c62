use std::fmt;

use super::{MorseDiagram, Slice, SliceKind};
use crate::error::{OqaError, Result};

/// Regular-isotopy moves in Morse normal form.
///
/// Each move is a list of word identities `lhs ≅ rhs` with positions relative to the site. Empty
/// sides stand for vertical strands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// Cancelling a cup against a cap on its right.
    M1a,
    /// Cancelling a cup against a cap on its left.
    M1b,
    /// `xp` followed by `xn`.
    M2,
    /// `xn` followed by `xp`.
    M2rev,
    /// Braid relation with positive crossings.
    M3,
    /// Braid relation with negative crossings.
    M3rev,
    /// A strand sliding through a crossing next to a cap.
    M4a,
    /// A strand sliding through a crossing next to a cup.
    M4b,
    /// [`Move::M4a`] with the opposite crossings.
    M4revA,
    /// [`Move::M4b`] with the opposite crossings.
    M4revB,
    /// A crossing turned sideways through caps and cups on its left.
    TwistL,
    /// A crossing turned sideways through caps and cups on its right.
    TwistR,
}

impl Move {
    pub const ALL: [Move; 12] = [
        Move::M1a,
        Move::M1b,
        Move::M2,
        Move::M2rev,
        Move::M3,
        Move::M3rev,
        Move::M4a,
        Move::M4b,
        Move::M4revA,
        Move::M4revB,
        Move::TwistL,
        Move::TwistR,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Move::M1a => "M1a",
            Move::M1b => "M1b",
            Move::M2 => "M2",
            Move::M2rev => "M2rev",
            Move::M3 => "M3",
            Move::M3rev => "M3rev",
            Move::M4a => "M4a",
            Move::M4b => "M4b",
            Move::M4revA => "M4rev_a",
            Move::M4revB => "M4rev_b",
            Move::TwistL => "TwistL",
            Move::TwistR => "TwistR",
        }
    }

    /// The identities of this move as `(lhs, rhs)` words at offset 0.
    pub fn variants(self) -> Vec<(Vec<Slice>, Vec<Slice>)> {
        let table: Vec<(&str, &str)> = match self {
            Move::M1a => vec![("cup_ccw 1 / cap_cw 0", ""), ("cup_cw 1 / cap_ccw 0", "")],
            Move::M1b => vec![("cup_cw 0 / cap_ccw 1", ""), ("cup_ccw 0 / cap_cw 1", "")],
            Move::M2 => vec![("xp 0 / xn 0", "")],
            Move::M2rev => vec![("xn 0 / xp 0", "")],
            Move::M3 => vec![("xp 0 / xp 1 / xp 0", "xp 1 / xp 0 / xp 1")],
            Move::M3rev => vec![("xn 0 / xn 1 / xn 0", "xn 1 / xn 0 / xn 1")],
            Move::M4a | Move::M4revA => vec![
                ("xp 0 / cap_cw 1", "cup_ccw 1 / xp 2 / cap_cw 3 / cap_cw 0"),
                ("cup_ccw 0 / xn 1 / cap_cw 2 / cap_cw 1", "xn 1 / cap_cw 0"),
                ("cup_cw 0 / xn 1 / cap_ccw 2 / cap_ccw 1", "xn 1 / cap_ccw 0"),
                ("xp 0 / cap_ccw 1", "cup_cw 1 / xp 2 / cap_ccw 3 / cap_ccw 0"),
            ],
            Move::M4b | Move::M4revB => vec![
                ("cup_cw 1 / xn 0", "cup_cw 0 / cup_cw 1 / xn 2 / cap_ccw 3"),
                ("cup_cw 1 / cup_cw 0 / xp 1 / cap_ccw 2", "cup_cw 0 / xp 1"),
                ("cup_ccw 1 / cup_ccw 0 / xp 1 / cap_cw 2", "cup_ccw 0 / xp 1"),
                ("cup_ccw 1 / xn 0", "cup_ccw 0 / cup_ccw 1 / xn 2 / cap_cw 3"),
            ],
            Move::TwistL => vec![
                ("xp 0", "cup_ccw 2 / cup_ccw 1 / xp 2 / cap_cw 3 / cap_cw 0"),
                ("xp 0", "cup_cw 2 / cup_cw 1 / xp 2 / cap_ccw 3 / cap_ccw 0"),
                ("xn 0", "cup_ccw 2 / cup_ccw 1 / xn 2 / cap_cw 3 / cap_cw 0"),
                ("xn 0", "cup_cw 2 / cup_cw 1 / xn 2 / cap_ccw 3 / cap_ccw 0"),
            ],
            Move::TwistR => vec![
                ("xp 0", "cup_cw 0 / cup_cw 1 / xp 2 / cap_ccw 3 / cap_ccw 2"),
                ("xp 0", "cup_ccw 0 / cup_ccw 1 / xp 2 / cap_cw 3 / cap_cw 2"),
                ("xn 0", "cup_cw 0 / cup_cw 1 / xn 2 / cap_ccw 3 / cap_ccw 2"),
                ("xn 0", "cup_ccw 0 / cup_ccw 1 / xn 2 / cap_cw 3 / cap_cw 2"),
            ],
        };
        let switch = matches!(self, Move::M4revA | Move::M4revB);
        table
            .into_iter()
            .map(|(l, r)| (word(l, switch), word(r, switch)))
            .collect()
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn word(s: &str, switch: bool) -> Vec<Slice> {
    s.split('/')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (k, p) = t.split_once(' ').expect("slice token");
            let kind = SliceKind::from_token(k).expect("slice kind");
            let kind = if switch { kind.switched() } else { kind };
            Slice::new(kind, p.parse().expect("position"))
        })
        .collect()
}

/// Forward rewrites left-hand sides into right-hand sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveDirection {
    Forward,
    Backward,
}

/// Where a move applies: the first slice of the window and the strand offset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveSite {
    pub slice: usize,
    pub position: usize,
}

/// Rewrites the window at `site`, trying the move's identities in order and keeping the first whose
/// pattern matches and whose result is a valid diagram.
pub fn apply_move(d: &MorseDiagram, mv: Move, site: MoveSite, dir: MoveDirection) -> Result<MorseDiagram> {
    apply_variants(d, &mv.variants(), site, dir).ok_or_else(|| {
        OqaError::MoveMismatch(format!("{mv} {dir:?} at slice {}, position {}", site.slice, site.position))
    })
}

fn apply_variants(
    d: &MorseDiagram,
    variants: &[(Vec<Slice>, Vec<Slice>)],
    site: MoveSite,
    dir: MoveDirection,
) -> Option<MorseDiagram> {
    let shifted = |w: &[Slice]| -> Vec<Slice> { w.iter().map(|s| Slice::new(s.kind, s.pos + site.position)).collect() };
    for (lhs, rhs) in variants {
        let (from, to) = match dir {
            MoveDirection::Forward => (lhs, rhs),
            MoveDirection::Backward => (rhs, lhs),
        };
        let end = site.slice + from.len();
        if end > d.len() {
            continue;
        }
        let window = &d.slices()[site.slice..end];
        if window.iter().zip(from).any(|(s, f)| s.kind != f.kind || s.pos != f.pos + site.position) {
            continue;
        }
        if from.is_empty() && site.position >= d.level(site.slice).len() {
            continue;
        }
        if let Ok(out) = d.splice(site.slice, from.len(), &shifted(to)) {
            return Some(out);
        }
    }
    None
}

/// Every `(move, site, direction)` that applies to `d`.
pub fn applicable_moves(d: &MorseDiagram) -> Vec<(Move, MoveSite, MoveDirection)> {
    let mut out = Vec::new();
    for mv in Move::ALL {
        let variants = mv.variants();
        for dir in [MoveDirection::Forward, MoveDirection::Backward] {
            for slice in 0..=d.len() {
                for position in 0..d.max_width().max(1) {
                    let site = MoveSite { slice, position };
                    if apply_variants(d, &variants, site, dir).is_some() {
                        out.push((mv, site, dir));
                    }
                }
            }
        }
    }
    out
}
