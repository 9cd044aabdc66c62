use std::collections::BTreeSet;

use super::{Boundary, Dir, MorseDiagram, SliceKind};
use crate::error::{OqaError, Result};

/// A strand piece: `(level, position)`.
pub type Segment = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Event {
    Extremum { slice: usize, kind: SliceKind },
    /// Passing through the crossing at `slice`, on the over strand when `over`.
    Cross { slice: usize, over: bool },
}

/// A crossing line met during traversal. The over strand carries the first tensorand of the
/// crossing's copy of `ρ` or `ρ⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Label {
    pub crossing: usize,
    pub first: bool,
    /// `#d₊ − #d₋` from this label to the end of its component's traversal.
    pub u_d: i64,
    /// `#u₊ − #u₋` from this label to the end of its component's traversal.
    pub u_u: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentRecord {
    pub start: Segment,
    pub closed: bool,
    pub events: Vec<Event>,
    pub labels: Vec<Label>,
    /// Number of clockwise minus counterclockwise extrema; twice the Whitney degree.
    pub whitney2: i64,
}

impl ComponentRecord {
    pub fn whitney(&self) -> i64 {
        self.whitney2 / 2
    }

    pub fn extrema(&self) -> Vec<SliceKind> {
        self.events
            .iter()
            .filter_map(|e| match e {
                Event::Extremum { kind, .. } => Some(*kind),
                Event::Cross { .. } => None,
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraversalRecord {
    /// The open strand first (if any), then closed components by basepoint.
    pub components: Vec<ComponentRecord>,
}

impl TraversalRecord {
    /// Crossings in order of first appearance along the traversal.
    pub fn crossing_order(&self) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for c in &self.components {
            for l in &c.labels {
                if seen.insert(l.crossing) {
                    out.push(l.crossing);
                }
            }
        }
        out
    }

    /// The first crossing whose first visit is along the under strand.
    pub fn first_under_crossing(&self) -> Option<usize> {
        let mut seen = BTreeSet::new();
        for c in &self.components {
            for l in &c.labels {
                if seen.insert(l.crossing) && !l.first {
                    return Some(l.crossing);
                }
            }
        }
        None
    }

    /// Whitney degrees by component.
    pub fn whitney(&self) -> Vec<i64> {
        self.components.iter().map(ComponentRecord::whitney).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramStats {
    pub writhe: i64,
    pub whitney: Vec<i64>,
}

impl DiagramStats {
    /// Sum of the component Whitney degrees.
    pub fn total_whitney(&self) -> i64 {
        self.whitney.iter().sum()
    }
}

impl MorseDiagram {
    /// Components with the default basepoints: the lowest, then leftmost, upward segment.
    pub fn traverse(&self) -> TraversalRecord {
        self.traverse_from(&[]).expect("default basepoints are admissible")
    }

    /// As [`traverse`](Self::traverse), replacing the basepoint of each closed component that
    /// contains one of `starts`.
    pub fn traverse_from(&self, starts: &[Segment]) -> Result<TraversalRecord> {
        let mut visited = BTreeSet::new();
        let mut components = Vec::new();
        match self.boundary() {
            Boundary::Closed => {}
            Boundary::Open => components.push(self.walk((0, 0), Dir::Up, false, &mut visited)),
            Boundary::OpenDown => components.push(self.walk((self.len(), 0), Dir::Down, false, &mut visited)),
        }
        for l in 0..=self.len() {
            for i in 0..self.level(l).len() {
                if visited.contains(&(l, i)) || self.level(l)[i] != Dir::Up {
                    continue;
                }
                let mut local = BTreeSet::new();
                let default = self.walk((l, i), Dir::Up, true, &mut local);
                let chosen: Vec<_> = starts.iter().filter(|s| local.contains(s)).collect();
                let rec = match chosen.as_slice() {
                    [] => default,
                    [&s] => {
                        if self.level(s.0).get(s.1) != Some(&Dir::Up) {
                            return Err(OqaError::Diagram(format!("basepoint {s:?} is not an upward segment")));
                        }
                        self.walk(s, Dir::Up, true, &mut BTreeSet::new())
                    }
                    _ => return Err(OqaError::Diagram("two basepoints on one component".into())),
                };
                visited.extend(local);
                components.push(rec);
            }
        }
        for s in starts {
            if !visited.contains(s) {
                return Err(OqaError::Diagram(format!("basepoint {s:?} lies on no closed component")));
            }
        }
        Ok(TraversalRecord { components })
    }

    /// Upward segments of every closed component, in default component order.
    pub fn admissible_basepoints(&self) -> Vec<Vec<Segment>> {
        let rec = self.traverse();
        let mut out = Vec::new();
        for c in rec.components.iter().filter(|c| c.closed) {
            let mut local = BTreeSet::new();
            self.walk(c.start, Dir::Up, true, &mut local);
            out.push(local.into_iter().filter(|&(l, i)| self.level(l)[i] == Dir::Up).collect());
        }
        out
    }

    pub fn stats(&self) -> DiagramStats {
        DiagramStats { writhe: self.writhe(), whitney: self.traverse().whitney() }
    }

    pub fn component_count(&self) -> usize {
        self.traverse().components.len()
    }

    fn walk(&self, start: Segment, dir: Dir, closed: bool, visited: &mut BTreeSet<Segment>) -> ComponentRecord {
        let mut events = Vec::new();
        let (mut seg, mut dir) = (start, dir);
        visited.insert(seg);
        loop {
            let Some((next, ndir, ev)) = self.step(seg, dir) else { break };
            if let Some(e) = ev {
                events.push(e);
            }
            seg = next;
            dir = ndir;
            if closed && seg == start && dir == Dir::Up {
                break;
            }
            visited.insert(seg);
        }
        let labels = labels_of(self, &events);
        let whitney2 = events
            .iter()
            .map(|e| match e {
                Event::Extremum { kind, .. } if kind.is_clockwise() => 1,
                Event::Extremum { .. } => -1,
                Event::Cross { .. } => 0,
            })
            .sum();
        ComponentRecord { start, closed, events, labels, whitney2 }
    }

    /// One move along the strand from `seg` in direction `dir`; `None` at a loose end.
    fn step(&self, (l, i): Segment, dir: Dir) -> Option<(Segment, Dir, Option<Event>)> {
        match dir {
            Dir::Up => {
                let s = *self.slices().get(l)?;
                let p = s.pos;
                let ev = |kind| Some(Event::Extremum { slice: l, kind });
                Some(match s.kind {
                    SliceKind::CupCw | SliceKind::CupCcw => ((l + 1, if i < p { i } else { i + 2 }), Dir::Up, None),
                    SliceKind::CapCw | SliceKind::CapCcw if i == p => ((l, p + 1), Dir::Down, ev(s.kind)),
                    SliceKind::CapCw | SliceKind::CapCcw if i == p + 1 => ((l, p), Dir::Down, ev(s.kind)),
                    SliceKind::CapCw | SliceKind::CapCcw => ((l + 1, if i < p { i } else { i - 2 }), Dir::Up, None),
                    SliceKind::Xp | SliceKind::Xn if i == p || i == p + 1 => {
                        let slash = i == p;
                        let over = slash == (s.kind == SliceKind::Xp);
                        ((l + 1, if slash { p + 1 } else { p }), Dir::Up, Some(Event::Cross { slice: l, over }))
                    }
                    SliceKind::Xp | SliceKind::Xn => ((l + 1, i), Dir::Up, None),
                })
            }
            Dir::Down => {
                if l == 0 {
                    return None;
                }
                let s = self.slices()[l - 1];
                let p = s.pos;
                let ev = |kind| Some(Event::Extremum { slice: l - 1, kind });
                Some(match s.kind {
                    SliceKind::CupCw | SliceKind::CupCcw if i == p => ((l, p + 1), Dir::Up, ev(s.kind)),
                    SliceKind::CupCw | SliceKind::CupCcw if i == p + 1 => ((l, p), Dir::Up, ev(s.kind)),
                    SliceKind::CupCw | SliceKind::CupCcw => ((l - 1, if i < p { i } else { i - 2 }), Dir::Down, None),
                    SliceKind::CapCw | SliceKind::CapCcw => ((l - 1, if i < p { i } else { i + 2 }), Dir::Down, None),
                    SliceKind::Xp | SliceKind::Xn if i == p || i == p + 1 => {
                        let slash = i == p + 1;
                        let over = slash == (s.kind == SliceKind::Xp);
                        ((l - 1, if slash { p } else { p + 1 }), Dir::Down, Some(Event::Cross { slice: l - 1, over }))
                    }
                    SliceKind::Xp | SliceKind::Xn => ((l - 1, i), Dir::Down, None),
                })
            }
        }
    }
}

fn labels_of(d: &MorseDiagram, events: &[Event]) -> Vec<Label> {
    let (mut u_d, mut u_u) = (0i64, 0i64);
    let mut out = Vec::new();
    for e in events.iter().rev() {
        match *e {
            Event::Extremum { kind, .. } => match kind {
                SliceKind::CapCcw => u_d += 1,
                SliceKind::CupCw => u_d -= 1,
                SliceKind::CupCcw => u_u += 1,
                SliceKind::CapCw => u_u -= 1,
                _ => unreachable!("extremum"),
            },
            Event::Cross { slice, over } => {
                debug_assert!(d.slices()[slice].kind.is_crossing());
                out.push(Label { crossing: slice, first: over, u_d, u_u });
            }
        }
    }
    out.reverse();
    out
}
