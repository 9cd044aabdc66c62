//! The bead-sliding invariant as a state sum: `w(T)` for 1-1 tangles and
//! `Π_ℓ tr(G^{d_ℓ} w(L_ℓ))` for closed diagrams.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use oqa_scalar::Scalar;
use rayon::prelude::*;

use crate::algebra::{AlgebraElement, AlgebraMap, AlgebraSpec, Element};
use crate::diagram::{MorseDiagram, Segment, SliceKind, TraversalRecord};
use crate::error::{OqaError, Result};
use crate::oqa::OrientedQuantumAlgebra;

/// One tensorand in the formal product: `t_d^{u_d}∘t_u^{u_u}` applied to the first or second
/// tensorand of the copy of `ρ` (or `ρ⁻¹`) at `crossing`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factor {
    pub crossing: usize,
    pub inverse: bool,
    pub first: bool,
    pub u_d: i64,
    pub u_u: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordComponent {
    pub closed: bool,
    pub whitney: i64,
    pub factors: Vec<Factor>,
}

/// The formal products of a diagram, one per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalWord {
    pub components: Vec<WordComponent>,
}

impl FormalWord {
    pub fn from_record(d: &MorseDiagram, rec: &TraversalRecord) -> FormalWord {
        let components = rec
            .components
            .iter()
            .map(|c| WordComponent {
                closed: c.closed,
                whitney: c.whitney(),
                factors: c
                    .labels
                    .iter()
                    .map(|l| Factor {
                        crossing: l.crossing,
                        inverse: d.slices()[l.crossing].kind == SliceKind::Xn,
                        first: l.first,
                        u_d: l.u_d,
                        u_u: l.u_u,
                    })
                    .collect(),
            })
            .collect();
        FormalWord { components }
    }

    /// Each crossing's copy with both labels' exponents shifted so that the second tensorand
    /// carries none. Returns `(crossing, Δu_d, Δu_u)` in order of first appearance.
    pub fn normalized_exponents(&self) -> Vec<(usize, i64, i64)> {
        let mut first: BTreeMap<usize, (i64, i64)> = BTreeMap::new();
        let mut second: BTreeMap<usize, (i64, i64)> = BTreeMap::new();
        let mut order = Vec::new();
        for f in self.components.iter().flat_map(|c| &c.factors) {
            if !first.contains_key(&f.crossing) && !second.contains_key(&f.crossing) {
                order.push(f.crossing);
            }
            let slot = if f.first { &mut first } else { &mut second };
            slot.insert(f.crossing, (f.u_d, f.u_u));
        }
        order
            .into_iter()
            .map(|c| {
                let (d1, u1) = first[&c];
                let (d2, u2) = second[&c];
                (c, d1 - d2, u1 - u2)
            })
            .collect()
    }
}

impl fmt::Display for FormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                f.write_str(" | ")?;
            }
            if c.closed {
                write!(f, "tr(G^{} · ", c.whitney)?;
            }
            if c.factors.is_empty() {
                f.write_str("1")?;
            }
            for (i, x) in c.factors.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                let name = if x.inverse { "ρ⁻¹" } else { "ρ" };
                let side = if x.first { 1 } else { 2 };
                let tensorand = format!("{name}[{}].{side}", x.crossing);
                match (x.u_d, x.u_u) {
                    (0, 0) => f.write_str(&tensorand)?,
                    (d, u) => write!(f, "(t_d^{d} t_u^{u})({tensorand})")?,
                }
            }
            if c.closed {
                f.write_str(")")?;
            }
        }
        Ok(())
    }
}

pub fn formal_word(d: &MorseDiagram) -> FormalWord {
    FormalWord::from_record(d, &d.traverse())
}

type Sparse = Vec<(usize, Scalar)>;

/// A structure prepared for evaluation: the trace functional and, when present, the twist.
pub struct Evaluator<'a> {
    s: &'a OrientedQuantumAlgebra,
    trace: Option<Vec<Scalar>>,
    maps: std::sync::Mutex<HashMap<(i64, i64), AlgebraMap<Scalar>>>,
}

impl<'a> Evaluator<'a> {
    /// Uses the structure's default trace (the matrix trace on `M_n`), if any.
    pub fn new(s: &'a OrientedQuantumAlgebra) -> Self {
        Evaluator { s, trace: s.default_trace(), maps: Default::default() }
    }

    /// Uses `trace` after checking it is tracelike and invariant under `t_d`, `t_u`.
    pub fn with_trace(s: &'a OrientedQuantumAlgebra, trace: Vec<Scalar>) -> Result<Self> {
        s.check_trace(&trace)?;
        Ok(Evaluator { s, trace: Some(trace), maps: Default::default() })
    }

    pub fn structure(&self) -> &OrientedQuantumAlgebra {
        self.s
    }

    /// `w(T)` for a 1-1 tangle.
    pub fn tangle(&self, d: &MorseDiagram) -> Result<AlgebraElement> {
        if !d.boundary().is_open() {
            return Err(OqaError::Diagram("expected an open 1-1 tangle".into()));
        }
        let rec = d.traverse();
        if rec.components.len() != 1 {
            return Err(OqaError::Diagram(format!(
                "open diagrams must consist of the single open strand; found {} components",
                rec.components.len()
            )));
        }
        let (scalar, elem) = self.run(d, &rec)?;
        let alg = self.s.algebra();
        let w = Element::from_sparse(alg.dim(), &elem);
        Ok(if scalar.is_zero() { w } else { w.add(&alg.one::<Scalar>().scale(&scalar)) })
    }

    /// `Π_ℓ tr(G^{d_ℓ} w(L_ℓ))` with default basepoints.
    pub fn link(&self, d: &MorseDiagram) -> Result<Scalar> {
        self.link_from(d, &[])
    }

    /// As [`link`](Self::link), with the given basepoints on their components.
    pub fn link_from(&self, d: &MorseDiagram, basepoints: &[Segment]) -> Result<Scalar> {
        if d.boundary().is_open() {
            return Err(OqaError::Diagram("expected a closed diagram".into()));
        }
        let rec = d.traverse_from(basepoints)?;
        Ok(self.run(d, &rec)?.0)
    }

    pub fn knot(&self, d: &MorseDiagram) -> Result<Scalar> {
        let c = d.component_count();
        if c != 1 {
            return Err(OqaError::Diagram(format!("a knot has one component; this diagram has {c}")));
        }
        self.link(d)
    }

    /// `t_d^x ∘ t_u^y` over the parameter field.
    fn map(&self, x: i64, y: i64) -> Result<AlgebraMap<Scalar>> {
        if let Some(m) = self.maps.lock().expect("map cache").get(&(x, y)) {
            return Ok(m.clone());
        }
        let alg = self.s.algebra();
        let m = self.s.t_d().pow(x)?.compose(&self.s.t_u().pow(y)?, alg)?.to_linear(alg)?;
        self.maps.lock().expect("map cache").insert((x, y), m.clone());
        Ok(m)
    }

    /// `φ_d(e_k) = tr(G^d e_k)`.
    fn trace_functional(&self, d: i64) -> Result<Vec<Scalar>> {
        let alg = self.s.algebra();
        let twist = self.s.twist().ok_or(OqaError::MissingTwist)?;
        let tr = self.trace.as_ref().ok_or_else(|| {
            OqaError::Trace("no default trace for this algebra; supply one explicitly".into())
        })?;
        let g = twist.power(alg, d);
        let mut phi = vec![Scalar::zero(); alg.dim()];
        for (j, gj) in g.coeffs().iter().enumerate() {
            if gj.is_zero() {
                continue;
            }
            for (k, slot) in phi.iter_mut().enumerate() {
                for (m, c) in alg.basis_product(j, k) {
                    if !tr[*m].is_zero() {
                        *slot = &*slot + &(&(gj * c) * &tr[*m]);
                    }
                }
            }
        }
        Ok(phi)
    }

    /// The state sum. Returns the scalar for closed diagrams and the element for a 1-1 tangle.
    fn run(&self, d: &MorseDiagram, rec: &TraversalRecord) -> Result<(Scalar, Sparse)> {
        let alg = self.s.algebra();
        let word = FormalWord::from_record(d, rec);
        let order = word.normalized_exponents();
        let mut index = vec![usize::MAX; d.len()];
        let mut choices: Vec<Vec<(Sparse, Sparse)>> = Vec::with_capacity(order.len());
        for (k, &(c, dx, dy)) in order.iter().enumerate() {
            index[c] = k;
            let copy = match d.slices()[c].kind {
                SliceKind::Xp => self.s.rho(),
                _ => self.s.rho_inv(),
            };
            let m = self.map(dx, dy)?;
            let opts = copy
                .entries()
                .iter()
                .filter_map(|(&(i, j), coeff)| {
                    let first: Sparse = m.column(i).iter().map(|(r, v)| (*r, v * coeff)).collect();
                    (!first.is_empty()).then(|| (first, vec![(j, Scalar::one())]))
                })
                .collect();
            choices.push(opts);
        }
        let mut phis = HashMap::new();
        let mut steps = Vec::new();
        for c in &word.components {
            for f in &c.factors {
                steps.push(Step::Factor { slot: index[f.crossing], first: f.first });
            }
            if c.closed {
                if !phis.contains_key(&c.whitney) {
                    phis.insert(c.whitney, self.trace_functional(c.whitney)?);
                }
                steps.push(Step::Close { whitney: c.whitney });
            }
        }
        let sum = StateSum { alg, choices: &choices, steps: &steps, phis: &phis };
        let start = State { partial: None, acc: Scalar::one(), chosen: vec![None; choices.len()] };
        Ok(with_pool(|| sum.total(start)))
    }
}

#[derive(Clone, Copy, Debug)]
enum Step {
    Factor { slot: usize, first: bool },
    Close { whitney: i64 },
}

#[derive(Clone)]
struct State {
    /// `None` stands for `1_A`.
    partial: Option<Sparse>,
    acc: Scalar,
    chosen: Vec<Option<usize>>,
}

struct StateSum<'a> {
    alg: &'a AlgebraSpec,
    choices: &'a [Vec<(Sparse, Sparse)>],
    steps: &'a [Step],
    phis: &'a HashMap<i64, Vec<Scalar>>,
}

impl StateSum<'_> {
    fn total(&self, start: State) -> (Scalar, Sparse) {
        // Split on the first branching step so rayon can share the work.
        let mut state = start;
        let mut at = 0;
        while at < self.steps.len() {
            match self.steps[at] {
                Step::Factor { slot, .. } if state.chosen[slot].is_none() => {
                    let branches: Vec<State> = (0..self.choices[slot].len())
                        .filter_map(|c| {
                            let mut s = state.clone();
                            s.chosen[slot] = Some(c);
                            self.apply(s, at)
                        })
                        .collect();
                    return branches
                        .into_par_iter()
                        .map(|s| {
                            let mut out = Acc::default();
                            self.dfs(s, at + 1, &mut out);
                            out
                        })
                        .reduce(Acc::default, Acc::merge)
                        .finish();
                }
                _ => match self.apply(state, at) {
                    Some(s) => state = s,
                    None => return (Scalar::zero(), vec![]),
                },
            }
            at += 1;
        }
        let mut out = Acc::default();
        out.leaf(state);
        out.finish()
    }

    fn dfs(&self, state: State, at: usize, out: &mut Acc) {
        if at == self.steps.len() {
            out.leaf(state);
            return;
        }
        if let Step::Factor { slot, .. } = self.steps[at] {
            if state.chosen[slot].is_none() {
                for c in 0..self.choices[slot].len() {
                    let mut s = state.clone();
                    s.chosen[slot] = Some(c);
                    if let Some(s) = self.apply(s, at) {
                        self.dfs(s, at + 1, out);
                    }
                }
                return;
            }
        }
        if let Some(s) = self.apply(state, at) {
            self.dfs(s, at + 1, out);
        }
    }

    /// Performs step `at` with all needed choices already made; `None` when the term vanishes.
    fn apply(&self, mut state: State, at: usize) -> Option<State> {
        match self.steps[at] {
            Step::Factor { slot, first } => {
                let (a, b) = &self.choices[slot][state.chosen[slot].expect("chosen")];
                let t = if first { a } else { b };
                let next = match &state.partial {
                    None => t.clone(),
                    Some(p) => self.alg.mul_sparse(p, t),
                };
                if next.is_empty() {
                    return None;
                }
                state.partial = Some(next);
                Some(state)
            }
            Step::Close { whitney } => {
                let phi = &self.phis[&whitney];
                let value = match state.partial.take() {
                    None => self.alg.unit_terms().iter().map(|(k, c)| c * &phi[*k]).sum(),
                    Some(p) => p.iter().map(|(k, c)| c * &phi[*k]).sum::<Scalar>(),
                };
                if value.is_zero() {
                    return None;
                }
                state.acc = &state.acc * &value;
                Some(state)
            }
        }
    }
}

#[derive(Default)]
struct Acc {
    scalar: Vec<Scalar>,
    element: BTreeMap<usize, Vec<Scalar>>,
}

impl Acc {
    fn leaf(&mut self, s: State) {
        match s.partial {
            Some(p) => {
                for (k, c) in p {
                    self.element.entry(k).or_default().push(&c * &s.acc);
                }
            }
            None => self.scalar.push(s.acc),
        }
    }

    fn merge(mut self, other: Acc) -> Acc {
        self.scalar.extend(other.scalar);
        for (k, v) in other.element {
            self.element.entry(k).or_default().extend(v);
        }
        self
    }

    fn finish(self) -> (Scalar, Sparse) {
        let scalar = sum_balanced(self.scalar);
        let element = self
            .element
            .into_iter()
            .map(|(k, v)| (k, sum_balanced(v)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        (scalar, element)
    }
}

/// Pairwise summation keeps intermediate rational functions small.
fn sum_balanced(mut v: Vec<Scalar>) -> Scalar {
    if v.is_empty() {
        return Scalar::zero();
    }
    while v.len() > 1 {
        v = v
            .par_chunks(2)
            .map(|c| if c.len() == 2 { &c[0] + &c[1] } else { c[0].clone() })
            .collect();
    }
    v.pop().expect("nonempty")
}

/// Runs `f` on a pool capped by `OQA_THREADS` when that variable is set.
fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    static POOL: OnceLock<Option<rayon::ThreadPool>> = OnceLock::new();
    let pool = POOL.get_or_init(|| {
        let n = std::env::var("OQA_THREADS").ok()?.parse::<usize>().ok()?;
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().ok()
    });
    match pool {
        Some(p) => p.install(f),
        None => f(),
    }
}

/// `w(T)` for a 1-1 tangle with the structure's default trace conventions.
pub fn evaluate_tangle(s: &OrientedQuantumAlgebra, d: &MorseDiagram) -> Result<AlgebraElement> {
    Evaluator::new(s).tangle(d)
}

/// The link invariant with the matrix trace (or `trace` when given).
pub fn evaluate_link(s: &OrientedQuantumAlgebra, d: &MorseDiagram, trace: Option<Vec<Scalar>>) -> Result<Scalar> {
    match trace {
        Some(t) => Evaluator::with_trace(s, t)?.link(d),
        None => Evaluator::new(s).link(d),
    }
}

pub fn evaluate_knot(s: &OrientedQuantumAlgebra, d: &MorseDiagram, trace: Option<Vec<Scalar>>) -> Result<Scalar> {
    match trace {
        Some(t) => Evaluator::with_trace(s, t)?.knot(d),
        None => Evaluator::new(s).knot(d),
    }
}
