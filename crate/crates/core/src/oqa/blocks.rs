//! Balanced structures on `M_n` whose `ρ` only has slots `ρ_{iℓjm}` with `{i,ℓ} = {j,m}`,
//! and the clause-by-clause classification of when they satisfy the axioms.

use std::collections::BTreeMap;
use std::fmt;

use oqa_scalar::Scalar;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{check_axioms, diagonal_twist, OrientedQuantumAlgebra};
use crate::algebra::{AlgebraSpec, TensorSquare};
use crate::automorphism::Automorphism;
use crate::error::{OqaError, Result};

/// Raw coefficient table of `ρ = Σ ρ_{iℓjm} E_ij ⊗ E_ℓm` plus the squares `ω_i²`; indices are 0-based.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockParams {
    pub n: usize,
    /// `ρ_{iiii}`.
    pub diag: Vec<Scalar>,
    /// `ρ_{iℓiℓ}` for `i ≠ ℓ`.
    pub off: BTreeMap<(usize, usize), Scalar>,
    /// `ρ_{iℓℓi}` for `i ≠ ℓ`; absent means zero.
    pub cross: BTreeMap<(usize, usize), Scalar>,
    /// Any other slot `(i, ℓ, j, m)`; these violate the structural hypothesis.
    pub stray: BTreeMap<(usize, usize, usize, usize), Scalar>,
    pub omega_sq: Vec<Scalar>,
}

impl BlockParams {
    /// Parameters from an ordered partition: `ρ_{iℓℓi} = a_i − bc/a_i` whenever `i` precedes `ℓ` in a block.
    pub fn from_blocks(
        n: usize,
        blocks: &[Vec<usize>],
        bc: &[Scalar],
        diag: Vec<Scalar>,
        off: BTreeMap<(usize, usize), Scalar>,
        omega_sq: Vec<Scalar>,
    ) -> Result<Self> {
        let mut seen = vec![false; n];
        for &i in blocks.iter().flatten() {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(OqaError::Parameter(format!("blocks do not partition 1..{n}")));
            }
        }
        if seen.iter().any(|s| !s) || bc.len() != blocks.len() || diag.len() != n {
            return Err(OqaError::Parameter("blocks, bc and diagonal lengths disagree".into()));
        }
        let mut cross = BTreeMap::new();
        for (block, bc) in blocks.iter().zip(bc) {
            for (p, &i) in block.iter().enumerate() {
                for &l in &block[p + 1..] {
                    cross.insert((i, l), &diag[i] - &bc.checked_div(&diag[i])?);
                }
            }
        }
        Ok(BlockParams { n, diag, off, cross, stray: BTreeMap::new(), omega_sq })
    }

    /// The table of a Example-2 type structure: one block in natural order, all `a_i = a`.
    pub fn balanced(
        n: usize,
        a: &Scalar,
        bc: &Scalar,
        b: &BTreeMap<(usize, usize), Scalar>,
        omega1_sq: &Scalar,
    ) -> Result<Self> {
        let rho = super::build_rho_abc(n, a, bc, b)?;
        let omega_sq = super::balanced_omega_sq(n, a, bc, omega1_sq)?;
        Ok(BlockParams::from_rho(n, &rho, omega_sq))
    }

    /// Reads the table off an element of `M_n ⊗ M_n`.
    pub fn from_rho(n: usize, rho: &TensorSquare<Scalar>, omega_sq: Vec<Scalar>) -> Self {
        let mut p = BlockParams {
            n,
            diag: vec![Scalar::zero(); n],
            off: BTreeMap::new(),
            cross: BTreeMap::new(),
            stray: BTreeMap::new(),
            omega_sq,
        };
        for ((x, y), c) in rho.entries() {
            let (i, j, l, m) = (x / n, x % n, y / n, y % n);
            if i == j && l == m && i == l {
                p.diag[i] = c.clone();
            } else if i == j && l == m {
                p.off.insert((i, l), c.clone());
            } else if j == l && m == i {
                p.cross.insert((i, l), c.clone());
            } else {
                p.stray.insert((i, l, j, m), c.clone());
            }
        }
        p
    }

    pub fn off(&self, i: usize, l: usize) -> Scalar {
        self.off.get(&(i, l)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn cross(&self, i: usize, l: usize) -> Scalar {
        self.cross.get(&(i, l)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn to_rho(&self) -> TensorSquare<Scalar> {
        let n = self.n;
        let e = |i: usize, j: usize| i * n + j;
        let mut rho = TensorSquare::zero(n * n);
        for (i, a) in self.diag.iter().enumerate() {
            rho.add_term(e(i, i), e(i, i), a.clone());
        }
        for ((i, l), c) in &self.off {
            rho.add_term(e(*i, *i), e(*l, *l), c.clone());
        }
        for ((i, l), c) in &self.cross {
            rho.add_term(e(*i, *l), e(*l, *i), c.clone());
        }
        for ((i, l, j, m), c) in &self.stray {
            rho.add_term(e(*i, *j), e(*l, *m), c.clone());
        }
        rho
    }

    /// `(M_n, ρ, t)` without checking any clause; fails only if `ρ` is singular.
    pub fn structure(&self) -> Result<OrientedQuantumAlgebra> {
        let t = Automorphism::scaling(self.omega_sq.clone());
        OrientedQuantumAlgebra::new(AlgebraSpec::matrix(self.n), self.to_rho(), t.clone(), t)
    }

    /// Whether the raw table satisfies the axioms, as decided by the axiom checker.
    pub fn axioms_hold(&self) -> bool {
        match self.structure() {
            Ok(s) => check_axioms(&s).holds(),
            Err(_) => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Clause {
    Structure,
    A,
    B,
    C,
    DI,
    DII,
    DIII,
    DIV,
    /// `ρ_{ikik}ρ_{kiki}` is constant along each component for every `k` outside it.
    CrossBlock,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::Structure => "structure",
            Clause::A => "a",
            Clause::B => "b",
            Clause::C => "c",
            Clause::DI => "d-i",
            Clause::DII => "d-ii",
            Clause::DIII => "d-iii",
            Clause::DIV => "d-iv",
            Clause::CrossBlock => "cross-block",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClauseStatus {
    Pass,
    Fail(String),
    /// Not evaluated because an earlier clause left the ordering undefined.
    Skipped,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub clauses: Vec<(Clause, ClauseStatus)>,
    /// ρ-components, each listed in `≺` order.
    pub partition: Vec<Vec<usize>>,
    /// `(bc_ℓ, x_ℓ)` per component with at least two elements, in partition order.
    pub block_constants: Vec<Option<(Scalar, Scalar)>>,
}

impl ClassificationReport {
    pub fn passes(&self) -> bool {
        self.clauses.iter().all(|(_, s)| *s == ClauseStatus::Pass)
    }

    pub fn status(&self, clause: Clause) -> &ClauseStatus {
        &self.clauses.iter().find(|(c, _)| *c == clause).expect("every clause is reported").1
    }

    pub fn first_failure(&self) -> Option<(Clause, String)> {
        self.clauses.iter().find_map(|(c, s)| match s {
            ClauseStatus::Fail(d) => Some((*c, d.clone())),
            _ => None,
        })
    }
}

fn one_based(i: usize) -> usize {
    i + 1
}

/// Connected components of the graph with an edge `i — ℓ` whenever `ρ_{iℓℓi} ≠ 0`.
fn cross_components(p: &BlockParams) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..p.n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for ((i, l), c) in &p.cross {
        if !c.is_zero() && *i < p.n && *l < p.n {
            let (ri, rl) = (find(&mut parent, *i), find(&mut parent, *l));
            parent[ri.max(rl)] = ri.min(rl);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..p.n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Orders a component by `i ≺ ℓ ⇔ ρ_{iℓℓi} ≠ 0`, or explains why that is not a strict total order.
fn order_component(p: &BlockParams, comp: &[usize]) -> std::result::Result<Vec<usize>, String> {
    let prec = |i: usize, l: usize| !p.cross(i, l).is_zero();
    for (x, &i) in comp.iter().enumerate() {
        for &l in &comp[x + 1..] {
            match (prec(i, l), prec(l, i)) {
                (true, true) => {
                    return Err(format!(
                        "both ρ_{0}{1}{1}{0} and ρ_{1}{0}{0}{1} are nonzero",
                        one_based(i),
                        one_based(l)
                    ))
                }
                (false, false) => {
                    return Err(format!(
                        "{} and {} are incomparable in their component",
                        one_based(i),
                        one_based(l)
                    ))
                }
                _ => {}
            }
        }
    }
    for &i in comp {
        for &j in comp {
            for &l in comp {
                if prec(i, j) && prec(j, l) && !prec(i, l) {
                    return Err(format!(
                        "{} ≺ {} ≺ {} but not {} ≺ {}",
                        one_based(i),
                        one_based(j),
                        one_based(l),
                        one_based(i),
                        one_based(l)
                    ));
                }
            }
        }
    }
    let mut ordered = comp.to_vec();
    ordered.sort_by_key(|&i| comp.iter().filter(|&&j| prec(j, i)).count());
    Ok(ordered)
}

/// Evaluates every clause of the classification on the raw table.
pub fn classify_blocks(p: &BlockParams) -> ClassificationReport {
    let n = p.n;
    let mut clauses = Vec::new();
    let fail = |msg: String| ClauseStatus::Fail(msg);

    let shape_ok = p.diag.len() == n && p.omega_sq.len() == n;
    let structure = if !shape_ok {
        fail(format!(
            "expected {n} diagonal entries and {n} ω² values, found {} and {}",
            p.diag.len(),
            p.omega_sq.len()
        ))
    } else if let Some(((i, l, j, m), _)) = p.stray.iter().find(|(_, c)| !c.is_zero()) {
        fail(format!(
            "ρ_{}{}{}{} ≠ 0 but {{i,ℓ}} ≠ {{j,m}}",
            one_based(*i),
            one_based(*l),
            one_based(*j),
            one_based(*m)
        ))
    } else if let Some(i) = p.omega_sq.iter().position(Scalar::is_zero) {
        fail(format!("ω_{}² = 0", one_based(i)))
    } else {
        ClauseStatus::Pass
    };
    clauses.push((Clause::Structure, structure));
    if !shape_ok {
        for c in [Clause::A, Clause::B, Clause::C, Clause::DI, Clause::DII, Clause::DIII, Clause::DIV, Clause::CrossBlock] {
            clauses.push((c, ClauseStatus::Skipped));
        }
        return ClassificationReport { clauses, partition: vec![], block_constants: vec![] };
    }

    let zero_slot = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| if i == j { p.diag[i].is_zero() } else { p.off(i, j).is_zero() });
    clauses.push((
        Clause::A,
        match zero_slot {
            Some((i, j)) => fail(format!("ρ_{0}{1}{0}{1} = 0", one_based(i), one_based(j))),
            None => ClauseStatus::Pass,
        },
    ));

    let comps = cross_components(p);
    let mut partition = Vec::with_capacity(comps.len());
    let mut order_err = None;
    for comp in &comps {
        match order_component(p, comp) {
            Ok(o) => partition.push(o),
            Err(e) => {
                order_err.get_or_insert(e);
                partition.push(comp.clone());
            }
        }
    }
    let ordered = order_err.is_none();
    clauses.push((Clause::B, order_err.map_or(ClauseStatus::Pass, fail)));
    // Components are built from the nonzero ρ_{iℓℓi}, so none of them joins two blocks.
    clauses.push((Clause::C, ClauseStatus::Pass));

    if !ordered {
        for c in [Clause::DI, Clause::DII, Clause::DIII, Clause::DIV, Clause::CrossBlock] {
            clauses.push((c, ClauseStatus::Skipped));
        }
        return ClassificationReport { clauses, partition, block_constants: vec![None; comps.len()] };
    }

    let mut d_i = ClauseStatus::Pass;
    let mut d_ii = ClauseStatus::Pass;
    let mut d_iii = ClauseStatus::Pass;
    let mut d_iv = ClauseStatus::Pass;
    let mut constants = Vec::with_capacity(partition.len());
    let set = |slot: &mut ClauseStatus, msg: String| {
        if *slot == ClauseStatus::Pass {
            *slot = ClauseStatus::Fail(msg);
        }
    };
    for block in &partition {
        if block.len() < 2 {
            constants.push(None);
            continue;
        }
        let (s0, s1) = (block[0], block[1]);
        let bc = &p.off(s0, s1) * &p.off(s1, s0);
        let x = p.cross(s0, s1);
        constants.push(Some((bc.clone(), x.clone())));
        if bc.is_zero() {
            set(&mut d_ii, format!("bc = 0 on the component containing {}", one_based(s0)));
        }
        if x.is_zero() {
            set(&mut d_iii, format!("x = 0 on the component containing {}", one_based(s0)));
        }
        for (pi, &i) in block.iter().enumerate() {
            for &j in &block[pi + 1..] {
                let (ii, jj) = (one_based(i), one_based(j));
                if &p.off(i, j) * &p.off(j, i) != bc {
                    set(&mut d_ii, format!("ρ_{ii}{jj}{ii}{jj}·ρ_{jj}{ii}{jj}{ii} ≠ bc"));
                }
                let ai = &p.diag[i];
                let expected = ai.checked_div(&bc).ok().and(bc.checked_div(ai).ok()).map(|q| ai - &q);
                let cij = p.cross(i, j);
                if cij != x {
                    set(&mut d_iii, format!("ρ_{ii}{jj}{jj}{ii} differs from x"));
                } else if expected.as_ref() != Some(&cij) {
                    set(&mut d_iii, format!("ρ_{ii}{jj}{jj}{ii} ≠ ρ_{ii}{ii}{ii}{ii} − bc/ρ_{ii}{ii}{ii}{ii}"));
                }
                let aj = &p.diag[j];
                if ai != aj && &(ai * aj) != &-&bc {
                    set(&mut d_iv, format!("ρ_{ii}{ii}{ii}{ii} ≠ ρ_{jj}{jj}{jj}{jj} and their product ≠ −bc"));
                }
            }
        }
        if bc.is_zero() {
            set(&mut d_i, "bc = 0".into());
            continue;
        }
        let e = block[0];
        let mut prod = Scalar::one();
        for (k, &u) in block.iter().enumerate().skip(1) {
            if k >= 2 {
                let j = block[k - 1];
                prod = &prod * &(&(&p.diag[j] * &p.diag[j]) / &bc);
            }
            let rhs = &(&(&(&p.diag[e] * &p.diag[u]) / &bc) * &prod) * &p.omega_sq[e];
            if rhs != p.omega_sq[u] {
                set(&mut d_i, format!("ω_{}² does not match the product formula", one_based(u)));
            }
        }
    }
    clauses.push((Clause::DI, d_i));
    clauses.push((Clause::DII, d_ii));
    clauses.push((Clause::DIII, d_iii));
    clauses.push((Clause::DIV, d_iv));
    clauses.push((Clause::CrossBlock, cross_block(p, &partition)));
    ClassificationReport { clauses, partition, block_constants: constants }
}

fn cross_block(p: &BlockParams, partition: &[Vec<usize>]) -> ClauseStatus {
    for block in partition.iter().filter(|b| b.len() >= 2) {
        for k in (0..p.n).filter(|k| !block.contains(k)) {
            let product = |i: usize| &p.off(i, k) * &p.off(k, i);
            let first = product(block[0]);
            if let Some(&i) = block[1..].iter().find(|&&i| product(i) != first) {
                let (e, i, k) = (one_based(block[0]), one_based(i), one_based(k));
                return ClauseStatus::Fail(format!("ρ_{e}{k}{e}{k}·ρ_{k}{e}{k}{e} ≠ ρ_{i}{k}{i}{k}·ρ_{k}{i}{k}{i}"));
            }
        }
    }
    ClauseStatus::Pass
}

/// The balanced structure with twist `Σ ω_i² E_ii`, provided every clause holds.
pub fn build_block_structure(p: &BlockParams) -> Result<OrientedQuantumAlgebra> {
    let report = classify_blocks(p);
    if let Some((clause, detail)) = report.first_failure() {
        return Err(OqaError::Classification { clause: clause.to_string(), detail });
    }
    let s = p.structure()?;
    let g = diagonal_twist(s.algebra(), &p.omega_sq);
    s.attach_twist(g)
}

/// Ways of corrupting a valid table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tamper {
    CrossValue,
    Omega,
    OffProduct,
    Diagonal,
    ZeroOff,
    ReverseCross,
    CrossBetweenBlocks,
    CrossBlockProduct,
}

impl Tamper {
    pub const ALL: [Tamper; 8] = [
        Tamper::CrossValue,
        Tamper::Omega,
        Tamper::OffProduct,
        Tamper::Diagonal,
        Tamper::ZeroOff,
        Tamper::ReverseCross,
        Tamper::CrossBetweenBlocks,
        Tamper::CrossBlockProduct,
    ];
}

fn random_rational<R: Rng>(rng: &mut R) -> Scalar {
    let mut num = 0;
    while num == 0 {
        num = rng.gen_range(-6i64..=6);
    }
    let den = rng.gen_range(1i64..=4);
    Scalar::from_ratio(num, den).expect("nonzero denominator")
}

/// A random table satisfying every clause, over a random ordered partition, then optionally tampered.
/// Returns the table and the ordered partition it was generated from.
pub fn random_params<R: Rng>(rng: &mut R, n: usize, tamper: Option<Tamper>) -> (BlockParams, Vec<Vec<usize>>) {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in idx {
        match blocks.last_mut() {
            Some(b) if rng.gen_bool(0.6) => b.push(i),
            _ => blocks.push(vec![i]),
        }
    }
    let mut diag = vec![Scalar::zero(); n];
    let mut off = BTreeMap::new();
    let mut omega_sq = vec![Scalar::zero(); n];
    let mut bcs = Vec::with_capacity(blocks.len());
    for block in &blocks {
        let bc = random_rational(rng);
        let mut a_e = random_rational(rng);
        while &a_e * &a_e == bc {
            a_e = random_rational(rng);
        }
        let other = &(-&bc) / &a_e;
        for &j in block {
            diag[j] = if rng.gen_bool(0.5) { a_e.clone() } else { other.clone() };
        }
        diag[block[0]] = a_e;
        for (pi, &i) in block.iter().enumerate() {
            for &j in &block[pi + 1..] {
                let b = random_rational(rng);
                off.insert((j, i), &bc / &b);
                off.insert((i, j), b);
            }
        }
        let e = block[0];
        omega_sq[e] = random_rational(rng);
        let mut prod = Scalar::one();
        for (k, &u) in block.iter().enumerate().skip(1) {
            if k >= 2 {
                let j = block[k - 1];
                prod = &prod * &(&(&diag[j] * &diag[j]) / &bc);
            }
            omega_sq[u] = &(&(&(&diag[e] * &diag[u]) / &bc) * &prod) * &omega_sq[e];
        }
        bcs.push(bc);
    }
    let block_of: Vec<usize> = (0..n)
        .map(|i| blocks.iter().position(|b| b.contains(&i)).expect("partition covers 0..n"))
        .collect();
    let mut products: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let (bi, bj) = (block_of[i], block_of[j]);
            if bi == bj {
                continue;
            }
            let key = (bi.min(bj), bi.max(bj));
            let prod = products.entry(key).or_insert_with(|| random_rational(rng)).clone();
            let b = random_rational(rng);
            off.insert((j, i), &prod / &b);
            off.insert((i, j), b);
        }
    }
    let mut p = BlockParams::from_blocks(n, &blocks, &bcs, diag, off, omega_sq).expect("generated blocks partition 0..n");
    if let Some(t) = tamper {
        apply_tamper(rng, &mut p, &blocks, t);
    }
    (p, blocks)
}

fn apply_tamper<R: Rng>(rng: &mut R, p: &mut BlockParams, blocks: &[Vec<usize>], t: Tamper) {
    let pairs: Vec<(usize, usize)> = blocks
        .iter()
        .flat_map(|b| b.iter().enumerate().flat_map(move |(k, &i)| b[k + 1..].iter().map(move |&j| (i, j))))
        .collect();
    let n = p.n;
    let nudge = |rng: &mut R| {
        let mut d = random_rational(rng);
        if d.is_one() {
            d = Scalar::from_int(2);
        }
        d
    };
    match t {
        Tamper::CrossValue if !pairs.is_empty() => {
            let (i, j) = *pairs.choose(rng).expect("nonempty");
            let v = &p.cross(i, j) + &random_rational(rng);
            p.cross.insert((i, j), v);
        }
        Tamper::OffProduct if !pairs.is_empty() => {
            let (i, j) = *pairs.choose(rng).expect("nonempty");
            let v = &p.off(i, j) * &nudge(rng);
            p.off.insert((i, j), v);
        }
        Tamper::Diagonal => {
            let j = rng.gen_range(0..n);
            p.diag[j] = &p.diag[j] + &random_rational(rng);
            if p.diag[j].is_zero() {
                p.diag[j] = Scalar::one();
            }
        }
        Tamper::ZeroOff => {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            p.off.insert((i, j), Scalar::zero());
        }
        Tamper::ReverseCross if !pairs.is_empty() => {
            let (i, j) = *pairs.choose(rng).expect("nonempty");
            let v = p.cross.remove(&(i, j)).expect("cross entry present");
            p.cross.insert((j, i), v);
        }
        Tamper::CrossBetweenBlocks if blocks.len() >= 2 => {
            let b1 = rng.gen_range(0..blocks.len());
            let b2 = (b1 + rng.gen_range(1..blocks.len())) % blocks.len();
            let i = *blocks[b1].choose(rng).expect("nonempty block");
            let j = *blocks[b2].choose(rng).expect("nonempty block");
            p.cross.insert((i, j), random_rational(rng));
        }
        Tamper::CrossBlockProduct if blocks.len() >= 2 => {
            let b1 = rng.gen_range(0..blocks.len());
            let b2 = (b1 + rng.gen_range(1..blocks.len())) % blocks.len();
            let i = *blocks[b1].choose(rng).expect("nonempty block");
            let k = *blocks[b2].choose(rng).expect("nonempty block");
            let v = &p.off(i, k) * &nudge(rng);
            p.off.insert((i, k), v);
        }
        _ => {
            let u = rng.gen_range(0..n);
            p.omega_sq[u] = &p.omega_sq[u] * &nudge(rng);
        }
    }
}
