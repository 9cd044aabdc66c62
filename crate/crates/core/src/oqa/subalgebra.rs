use std::collections::BTreeMap;

use oqa_scalar::Scalar;

use super::OrientedQuantumAlgebra;
use crate::algebra::{AlgebraElement, AlgebraMap, Element, TensorSquare};
use crate::automorphism::Automorphism;

/// Row-reduced spanning set over the parameter field.
struct Span {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Span {
    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&f * r);
                }
            }
        }
        v
    }

    /// Adds `v` if it is independent; returns whether it was added.
    fn insert(&mut self, v: &[Scalar]) -> bool {
        let v = self.reduce(v);
        let Some(pivot) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[pivot].inv().expect("pivot is nonzero");
        let v: Vec<Scalar> = v.iter().map(|c| c * &inv).collect();
        for (_, row) in &mut self.rows {
            if !row[pivot].is_zero() {
                let f = row[pivot].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = &*x - &(&f * r);
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

/// Tensorand spans of `u`: the vectors `Σ_i u_ij e_i` (one per `j`) and `Σ_j u_ij e_j` (one per `i`).
fn tensorand_vectors(u: &TensorSquare<Scalar>, dim: usize) -> Vec<Vec<Scalar>> {
    let mut first: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
    let mut second: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
    for ((i, j), c) in u.entries() {
        first.entry(*j).or_insert_with(|| vec![Scalar::zero(); dim])[*i] = c.clone();
        second.entry(*i).or_insert_with(|| vec![Scalar::zero(); dim])[*j] = c.clone();
    }
    first.into_values().chain(second.into_values()).collect()
}

/// A map over the parameter field whose invariant subspaces are those of `t`; odd powers
/// of scaling automorphisms that need square roots are replaced by their squares.
fn rational_map(t: &Automorphism, s: &OrientedQuantumAlgebra) -> AlgebraMap<Scalar> {
    t.to_linear(s.algebra()).unwrap_or_else(|_| {
        t.pow(2)
            .and_then(|t2| t2.to_linear(s.algebra()))
            .expect("even powers of scaling automorphisms are rational")
    })
}

/// Basis of the smallest subalgebra containing `1`, the tensorand spans of `ρ` and `ρ⁻¹`,
/// closed under multiplication and stable under `t_d` and `t_u`.
pub fn minimal_subalgebra(s: &OrientedQuantumAlgebra) -> Vec<AlgebraElement> {
    let alg = s.algebra();
    let dim = alg.dim();
    let maps = [rational_map(s.t_d(), s), rational_map(s.t_u(), s)];
    let mut span = Span { rows: Vec::new() };
    let mut pending: Vec<Vec<Scalar>> = vec![alg.unit().to_vec()];
    pending.extend(tensorand_vectors(s.rho(), dim));
    pending.extend(tensorand_vectors(s.rho_inv(), dim));
    let mut members: Vec<Element<Scalar>> = Vec::new();
    while let Some(v) = pending.pop() {
        if !span.insert(&v) {
            continue;
        }
        let x = Element::from_scalars(v);
        for m in &maps {
            pending.push(m.apply(&x).coeffs().to_vec());
        }
        for y in &members {
            pending.push(alg.mul(&x, y).coeffs().to_vec());
            pending.push(alg.mul(y, &x).coeffs().to_vec());
        }
        pending.push(alg.mul(&x, &x).coeffs().to_vec());
        members.push(x);
    }
    let mut rows = span.rows;
    rows.sort_by_key(|(p, _)| *p);
    rows.into_iter().map(|(_, v)| Element::from_scalars(v)).collect()
}
