//! Oriented quantum algebra structures `(A, ρ, t_d, t_u)` with optional twist `G`.

mod axioms;
mod builders;
mod subalgebra;
pub mod blocks;

use std::collections::HashMap;

use oqa_scalar::Scalar;

use crate::algebra::{tensor_invert, AlgebraElement, AlgebraMap, AlgebraSpec, Element, TensorSquare};
use crate::automorphism::Automorphism;
use crate::coeff::Coeff;
use crate::error::{OqaError, Result};
use crate::surd::Surd;

pub use axioms::{check_axioms, check_axioms_full, AxiomReport, AxiomWitness};
pub use builders::{build_balanced_mn, build_rho_abc, balanced_omega_sq, sweedler_oqa, uniform_b};
pub use subalgebra::minimal_subalgebra;
pub use blocks::{build_block_structure, classify_blocks, Clause, BlockParams, ClassificationReport};

/// An invertible element `G` together with `G⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct Twist {
    g: AlgebraElement,
    g_inv: AlgebraElement,
}

impl Twist {
    pub fn g(&self) -> &AlgebraElement {
        &self.g
    }

    pub fn g_inv(&self) -> &AlgebraElement {
        &self.g_inv
    }

    /// `G^d` for any integer `d`.
    pub fn power(&self, alg: &AlgebraSpec, d: i64) -> AlgebraElement {
        let base = if d < 0 { &self.g_inv } else { &self.g };
        let mut acc = alg.one();
        for _ in 0..d.unsigned_abs() {
            acc = alg.mul(&acc, base);
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrientedQuantumAlgebra {
    algebra: AlgebraSpec,
    rho: TensorSquare<Scalar>,
    rho_inv: TensorSquare<Scalar>,
    t_d: Automorphism,
    t_u: Automorphism,
    twist: Option<Twist>,
}

impl OrientedQuantumAlgebra {
    /// Assembles a structure; `ρ` must be invertible. The axioms are not checked here.
    pub fn new(algebra: AlgebraSpec, rho: TensorSquare<Scalar>, t_d: Automorphism, t_u: Automorphism) -> Result<Self> {
        if rho.dim() != algebra.dim() {
            return Err(OqaError::Dimension { expected: algebra.dim(), found: rho.dim() });
        }
        let rho_inv = tensor_invert(&algebra, &rho)?;
        Ok(OrientedQuantumAlgebra { algebra, rho, rho_inv, t_d, t_u, twist: None })
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.algebra
    }

    pub fn rho(&self) -> &TensorSquare<Scalar> {
        &self.rho
    }

    pub fn rho_inv(&self) -> &TensorSquare<Scalar> {
        &self.rho_inv
    }

    pub fn t_d(&self) -> &Automorphism {
        &self.t_d
    }

    pub fn t_u(&self) -> &Automorphism {
        &self.t_u
    }

    pub fn twist(&self) -> Option<&Twist> {
        self.twist.as_ref()
    }

    pub fn is_balanced(&self) -> bool {
        self.t_d == self.t_u
    }

    pub fn is_standard(&self) -> bool {
        self.t_d.is_identity()
    }

    /// `(t_d, t_u)` as matrices over a common square-root extension of the parameter field.
    pub fn surd_maps(&self) -> Result<(AlgebraMap<Surd>, AlgebraMap<Surd>)> {
        let mut maps = Automorphism::surd_maps(&[&self.t_d, &self.t_u], &self.algebra)?;
        let t_u = maps.pop().expect("two maps");
        let t_d = maps.pop().expect("two maps");
        Ok((t_d, t_u))
    }

    /// Attaches `G` after checking invertibility, `t_d(G) = t_u(G) = G` and `t_d∘t_u = G(·)G⁻¹` on the basis.
    pub fn attach_twist(&self, g: AlgebraElement) -> Result<Self> {
        let alg = &self.algebra;
        if g.dim() != alg.dim() {
            return Err(OqaError::Dimension { expected: alg.dim(), found: g.dim() });
        }
        let g_inv = alg
            .invert(&g)
            .map_err(|_| OqaError::Twist("G is not invertible".into()))?;
        let (t_d, t_u) = self.surd_maps()?;
        let gs: Element<Surd> = g.lift();
        let gs_inv: Element<Surd> = g_inv.lift();
        if t_d.apply(&gs) != gs {
            return Err(OqaError::Twist("t_d(G) ≠ G".into()));
        }
        if t_u.apply(&gs) != gs {
            return Err(OqaError::Twist("t_u(G) ≠ G".into()));
        }
        let both = t_d.compose(&t_u);
        for k in 0..alg.dim() {
            let e = alg.basis::<Surd>(k);
            let conj = alg.mul(&alg.mul(&gs, &e), &gs_inv);
            if both.apply(&e) != conj {
                return Err(OqaError::Twist(format!(
                    "(t_d∘t_u)({}) ≠ G {} G⁻¹",
                    alg.labels()[k],
                    alg.labels()[k]
                )));
            }
        }
        let mut out = self.clone();
        out.twist = Some(Twist { g, g_inv });
        Ok(out)
    }

    pub fn without_twist(&self) -> Self {
        let mut out = self.clone();
        out.twist = None;
        out
    }

    /// `(A, ρ, 1_A, t_d∘t_u)`, keeping the twist.
    pub fn standardize(&self) -> Result<Self> {
        let report = check_axioms(self);
        if !report.holds() {
            return Err(OqaError::InvalidStructure(format!("cannot standardize: {}", report.summary())));
        }
        let t_u = self.t_d.compose(&self.t_u, &self.algebra)?;
        Ok(OrientedQuantumAlgebra {
            algebra: self.algebra.clone(),
            rho: self.rho.clone(),
            rho_inv: self.rho_inv.clone(),
            t_d: Automorphism::Identity,
            t_u,
            twist: self.twist.clone(),
        })
    }

    /// `(A^op, ρ, t_d, t_u)` with twist `G⁻¹`.
    pub fn opposite(&self) -> Self {
        OrientedQuantumAlgebra {
            algebra: self.algebra.opposite(),
            rho: self.rho.clone(),
            rho_inv: self.rho_inv.clone(),
            t_d: self.t_d.clone(),
            t_u: self.t_u.clone(),
            twist: self.twist.as_ref().map(|t| Twist { g: t.g_inv.clone(), g_inv: t.g.clone() }),
        }
    }

    /// Replaces parameter symbols by values; fails if a denominator vanishes or `ρ` becomes singular.
    pub fn substitute(&self, bindings: &HashMap<usize, Scalar>) -> Result<Self> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let rho = self.rho.substitute(bindings)?;
        let rho_inv = self.rho_inv.substitute(bindings)?;
        let out = OrientedQuantumAlgebra {
            algebra: self.algebra.clone(),
            rho_inv,
            t_d: self.t_d.substitute(bindings)?,
            t_u: self.t_u.substitute(bindings)?,
            twist: None,
            rho,
        };
        let one = TensorSquare::one(&out.algebra);
        if crate::algebra::tensor_mul(&out.algebra, &out.rho, &out.rho_inv, false) != one {
            return Err(OqaError::Singular);
        }
        match &self.twist {
            None => Ok(out),
            Some(t) => out.attach_twist(t.g.substitute(bindings)?),
        }
    }

    /// The trace functional used for closed diagrams by default: the matrix trace on `M_n`.
    pub fn default_trace(&self) -> Option<Vec<Scalar>> {
        matrix_trace(&self.algebra)
    }

    /// Checks that `tr` is tracelike and invariant under `t_d` and `t_u`.
    pub fn check_trace(&self, tr: &[Scalar]) -> Result<()> {
        let alg = &self.algebra;
        if tr.len() != alg.dim() {
            return Err(OqaError::Dimension { expected: alg.dim(), found: tr.len() });
        }
        let apply = |x: &Element<Scalar>| -> Scalar {
            x.coeffs().iter().zip(tr).map(|(c, t)| c * t).sum()
        };
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let xy = alg.mul(&alg.basis::<Scalar>(i), &alg.basis(j));
                let yx = alg.mul(&alg.basis::<Scalar>(j), &alg.basis(i));
                if apply(&xy) != apply(&yx) {
                    return Err(OqaError::Trace(format!(
                        "tr({0}{1}) ≠ tr({1}{0})",
                        alg.labels()[i],
                        alg.labels()[j]
                    )));
                }
            }
        }
        let (t_d, t_u) = self.surd_maps()?;
        for (name, t) in [("t_d", &t_d), ("t_u", &t_u)] {
            for k in 0..alg.dim() {
                let img = t.apply(&alg.basis::<Surd>(k));
                let lhs = img
                    .coeffs()
                    .iter()
                    .zip(tr)
                    .fold(Surd::zero(), |acc, (c, t)| acc.add(&c.scale(t)));
                if lhs != Surd::from(tr[k].clone()) {
                    return Err(OqaError::Trace(format!("tr∘{name} ≠ tr on {}", alg.labels()[k])));
                }
            }
        }
        Ok(())
    }
}

/// Matrix trace on `M_n` as a coefficient vector.
pub fn matrix_trace(alg: &AlgebraSpec) -> Option<Vec<Scalar>> {
    let n = alg.matrix_size()?;
    let mut tr = vec![Scalar::zero(); n * n];
    for i in 0..n {
        tr[i * n + i] = Scalar::one();
    }
    Some(tr)
}

/// `Σ ω_i² E_ii`.
pub fn diagonal_twist(alg: &AlgebraSpec, omega_sq: &[Scalar]) -> AlgebraElement {
    let n = alg.matrix_size().expect("matrix algebra");
    let mut g = vec![Scalar::zero(); n * n];
    for (i, w) in omega_sq.iter().enumerate() {
        g[i * n + i] = w.clone();
    }
    Element::from_scalars(g)
}
