//! Algebra automorphisms used as `t_d`, `t_u`.
//!
//! Diagonal automorphisms of `M_n` of the form `E_ij ↦ (ω_i/ω_j)^p E_ij` are
//! kept in terms of the squares `ω_i²`. They become ordinary matrices when
//! the required square roots exist in the parameter field (always for even
//! `p`), and otherwise over a [`Surd`] extension.

use oqa_scalar::Scalar;

use crate::algebra::{AlgebraMap, AlgebraSpec};
use crate::coeff::Coeff;
use crate::error::{OqaError, Result};
use crate::surd::{Surd, SurdField};

#[derive(Clone, Debug, PartialEq)]
pub enum Automorphism {
    Identity,
    Linear(AlgebraMap<Scalar>),
    /// `E_ij ↦ (ω_i/ω_j)^power E_ij` on `M_n`, with `ω_i/ω_j` taken as `√(ω_i²/ω_1²) / √(ω_j²/ω_1²)`.
    Scaling { omega_sq: Vec<Scalar>, power: i64 },
}

impl Automorphism {
    pub fn scaling(omega_sq: Vec<Scalar>) -> Automorphism {
        Automorphism::Scaling { omega_sq, power: 1 }
    }

    /// Ratios `v_i = ω_i²/ω_1²`.
    fn ratios(omega_sq: &[Scalar]) -> Result<Vec<Scalar>> {
        let base = omega_sq
            .first()
            .ok_or_else(|| OqaError::Automorphism("empty ω² list".into()))?;
        omega_sq
            .iter()
            .map(|w| w.checked_div(base).map_err(|_| OqaError::Automorphism("ω_1² is zero".into())))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Automorphism::Identity => true,
            Automorphism::Linear(m) => *m == AlgebraMap::identity(m.dim()),
            Automorphism::Scaling { omega_sq, power } => {
                *power == 0 || omega_sq.iter().all(|w| *w == omega_sq[0])
            }
        }
    }

    pub fn pow(&self, k: i64) -> Result<Automorphism> {
        Ok(match self {
            Automorphism::Identity => Automorphism::Identity,
            Automorphism::Linear(m) => Automorphism::Linear(m.pow(k)?),
            Automorphism::Scaling { omega_sq, power } => Automorphism::Scaling {
                omega_sq: omega_sq.clone(),
                power: power * k,
            },
        })
    }

    pub fn inverse(&self) -> Result<Automorphism> {
        self.pow(-1)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism, alg: &AlgebraSpec) -> Result<Automorphism> {
        match (self, other) {
            (Automorphism::Identity, x) | (x, Automorphism::Identity) => Ok(x.clone()),
            (
                Automorphism::Scaling { omega_sq: w1, power: p1 },
                Automorphism::Scaling { omega_sq: w2, power: p2 },
            ) if w1 == w2 => Ok(Automorphism::Scaling { omega_sq: w1.clone(), power: p1 + p2 }),
            _ => {
                let f = self.to_linear(alg)?;
                let g = other.to_linear(alg)?;
                Ok(Automorphism::Linear(f.compose(&g)))
            }
        }
    }

    /// The map as a matrix over the parameter field.
    pub fn to_linear(&self, alg: &AlgebraSpec) -> Result<AlgebraMap<Scalar>> {
        match self {
            Automorphism::Identity => Ok(AlgebraMap::identity(alg.dim())),
            Automorphism::Linear(m) => {
                if m.dim() != alg.dim() {
                    return Err(OqaError::Dimension { expected: alg.dim(), found: m.dim() });
                }
                Ok(m.clone())
            }
            Automorphism::Scaling { omega_sq, power } => {
                let n = scaling_size(alg, omega_sq)?;
                let v = Self::ratios(omega_sq)?;
                let factors: Vec<Scalar> = if power % 2 == 0 {
                    // (ω_i/ω_j)^{2h} = (v_i/v_j)^h
                    let h = power / 2;
                    (0..n * n)
                        .map(|k| (&v[k / n] / &v[k % n]).pow(h))
                        .collect::<std::result::Result<_, _>>()?
                } else {
                    let roots: Vec<Scalar> = v
                        .iter()
                        .map(|x| {
                            x.sqrt().ok_or_else(|| {
                                OqaError::Automorphism(
                                    "odd power of a scaling automorphism needs square roots outside the parameter field"
                                        .into(),
                                )
                            })
                        })
                        .collect::<Result<_>>()?;
                    (0..n * n)
                        .map(|k| (&roots[k / n] / &roots[k % n]).pow(*power))
                        .collect::<std::result::Result<_, _>>()?
                };
                Ok(AlgebraMap::diagonal(factors))
            }
        }
    }

    pub fn is_linear_over_base(&self, alg: &AlgebraSpec) -> bool {
        self.to_linear(alg).is_ok()
    }

    /// Matrices of several automorphisms over one common square-root extension.
    pub fn surd_maps(autos: &[&Automorphism], alg: &AlgebraSpec) -> Result<Vec<AlgebraMap<Surd>>> {
        let mut radicands = Vec::new();
        let mut offsets = Vec::with_capacity(autos.len());
        for a in autos {
            offsets.push(radicands.len());
            if let Automorphism::Scaling { omega_sq, power } = a {
                if power % 2 != 0 {
                    scaling_size(alg, omega_sq)?;
                    radicands.extend(Self::ratios(omega_sq)?);
                }
            }
        }
        let (_, roots) = SurdField::sqrt_all(&radicands)?;
        let mut out = Vec::with_capacity(autos.len());
        for (a, off) in autos.iter().zip(offsets) {
            let map = match a {
                Automorphism::Scaling { omega_sq, power } if power % 2 != 0 => {
                    let n = omega_sq.len();
                    let r = &roots[off..off + n];
                    // ω_i/ω_j = √v_i · √v_j / v_j
                    let v = Self::ratios(omega_sq)?;
                    let ratio = |i: usize, j: usize| r[i].mul(&r[j]).scale(&v[j].inv().expect("ω² nonzero"));
                    let entries = (0..n * n)
                        .map(|k| {
                            let (i, j) = (k / n, k % n);
                            let base = if *power > 0 { ratio(i, j) } else { ratio(j, i) };
                            let mut acc = Surd::one();
                            for _ in 0..power.unsigned_abs() {
                                acc = acc.mul(&base);
                            }
                            acc
                        })
                        .collect();
                    AlgebraMap::diagonal(entries)
                }
                other => other.to_linear(alg)?.lift(),
            };
            out.push(map);
        }
        Ok(out)
    }

    pub fn substitute(&self, bindings: &std::collections::HashMap<usize, Scalar>) -> Result<Automorphism> {
        Ok(match self {
            Automorphism::Identity => Automorphism::Identity,
            Automorphism::Linear(m) => Automorphism::Linear(m.substitute(bindings)?),
            Automorphism::Scaling { omega_sq, power } => Automorphism::Scaling {
                omega_sq: omega_sq
                    .iter()
                    .map(|w| w.substitute(bindings))
                    .collect::<std::result::Result<_, _>>()?,
                power: *power,
            },
        })
    }
}

fn scaling_size(alg: &AlgebraSpec, omega_sq: &[Scalar]) -> Result<usize> {
    match alg.matrix_size() {
        Some(n) if n == omega_sq.len() => Ok(n),
        Some(n) => Err(OqaError::Dimension { expected: n, found: omega_sq.len() }),
        None => Err(OqaError::Automorphism("scaling automorphisms are defined on M_n only".into())),
    }
}
