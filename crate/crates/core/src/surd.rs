//! Finite extensions `K(√R₁, …, √Rₖ)` of the parameter field.
//!
//! Automorphisms such as `E_ij ↦ (ω_i/ω_j) E_ij` are defined from the squares
//! `ω_i²` alone, so checking them against the axioms can require square roots
//! that do not exist in the parameter field. The radicands kept here are
//! independent modulo squares, which makes the representation of each element
//! unique: an element is a sum over subsets `S` of `c_S · ∏_{k∈S} √R_k`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use oqa_scalar::Scalar;

use crate::coeff::Coeff;
use crate::error::{OqaError, Result};

const MAX_RADICANDS: usize = 12;

#[derive(Debug, Default, PartialEq)]
pub struct SurdField {
    radicands: Vec<Scalar>,
}

impl SurdField {
    pub fn radicands(&self) -> &[Scalar] {
        &self.radicands
    }

    fn product(&self, mask: u32) -> Scalar {
        let mut p = Scalar::one();
        for (k, r) in self.radicands.iter().enumerate() {
            if mask & (1 << k) != 0 {
                p = &p * r;
            }
        }
        p
    }

    /// Writes `√v` as `(mask, c)` with `√v = c · ∏_{k∈mask} √R_k`, adding a radicand if needed.
    fn adjoin(&mut self, v: &Scalar) -> Result<(u32, Scalar)> {
        if v.is_zero() {
            return Ok((0, Scalar::zero()));
        }
        let k = self.radicands.len();
        for mask in 0..(1u32 << k) {
            if let Some(c) = (v / &self.product(mask)).sqrt() {
                return Ok((mask, c));
            }
        }
        if k == MAX_RADICANDS {
            return Err(OqaError::Automorphism("too many independent square roots".into()));
        }
        self.radicands.push(v.clone());
        Ok((1 << k, Scalar::one()))
    }

    /// Square roots of all `values` in a common extension (positive branch where a root exists in the base field).
    pub fn sqrt_all(values: &[Scalar]) -> Result<(Arc<SurdField>, Vec<Surd>)> {
        let mut field = SurdField::default();
        let mut parts = Vec::with_capacity(values.len());
        for v in values {
            parts.push(field.adjoin(v)?);
        }
        let field = Arc::new(field);
        let roots = parts
            .into_iter()
            .map(|(mask, c)| Surd::monomial(mask, c, Some(field.clone())))
            .collect();
        Ok((field, roots))
    }
}

/// Element of a [`SurdField`] extension.
#[derive(Clone)]
pub struct Surd {
    terms: BTreeMap<u32, Scalar>,
    field: Option<Arc<SurdField>>,
}

impl Surd {
    fn monomial(mask: u32, c: Scalar, field: Option<Arc<SurdField>>) -> Surd {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mask, c);
        }
        Surd { terms, field }
    }

    /// The value as a base-field scalar, if it has no radical part.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> &BTreeMap<u32, Scalar> {
        &self.terms
    }

    fn field_of(&self, other: &Surd) -> Option<Arc<SurdField>> {
        self.field.clone().or_else(|| other.field.clone())
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if *m == 0 {
                    format!("{c:?}")
                } else {
                    format!("({c:?})*√[{m:b}]")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl From<Scalar> for Surd {
    fn from(s: Scalar) -> Self {
        Surd::monomial(0, s, None)
    }
}

impl Coeff for Surd {
    fn zero() -> Self {
        Surd { terms: BTreeMap::new(), field: None }
    }
    fn one() -> Self {
        Surd::from(Scalar::one())
    }
    fn from_scalar(s: Scalar) -> Self {
        Surd::from(s)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let v = match terms.get(m) {
                Some(x) => x + c,
                None => c.clone(),
            };
            if v.is_zero() {
                terms.remove(m);
            } else {
                terms.insert(*m, v);
            }
        }
        Surd { terms, field: self.field_of(other) }
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let field = self.field_of(other);
        let mut acc = Surd { terms: BTreeMap::new(), field: field.clone() };
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let shared = m1 & m2;
                let mut c = c1 * c2;
                if shared != 0 {
                    let f = field.as_ref().expect("radical terms carry their field");
                    c = &c * &f.product(shared);
                }
                acc = acc.add(&Surd::monomial(m1 ^ m2, c, field.clone()));
            }
        }
        acc
    }
    fn neg(&self) -> Self {
        Surd {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
            field: self.field.clone(),
        }
    }
    fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Surd::zero();
        }
        Surd {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
            field: self.field.clone(),
        }
    }
}
