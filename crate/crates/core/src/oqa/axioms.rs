use std::fmt::Write as _;

use oqa_scalar::Scalar;

use super::OrientedQuantumAlgebra;
use crate::algebra::{apply_map_tensor, qybe_report, tensor_mul, AlgebraMap, AlgebraSpec, TensorSquare};
use crate::coeff::Coeff;
use crate::surd::Surd;

/// Where an axiom breaks: the axiom name, the basis labels of the slot, and a short description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomWitness {
    pub axiom: String,
    pub slot: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub qa1: bool,
    pub qa2: bool,
    pub qa3: bool,
    /// `t_d`, `t_u` are commuting algebra automorphisms.
    pub automorphisms: bool,
    pub witnesses: Vec<AxiomWitness>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.qa1 && self.qa2 && self.qa3 && self.automorphisms
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "qa.1={} qa.2={} qa.3={} automorphisms={}",
            self.qa1, self.qa2, self.qa3, self.automorphisms
        );
        for w in &self.witnesses {
            let _ = write!(out, "; {} fails at ({}): {}", w.axiom, w.slot.join(", "), w.detail);
        }
        out
    }
}

/// Checks (qa.1)–(qa.3) and the automorphism conditions, reporting the first witness per failing axiom.
pub fn check_axioms(s: &OrientedQuantumAlgebra) -> AxiomReport {
    run(s, false)
}

/// As [`check_axioms`], listing every failing slot.
pub fn check_axioms_full(s: &OrientedQuantumAlgebra) -> AxiomReport {
    run(s, true)
}

fn run(s: &OrientedQuantumAlgebra, full: bool) -> AxiomReport {
    let alg = s.algebra();
    let mut witnesses = Vec::new();

    let qybe = qybe_report(alg, s.rho());
    if let Some((i, j, k)) = qybe.witness {
        witnesses.push(AxiomWitness {
            axiom: "qa.3".into(),
            slot: labels(alg, &[i, j, k]),
            detail: "ρ12ρ13ρ23 ≠ ρ23ρ13ρ12".into(),
        });
    }

    let linear = s.t_d().to_linear(alg).and_then(|d| Ok((d, s.t_u().to_linear(alg)?)));
    let (qa1, qa2, auto) = match linear {
        Ok((t_d, t_u)) => with_maps(alg, s.rho(), s.rho_inv(), &t_d, &t_u, full, &mut witnesses),
        Err(_) => match s.surd_maps() {
            Ok((t_d, t_u)) => with_maps(alg, &s.rho().lift(), &s.rho_inv().lift::<Surd>(), &t_d, &t_u, full, &mut witnesses),
            Err(e) => {
                witnesses.push(AxiomWitness {
                    axiom: "automorphisms".into(),
                    slot: vec![],
                    detail: e.to_string(),
                });
                (false, false, false)
            }
        },
    };
    AxiomReport { qa1, qa2, qa3: qybe.holds, automorphisms: auto, witnesses }
}

fn labels(alg: &AlgebraSpec, idx: &[usize]) -> Vec<String> {
    idx.iter()
        .map(|&i| alg.labels().get(i).cloned().unwrap_or_else(|| "1".into()))
        .collect()
}

fn diff_slots<C: Coeff>(lhs: &TensorSquare<C>, rhs: &TensorSquare<C>, full: bool) -> Vec<(usize, usize)> {
    let d = lhs.sub(rhs);
    let keys = d.entries().keys().copied();
    if full {
        keys.collect()
    } else {
        keys.take(1).collect()
    }
}

fn with_maps<C: Coeff>(
    alg: &AlgebraSpec,
    rho: &TensorSquare<C>,
    rho_inv: &TensorSquare<C>,
    t_d: &AlgebraMap<C>,
    t_u: &AlgebraMap<C>,
    full: bool,
    witnesses: &mut Vec<AxiomWitness>,
) -> (bool, bool, bool) {
    let mut push = |axiom: &str, slots: Vec<(usize, usize)>, detail: &str| {
        for (i, j) in slots {
            witnesses.push(AxiomWitness {
                axiom: axiom.into(),
                slot: labels(alg, &[i, j]),
                detail: detail.into(),
            });
        }
    };

    let id = AlgebraMap::<C>::identity(alg.dim());
    let one = TensorSquare::<C>::one(alg);
    let u = apply_map_tensor(&id, t_u, rho);
    let v = apply_map_tensor(t_d, &id, rho_inv);
    let uv = tensor_mul(alg, &u, &v, true);
    let vu = tensor_mul(alg, &v, &u, true);
    let (ok_uv, ok_vu) = (uv == one, vu == one);
    if !ok_uv {
        push("qa.1", diff_slots(&uv, &one, full), "(1⊗t_u)(ρ)·(t_d⊗1)(ρ⁻¹) ≠ 1⊗1 in A⊗A^op");
    }
    if !ok_vu && (full || ok_uv) {
        push("qa.1", diff_slots(&vu, &one, full), "(t_d⊗1)(ρ⁻¹)·(1⊗t_u)(ρ) ≠ 1⊗1 in A⊗A^op");
    }
    let qa1 = ok_uv && ok_vu;

    let mut qa2 = true;
    for (name, t) in [("t_d", t_d), ("t_u", t_u)] {
        let img = apply_map_tensor(t, t, rho);
        if img != *rho {
            if qa2 || full {
                push("qa.2", diff_slots(&img, rho, full), &format!("({name}⊗{name})(ρ) ≠ ρ"));
            }
            qa2 = false;
        }
    }

    let mut auto = true;
    for (name, t) in [("t_d", t_d), ("t_u", t_u)] {
        if let Some((i, j)) = t.algebra_map_failure(alg) {
            auto = false;
            let detail = if i == alg.dim() {
                format!("{name} does not fix the unit")
            } else {
                format!("{name} is not multiplicative")
            };
            witnesses.push(AxiomWitness {
                axiom: "automorphisms".into(),
                slot: if i == alg.dim() { vec![] } else { labels(alg, &[i, j]) },
                detail,
            });
        }
    }
    let du = t_d.compose(t_u);
    let ud = t_u.compose(t_d);
    if du != ud {
        auto = false;
        let k = (0..alg.dim()).find(|&k| du.column(k) != ud.column(k)).unwrap_or(0);
        witnesses.push(AxiomWitness {
            axiom: "automorphisms".into(),
            slot: labels(alg, &[k]),
            detail: "t_d∘t_u ≠ t_u∘t_d".into(),
        });
    }
    if auto && !(maps_invertible(t_d) && maps_invertible(t_u)) {
        auto = false;
        witnesses.push(AxiomWitness {
            axiom: "automorphisms".into(),
            slot: vec![],
            detail: "automorphism is not invertible".into(),
        });
    }
    (qa1, qa2, auto)
}

/// Invertibility test for the maps that occur here: diagonal maps need nonzero entries; others are
/// checked over the parameter field when possible.
fn maps_invertible<C: Coeff>(t: &AlgebraMap<C>) -> bool {
    if t.is_diagonal() {
        return (0..t.dim()).all(|j| !t.column(j).is_empty());
    }
    let as_scalar: Option<Vec<Vec<(usize, Scalar)>>> = (0..t.dim())
        .map(|j| {
            t.column(j)
                .iter()
                .map(|(k, c)| scalar_of(c).map(|s| (*k, s)))
                .collect()
        })
        .collect();
    match as_scalar {
        Some(cols) => AlgebraMap::from_columns(cols).inverse().is_ok(),
        None => true,
    }
}

fn scalar_of<C: Coeff>(c: &C) -> Option<Scalar> {
    let any: &dyn std::any::Any = c;
    if let Some(s) = any.downcast_ref::<Scalar>() {
        return Some(s.clone());
    }
    any.downcast_ref::<Surd>().and_then(Surd::as_scalar)
}
