use std::collections::BTreeMap;

use oqa_scalar::Scalar;

use super::{diagonal_twist, OrientedQuantumAlgebra};
use crate::algebra::{AlgebraMap, AlgebraSpec, TensorSquare};
use crate::automorphism::Automorphism;
use crate::error::{OqaError, Result};

/// `b_iℓ = value` for every `i < ℓ` (0-based).
pub fn uniform_b(n: usize, value: &Scalar) -> BTreeMap<(usize, usize), Scalar> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |l| (i, l)))
        .map(|k| (k, value.clone()))
        .collect()
}

fn nonzero(s: &Scalar, what: &str) -> Result<()> {
    if s.is_zero() {
        return Err(OqaError::Parameter(format!("{what} must be invertible")));
    }
    Ok(())
}

/// `ρ_{a,B,C}` on `M_n` with `c_ℓi = bc / b_iℓ`.
pub fn build_rho_abc(
    n: usize,
    a: &Scalar,
    bc: &Scalar,
    b: &BTreeMap<(usize, usize), Scalar>,
) -> Result<TensorSquare<Scalar>> {
    if n == 0 {
        return Err(OqaError::Parameter("n must be at least 1".into()));
    }
    nonzero(a, "a")?;
    nonzero(bc, "bc")?;
    let alg = AlgebraSpec::matrix(n);
    let e = |i: usize, j: usize| alg.matrix_unit(i, j);
    let x = a - &(bc / a);
    let mut rho = TensorSquare::zero(n * n);
    for i in 0..n {
        rho.add_term(e(i, i), e(i, i), a.clone());
        for l in i + 1..n {
            let b_il = b
                .get(&(i, l))
                .ok_or_else(|| OqaError::Parameter(format!("missing b_{}{}", i + 1, l + 1)))?;
            nonzero(b_il, &format!("b_{}{}", i + 1, l + 1))?;
            rho.add_term(e(i, l), e(l, i), x.clone());
            rho.add_term(e(i, i), e(l, l), b_il.clone());
            rho.add_term(e(l, l), e(i, i), bc / b_il);
        }
    }
    Ok(rho)
}

/// `ω_i² = (a²/bc)^{i−1} ω_1²`.
pub fn balanced_omega_sq(n: usize, a: &Scalar, bc: &Scalar, omega1_sq: &Scalar) -> Result<Vec<Scalar>> {
    let r = (a * a).checked_div(bc)?;
    let mut out = Vec::with_capacity(n);
    let mut w = omega1_sq.clone();
    for _ in 0..n {
        out.push(w.clone());
        w = &w * &r;
    }
    Ok(out)
}

/// The balanced structure `(M_n, ρ_{a,B,C}, t)` with twist `G = Σ ω_i² E_ii`.
pub fn build_balanced_mn(
    n: usize,
    a: &Scalar,
    bc: &Scalar,
    b: &BTreeMap<(usize, usize), Scalar>,
    omega1_sq: &Scalar,
) -> Result<OrientedQuantumAlgebra> {
    if n < 2 {
        return Err(OqaError::Parameter("n must be at least 2".into()));
    }
    nonzero(omega1_sq, "ω_1²")?;
    let a2 = a * a;
    if a2 == *bc {
        return Err(OqaError::Parameter("a² = bc".into()));
    }
    if a2.is_one() {
        return Err(OqaError::Parameter("a² = 1".into()));
    }
    let rho = build_rho_abc(n, a, bc, b)?;
    let omega_sq = balanced_omega_sq(n, a, bc, omega1_sq)?;
    let t = Automorphism::scaling(omega_sq.clone());
    let alg = AlgebraSpec::matrix(n);
    let g = diagonal_twist(&alg, &omega_sq);
    OrientedQuantumAlgebra::new(alg, rho, t.clone(), t)?.attach_twist(g)
}

/// Sweedler's algebra with `ρ_α`, `t_d = 1` and `t_u = s⁻²`.
pub fn sweedler_oqa(alpha: &Scalar) -> Result<OrientedQuantumAlgebra> {
    let alg = AlgebraSpec::sweedler();
    let half = Scalar::from_ratio(1, 2)?;
    let h_alpha = alpha * &half;
    let (one, a, x, ax) = (0, 1, 2, 3);
    let mut rho = TensorSquare::zero(4);
    rho.add_term(one, one, half.clone());
    rho.add_term(one, a, half.clone());
    rho.add_term(a, one, half.clone());
    rho.add_term(a, a, -&half);
    rho.add_term(x, x, h_alpha.clone());
    rho.add_term(x, ax, h_alpha.clone());
    rho.add_term(ax, ax, h_alpha.clone());
    rho.add_term(ax, x, -&h_alpha);
    let s_minus_2 = AlgebraMap::diagonal(vec![Scalar::one(), Scalar::one(), -Scalar::one(), -Scalar::one()]);
    OrientedQuantumAlgebra::new(alg, rho, Automorphism::Identity, Automorphism::Linear(s_minus_2))
}
