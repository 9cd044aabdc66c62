use std::collections::BTreeMap;
use std::fmt;

use oqa_scalar::Scalar;

use super::{conway, homfly, SkeinPolynomial};
use crate::algebra::AlgebraElement;
use crate::diagram::{CurlFamily, MorseDiagram, SliceKind};
use crate::error::{OqaError, Result};
use crate::invariant::Evaluator;
use crate::oqa::{build_block_structure, classify_blocks, BlockParams, OrientedQuantumAlgebra};

/// `xp` plays `L₊` in the skein relation satisfied by `sbc^{−writhe}·F`.
pub const XP_IS_SKEIN_POSITIVE: bool = true;

/// Closed-form data of a single-block balanced structure on `M_n` with `a_1 = a`, every
/// `a_i ∈ {a, −bc/a}`, `b_iℓ = c_ℓi = √bc` and `ω_i² = −(−r)^{−[a_i = a]} r^{η₊(0:i) − η₋(0:i)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleBlock {
    pub n: usize,
    pub a: Scalar,
    pub sbc: Scalar,
    /// `a_i = a` where true, `−bc/a` where false.
    pub signs: Vec<bool>,
    pub diag: Vec<Scalar>,
    /// `a/√bc`.
    pub q: Scalar,
    /// `a²/bc`.
    pub r: Scalar,
    /// `η₊(0:n) − η₋(0:n)`.
    pub eta: i64,
    pub omega_sq: Vec<Scalar>,
    pub tr_g: Scalar,
    pub tr_g_inv: Scalar,
    /// `r^{η − 1}`.
    pub hbar: Scalar,
    /// `q^{1 − η}`, the rotation factor.
    pub rho_norm: Scalar,
    /// `rho_norm · Tr(G)`.
    pub kappa: Scalar,
}

impl SingleBlock {
    pub fn new(a: &Scalar, sbc: &Scalar, signs: &[bool]) -> Result<SingleBlock> {
        let n = signs.len();
        if n < 2 || !signs[0] {
            return Err(OqaError::Parameter("need n ≥ 2 and a_1 = a".into()));
        }
        let bc = sbc * sbc;
        let r = (a * a).checked_div(&bc)?;
        if r.is_one() || (&r + &Scalar::one()).is_zero() || (a * a).is_one() {
            return Err(OqaError::Parameter("a² must differ from bc, −bc and 1".into()));
        }
        let q = a.checked_div(sbc)?;
        let other = -&bc.checked_div(a)?;
        let diag: Vec<Scalar> = signs.iter().map(|&s| if s { a.clone() } else { other.clone() }).collect();
        let mut ctx = SingleBlock {
            n,
            a: a.clone(),
            sbc: sbc.clone(),
            signs: signs.to_vec(),
            diag,
            q: q.clone(),
            r: r.clone(),
            eta: 0,
            omega_sq: vec![],
            tr_g: Scalar::zero(),
            tr_g_inv: Scalar::zero(),
            hbar: Scalar::zero(),
            rho_norm: Scalar::zero(),
            kappa: Scalar::zero(),
        };
        ctx.eta = ctx.eta_plus(0, n) - ctx.eta_minus(0, n);
        ctx.omega_sq = ctx.omega_sq_at(&r);
        ctx.tr_g = ctx.omega_sq.iter().cloned().sum();
        ctx.tr_g_inv = ctx.omega_sq.iter().map(|w| w.inv().expect("ω² ≠ 0")).sum();
        ctx.hbar = r.powi(ctx.eta - 1);
        ctx.rho_norm = q.powi(1 - ctx.eta);
        ctx.kappa = &ctx.rho_norm * &ctx.tr_g;
        Ok(ctx)
    }

    /// Recovers the data from a structure on `M_n` whose `ρ` has the single-block form.
    pub fn from_structure(s: &OrientedQuantumAlgebra) -> Result<SingleBlock> {
        let invalid = |m: String| OqaError::InvalidStructure(m);
        let n = s
            .algebra()
            .matrix_size()
            .filter(|&n| n >= 2)
            .ok_or_else(|| invalid("single-block checks need M_n with n ≥ 2".into()))?;
        let params = BlockParams::from_rho(n, s.rho(), vec![Scalar::one(); n]);
        let parts = classify_blocks(&params).partition.len();
        if parts > 1 {
            return Err(invalid(format!("multi-block input: ρ splits into {parts} components")));
        }
        let a = params.diag[0].clone();
        let signs: Vec<bool> = params.diag.iter().map(|d| *d == a).collect();
        let ctx = SingleBlock::new(&a, &params.off(0, 1), &signs)?;
        if ctx.params().to_rho() != *s.rho() {
            return Err(invalid("ρ is not a single block with b_iℓ = c_ℓi = √bc".into()));
        }
        Ok(ctx)
    }

    /// `|{i : ℓ < i ≤ m, a_i = a}|` with 1-based `i`.
    pub fn eta_plus(&self, l: usize, m: usize) -> i64 {
        self.signs[l..m].iter().filter(|&&s| s).count() as i64
    }

    /// `|{i : ℓ < i ≤ m, a_i ≠ a}|` with 1-based `i`.
    pub fn eta_minus(&self, l: usize, m: usize) -> i64 {
        self.signs[l..m].iter().filter(|&&s| !s).count() as i64
    }

    /// `ω_i(x)² = −(−x)^{−[a_i = a]} x^{η₊(0:i) − η₋(0:i)}`.
    pub fn omega_sq_at(&self, x: &Scalar) -> Vec<Scalar> {
        (1..=self.n)
            .map(|i| {
                let e = self.eta_plus(0, i) - self.eta_minus(0, i);
                let base = x.powi(e);
                if self.signs[i - 1] {
                    &base / x
                } else {
                    -&base
                }
            })
            .collect()
    }

    /// Checks the identities tying the closed forms together; returns the first that fails.
    pub fn consistency(&self) -> std::result::Result<(), String> {
        let one = Scalar::one();
        let geometric = |x: &Scalar, e: i64| (&one - &x.powi(e)).checked_div(&(&one - x));
        match geometric(&self.r, self.eta) {
            Ok(v) if v == self.tr_g => {}
            _ => return Err("Tr(G)·(1 − r) ≠ 1 − r^η".into()),
        }
        let r_inv = self.r.inv().map_err(|e| e.to_string())?;
        match geometric(&r_inv, self.eta) {
            Ok(v) if v == self.tr_g_inv => {}
            _ => return Err("Tr(G⁻¹)·(1 − r⁻¹) ≠ 1 − r^{−η}".into()),
        }
        if !self.tr_g_inv.is_zero() && &self.tr_g / &self.tr_g_inv != self.hbar {
            return Err("Tr(G)/Tr(G⁻¹) ≠ ħ".into());
        }
        if !self.tr_g.is_zero() && self.kappa != &self.rho_norm.inv().map_err(|e| e.to_string())? * &self.tr_g_inv {
            return Err("rho_norm·Tr(G) ≠ rho_norm⁻¹·Tr(G⁻¹)".into());
        }
        Ok(())
    }

    /// The block table with the twist `Σ ω_i² E_ii`.
    pub fn params(&self) -> BlockParams {
        let mut off = BTreeMap::new();
        for i in 0..self.n {
            for l in 0..self.n {
                if i != l {
                    off.insert((i, l), self.sbc.clone());
                }
            }
        }
        let blocks = vec![(0..self.n).collect::<Vec<_>>()];
        BlockParams::from_blocks(self.n, &blocks, &[&self.sbc * &self.sbc], self.diag.clone(), off, self.omega_sq.clone())
            .expect("one block covering 1..n")
    }

    pub fn structure(&self) -> Result<OrientedQuantumAlgebra> {
        build_block_structure(&self.params())
    }

    pub fn is_alexander_branch(&self) -> bool {
        self.tr_g.is_zero()
    }

    /// Closed forms on the kink families.
    pub fn curl_value(&self, family: CurlFamily, m: usize) -> Scalar {
        let m = m as i64;
        let a_hbar = &self.a * &self.hbar;
        match family {
            CurlFamily::RPlus => &a_hbar.powi(m) * &self.tr_g_inv,
            CurlFamily::LMinus => &a_hbar.powi(-m) * &self.tr_g,
            CurlFamily::LPlus => &self.a.powi(m) * &self.tr_g,
            CurlFamily::RMinus => &self.a.powi(-m) * &self.tr_g_inv,
        }
    }

    /// Compares `F(L)` with the prediction from the skein polynomials.
    ///
    /// `Tr(G) ≠ 0`: `F = a^w κ q^{−w} rho_norm^{−Wd} H(q^η, q − q⁻¹)`.
    /// `Tr(G) = 0`: `F = a^w q^{−w} ∇(q − q⁻¹)`.
    pub fn identify(&self, d: &MorseDiagram, f_value: &Scalar) -> Result<Identification> {
        if d.boundary().is_open() {
            return Err(OqaError::Diagram("identification needs a closed diagram".into()));
        }
        let stats = d.stats();
        let (w, wd) = (stats.writhe, stats.total_whitney());
        let z = &self.q - &self.q.inv()?;
        let prefactor = &self.a.powi(w) * &self.q.powi(-w);
        let (branch, polynomial, predicted) = if self.is_alexander_branch() {
            let p = conway(d)?;
            let v = p.eval(&Scalar::one(), &z).ok_or_else(|| OqaError::Parameter("q − q⁻¹ = 0".into()))?;
            (Branch::Alexander, p, &prefactor * &v)
        } else {
            let p = homfly(d)?;
            let alpha = self.q.powi(self.eta);
            let v = p.eval(&alpha, &z).ok_or_else(|| OqaError::Parameter("q − q⁻¹ = 0".into()))?;
            let factor = &(&prefactor * &self.kappa) * &self.rho_norm.powi(-wd);
            (Branch::Homfly, p, &factor * &v)
        };
        Ok(Identification {
            branch,
            writhe: w,
            whitney: wd,
            polynomial,
            passes: predicted == *f_value,
            f_value: f_value.clone(),
            predicted,
        })
    }

    /// Compares the `E_11` coefficient of `w(T)` for a 1-1 tangle with
    /// `a^w q^{−w} rho_norm^{−d(T)} P(closure)`, where `P` is `∇(q − q⁻¹)` when `Tr(G) = 0` and
    /// `H(q^η, q − q⁻¹)` otherwise.
    pub fn identify_open(&self, t: &MorseDiagram, w: &AlgebraElement) -> Result<Identification> {
        if !t.boundary().is_open() {
            return Err(OqaError::Diagram("expected a 1-1 tangle".into()));
        }
        let stats = t.stats();
        let (wr, d) = (stats.writhe, stats.total_whitney());
        let closed = t.closure();
        let z = &self.q - &self.q.inv()?;
        let (branch, polynomial, alpha) = if self.is_alexander_branch() {
            (Branch::Alexander, conway(&closed)?, Scalar::one())
        } else {
            (Branch::Homfly, homfly(&closed)?, self.q.powi(self.eta))
        };
        let v = polynomial.eval(&alpha, &z).ok_or_else(|| OqaError::Parameter("q − q⁻¹ = 0".into()))?;
        let predicted = &(&(&self.a.powi(wr) * &self.q.powi(-wr)) * &self.rho_norm.powi(-d)) * &v;
        let f_value = w.coeffs()[0].clone();
        Ok(Identification { branch, writhe: wr, whitney: d, polynomial, passes: predicted == f_value, f_value, predicted })
    }

    /// Evaluates the three diagrams of a skein triple with `s` and checks
    /// `G(L₊) − G(L₋) = (q − q⁻¹) G(L₀)` where `G = sbc^{−writhe}·F`.
    pub fn skein_triple(&self, s: &OrientedQuantumAlgebra, triple: &SkeinTriple) -> Result<SkeinCheck> {
        let ev = Evaluator::new(s);
        let g = |d: &MorseDiagram| -> Result<Scalar> {
            Ok(&self.sbc.powi(-d.writhe()) * &ev.link(d)?)
        };
        let (plus, minus) = if XP_IS_SKEIN_POSITIVE {
            (&triple.xp, &triple.xn)
        } else {
            (&triple.xn, &triple.xp)
        };
        let lhs = &g(plus)? - &g(minus)?;
        let rhs = &(&self.q - &self.q.inv()?) * &g(&triple.smoothed)?;
        Ok(SkeinCheck { passes: lhs == rhs, lhs, rhs })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Homfly,
    Alexander,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Homfly => "homfly",
            Branch::Alexander => "alexander",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Identification {
    pub branch: Branch,
    pub writhe: i64,
    pub whitney: i64,
    pub polynomial: SkeinPolynomial,
    pub f_value: Scalar,
    pub predicted: Scalar,
    pub passes: bool,
}

/// Three closed diagrams equal except at one slice: `xp`, `xn`, and nothing.
#[derive(Clone, Debug, PartialEq)]
pub struct SkeinTriple {
    pub xp: MorseDiagram,
    pub xn: MorseDiagram,
    pub smoothed: MorseDiagram,
}

impl SkeinTriple {
    /// The triple at crossing slice `i` of `d`.
    pub fn at(d: &MorseDiagram, i: usize) -> Result<SkeinTriple> {
        let kind = d.slices().get(i).map(|s| s.kind);
        let (xp, xn) = match kind {
            Some(SliceKind::Xp) => (d.clone(), d.switch_crossing(i)?),
            Some(SliceKind::Xn) => (d.switch_crossing(i)?, d.clone()),
            _ => return Err(OqaError::Diagram(format!("slice {i} is not a crossing"))),
        };
        Ok(SkeinTriple { xp, xn, smoothed: d.smooth_crossing(i)? })
    }

    /// Checks that the three diagrams form a triple.
    pub fn new(xp: MorseDiagram, xn: MorseDiagram, smoothed: MorseDiagram) -> Result<SkeinTriple> {
        let mismatch = || OqaError::Diagram("diagrams do not differ at a single crossing".into());
        if xp.boundary() != xn.boundary() || xp.boundary() != smoothed.boundary() || xp.len() != xn.len() {
            return Err(mismatch());
        }
        let diff: Vec<usize> = (0..xp.len()).filter(|&k| xp.slices()[k] != xn.slices()[k]).collect();
        let [i] = diff[..] else { return Err(mismatch()) };
        let (p, m) = (xp.slices()[i], xn.slices()[i]);
        if p.kind != SliceKind::Xp || m.kind != SliceKind::Xn || p.pos != m.pos {
            return Err(mismatch());
        }
        if xp.smooth_crossing(i)? != smoothed {
            return Err(mismatch());
        }
        Ok(SkeinTriple { xp, xn, smoothed })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SkeinCheck {
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub passes: bool,
}
