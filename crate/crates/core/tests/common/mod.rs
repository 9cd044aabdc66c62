//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use oqa::diagram::{builtin, curl_family, CurlFamily, Dir};
use oqa::oqa::{build_balanced_mn, uniform_b, OrientedQuantumAlgebra};
use oqa::{AlgebraElement, Boundary, MorseDiagram, Scalar, Slice, SliceKind, SymbolTable, TensorSquare};

/// Closure of the 3-braid `σ₁σ₂σ₁σ₂⁻¹`.
pub const BRAID_CLOSURE: &str =
    "cup_cw 0 / cup_cw 1 / cup_cw 2 / xp 0 / xp 1 / xp 0 / xn 1 / cap_cw 2 / cap_cw 1 / cap_cw 0";

/// Closed diagrams on which every move applies in both directions, directly or after one move.
pub fn move_corpus() -> Vec<MorseDiagram> {
    use oqa::diagram::parse_diagram;
    let mut out: Vec<MorseDiagram> = [
        "trefoil_knot",
        "hopf",
        "figure8_knot",
        "unknot_cw",
        "unknot_ccw",
        "c_r_plus(2)",
        "c_l_plus(2)",
        "c_r_minus(2)",
        "c_l_minus(1)",
    ]
    .iter()
    .map(|n| builtin(n).unwrap())
    .collect();
    let braid = parse_diagram(BRAID_CLOSURE).unwrap();
    let turned =
        parse_diagram("cup_cw 0 / cup_cw 1 / cup_cw 2 / xp 1 / xp 0 / xp 1 / cap_cw 2 / cap_cw 1 / cap_cw 0").unwrap();
    out.extend([braid.mirror(), braid, turned.mirror(), turned]);
    out
}

pub fn syms() -> SymbolTable {
    SymbolTable::new(["a", "sbc", "w1", "b12", "b13", "b23", "alpha"]).unwrap()
}

pub fn p(t: &SymbolTable, s: &str) -> Scalar {
    t.parse(s).unwrap()
}

pub fn q(n: i64, d: i64) -> Scalar {
    Scalar::from_ratio(n, d).unwrap()
}

/// The balanced structure on `M_n` with symbolic `a`, `bc = sbc²`, `b_iℓ` and `ω_1² = w1`.
pub fn balanced_symbolic(n: usize) -> OrientedQuantumAlgebra {
    let t = syms();
    let mut b = BTreeMap::new();
    for i in 0..n {
        for l in i + 1..n {
            b.insert((i, l), p(&t, &format!("b{}{}", i + 1, l + 1)));
        }
    }
    build_balanced_mn(n, &p(&t, "a"), &p(&t, "sbc^2"), &b, &p(&t, "w1")).unwrap()
}

/// The balanced structure with `a = 2`, `bc = b_iℓ = ω_1² = 1`.
pub fn balanced_numeric(n: usize) -> OrientedQuantumAlgebra {
    build_balanced_mn(n, &q(2, 1), &q(1, 1), &uniform_b(n, &q(1, 1)), &q(1, 1)).unwrap()
}

pub fn to_element(s: &OrientedQuantumAlgebra, m: &Mat) -> AlgebraElement {
    let alg = s.algebra();
    let mut coeffs = vec![Scalar::zero(); alg.dim()];
    for i in 0..m.n {
        for j in 0..m.n {
            coeffs[alg.matrix_unit(i, j)] = m.e[i * m.n + j].clone();
        }
    }
    AlgebraElement::from_coeffs(coeffs)
}

/// `ρ` entries of a matrix-algebra structure as pairs of scaled matrix units.
pub fn rho_terms(s: &OrientedQuantumAlgebra) -> Vec<(Scalar, (usize, usize), (usize, usize))> {
    let n = s.algebra().matrix_size().unwrap();
    let unit = |k: usize| (k / n, k % n);
    for i in 0..n {
        for j in 0..n {
            assert_eq!(s.algebra().matrix_unit(i, j), i * n + j);
        }
    }
    s.rho().entries().iter().map(|(&(x, y), c)| (c.clone(), unit(x), unit(y))).collect()
}

/// `t^k(E_ij)` for the balanced structures: `(ω_i²/ω_j²)^{k/2}` with `ω_i/ω_j = (a/sbc)^{i−j}`.
pub fn t_scaled(ratio: &Scalar, k: i64, (i, j): (usize, usize), n: usize) -> Mat {
    Mat::unit(n, i, j).scale(&ratio.powi(k * (i as i64 - j as i64)))
}

pub fn build_with_sbc(n: usize, a: &Scalar, sbc: &Scalar) -> OrientedQuantumAlgebra {
    oqa::oqa::build_balanced_mn(n, a, &(sbc * sbc), &oqa::oqa::uniform_b(n, sbc), &Scalar::one()).unwrap()
}

/// `Σ_{i,j} tr(G⁻¹ a_i b_j) tr(G b_i a_j)` from the `ρ` table, with `G = diag((a²/bc)^{i} w1)`.
pub fn hopf_from_table(s: &OrientedQuantumAlgebra) -> Scalar {
    let t = syms();
    let n = s.algebra().matrix_size().unwrap();
    let r = &(&p(&t, "a") * &p(&t, "a")) / &p(&t, "sbc^2");
    let mut g = Mat::identity(n);
    let mut gi = Mat::identity(n);
    for i in 0..n {
        let w = &r.powi(i as i64) * &p(&t, "w1");
        gi.e[i * n + i] = w.inv().unwrap();
        g.e[i * n + i] = w;
    }
    let terms = rho_terms(s);
    let mut total = Scalar::zero();
    for (c1, ai, bi) in &terms {
        for (c2, aj, bj) in &terms {
            let x = gi.mul(&Mat::unit(n, ai.0, ai.1)).mul(&Mat::unit(n, bj.0, bj.1)).trace();
            let y = g.mul(&Mat::unit(n, bi.0, bi.1)).mul(&Mat::unit(n, aj.0, aj.1)).trace();
            total = &total + &(&(c1 * c2) * &(&x * &y));
        }
    }
    total
}

pub fn closed_builtins() -> Vec<MorseDiagram> {
    let mut out: Vec<MorseDiagram> = ["hopf", "trefoil_knot", "figure8_knot", "unknot_cw", "unknot_ccw"]
        .iter()
        .map(|n| builtin(n).unwrap())
        .collect();
    for f in CurlFamily::ALL {
        out.push(curl_family(f, 1));
    }
    out
}

pub fn generic_b(t: &SymbolTable, n: usize) -> BTreeMap<(usize, usize), Scalar> {
    let mut b = BTreeMap::new();
    for i in 0..n {
        for l in i + 1..n {
            b.insert((i, l), p(t, &format!("b{}{}", i + 1, l + 1)));
        }
    }
    b
}

/// Slot-by-slot closed form of `ρ⁻¹` for tables with `{i,ℓ} = {j,m}`.
pub fn closed_form_inverse(n: usize, rho: &TensorSquare<Scalar>) -> TensorSquare<Scalar> {
    let e = |i: usize, j: usize| i * n + j;
    let r = |i: usize, l: usize, j: usize, m: usize| rho.get(e(i, j), e(l, m));
    let mut q = TensorSquare::zero(n * n);
    for i in 0..n {
        for l in 0..n {
            q.add_term(e(i, i), e(l, l), r(i, l, i, l).inv().unwrap());
            if i != l {
                let v = -&(&r(i, l, l, i) / &(&r(i, l, i, l) * &r(l, i, l, i)));
                q.add_term(e(i, l), e(l, i), v);
            }
        }
    }
    q
}


fn add(x: Mat, y: &Mat) -> Mat {
    Mat { n: x.n, e: x.e.iter().zip(&y.e).map(|(u, v)| u + v).collect() }
}

/// `Σ a_i t²(b_i)` for the balanced `M_2` structures.
pub fn curl_oracle(s: &OrientedQuantumAlgebra) -> AlgebraElement {
    let t = syms();
    let ratio = &p(&t, "a") / &p(&t, "sbc");
    let mut out = Mat { n: 2, e: vec![Scalar::zero(); 4] };
    for (c, ai, bi) in rho_terms(s) {
        out = add(out, &Mat::unit(2, ai.0, ai.1).mul(&t_scaled(&ratio, 2, bi, 2)).scale(&c));
    }
    to_element(s, &out)
}

/// `Σ t²(b_i) a_i`.
pub fn curl_op_oracle(s: &OrientedQuantumAlgebra) -> AlgebraElement {
    let t = syms();
    let ratio = &p(&t, "a") / &p(&t, "sbc");
    let mut out = Mat { n: 2, e: vec![Scalar::zero(); 4] };
    for (c, ai, bi) in rho_terms(s) {
        out = add(out, &t_scaled(&ratio, 2, bi, 2).mul(&Mat::unit(2, ai.0, ai.1)).scale(&c));
    }
    to_element(s, &out)
}

/// `Σ t²(b_i) t²(a_j) t²(b_ℓ) a_i b_j a_ℓ`.
pub fn trefoil_tangle_oracle(s: &OrientedQuantumAlgebra) -> AlgebraElement {
    let t = syms();
    let ratio = &p(&t, "a") / &p(&t, "sbc");
    let terms = rho_terms(s);
    let mut out = Mat { n: 2, e: vec![Scalar::zero(); 4] };
    for (c1, ai, bi) in &terms {
        for (c2, aj, bj) in &terms {
            for (c3, al, bl) in &terms {
                let m = t_scaled(&ratio, 2, *bi, 2)
                    .mul(&t_scaled(&ratio, 2, *aj, 2))
                    .mul(&t_scaled(&ratio, 2, *bl, 2))
                    .mul(&Mat::unit(2, ai.0, ai.1))
                    .mul(&Mat::unit(2, bj.0, bj.1))
                    .mul(&Mat::unit(2, al.0, al.1))
                    .scale(&(&(c1 * c2) * c3));
                out = add(out, &m);
            }
        }
    }
    to_element(s, &out)
}

/// Random closed diagram: cups, crossings and caps chosen from `choices`, then closed off.
pub fn random_closed(choices: &[(u8, u8)]) -> MorseDiagram {
    let mut dirs: Vec<Dir> = vec![];
    let mut slices = vec![];
    for &(k, p) in choices {
        let w = dirs.len();
        let slice = match k % 4 {
            0 | 1 => {
                let kind = if k % 2 == 0 { SliceKind::CupCw } else { SliceKind::CupCcw };
                Some(Slice::new(kind, p as usize % (w + 1)))
            }
            _ if w >= 2 => {
                let pos = p as usize % (w - 1);
                if dirs[pos] == dirs[pos + 1] {
                    Some(Slice::new(if k % 4 == 2 { SliceKind::Xp } else { SliceKind::Xn }, pos))
                } else {
                    let kind = if dirs[pos] == Dir::Up { SliceKind::CapCw } else { SliceKind::CapCcw };
                    Some(Slice::new(kind, pos))
                }
            }
            _ => None,
        };
        if let Some(s) = slice {
            match s.kind {
                SliceKind::CupCw => drop(dirs.splice(s.pos..s.pos, [Dir::Up, Dir::Down])),
                SliceKind::CupCcw => drop(dirs.splice(s.pos..s.pos, [Dir::Down, Dir::Up])),
                SliceKind::CapCw | SliceKind::CapCcw => drop(dirs.drain(s.pos..s.pos + 2)),
                _ => {}
            }
            slices.push(s);
        }
    }
    while !dirs.is_empty() {
        let pos = (0..dirs.len() - 1).find(|&i| dirs[i] != dirs[i + 1]).expect("balanced directions");
        let kind = if dirs[pos] == Dir::Up { SliceKind::CapCw } else { SliceKind::CapCcw };
        slices.push(Slice::new(kind, pos));
        dirs.drain(pos..pos + 2);
    }
    MorseDiagram::new(Boundary::Closed, slices).expect("generator produces valid words")
}

/// Dense `n×n` matrices over the parameter field.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub n: usize,
    pub e: Vec<Scalar>,
}

impl Mat {
    pub fn unit(n: usize, i: usize, j: usize) -> Mat {
        let mut e = vec![Scalar::zero(); n * n];
        e[i * n + j] = Scalar::one();
        Mat { n, e }
    }

    pub fn identity(n: usize) -> Mat {
        let mut e = vec![Scalar::zero(); n * n];
        for i in 0..n {
            e[i * n + i] = Scalar::one();
        }
        Mat { n, e }
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        let n = self.n;
        let mut e = vec![Scalar::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let x = &self.e[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = &o.e[k * n + j];
                    if !y.is_zero() {
                        e[i * n + j] = &e[i * n + j] + &(x * y);
                    }
                }
            }
        }
        Mat { n, e }
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat { n: self.n, e: self.e.iter().map(|x| x * s).collect() }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.n).map(|i| self.e[i * self.n + i].clone()).sum()
    }
}

/// The balanced `M_n` data written out by hand: `ρ`, its closed-form inverse, and the diagonal
/// scaling `t(E_ij) = (ω_i/ω_j) E_ij` with `ω_i = q^{i}` where `q = a/√bc`.
pub struct HandStructure {
    pub n: usize,
    /// `((i, j), (l, m)) ↦ coefficient of E_ij ⊗ E_lm`.
    pub rho: BTreeMap<((usize, usize), (usize, usize)), Scalar>,
    pub rho_inv: BTreeMap<((usize, usize), (usize, usize)), Scalar>,
    /// `ω_i` (not squared).
    pub omega: Vec<Scalar>,
}

impl HandStructure {
    /// `a`, `sbc` numeric or symbolic; all `b_iℓ = sbc` so that `c_ℓi = sbc` too; `ω_1 = 1`.
    pub fn balanced(n: usize, a: &Scalar, sbc: &Scalar) -> HandStructure {
        let bc = sbc * sbc;
        let mut rho = BTreeMap::new();
        for i in 0..n {
            rho.insert(((i, i), (i, i)), a.clone());
            for l in i + 1..n {
                rho.insert(((i, l), (l, i)), a - &(&bc / a));
                rho.insert(((i, i), (l, l)), sbc.clone());
                rho.insert(((l, l), (i, i)), sbc.clone());
            }
        }
        let mut rho_inv = BTreeMap::new();
        let get = |k| rho.get(&k).cloned().unwrap_or_else(Scalar::zero);
        for i in 0..n {
            for l in 0..n {
                rho_inv.insert(((i, i), (l, l)), get(((i, i), (l, l))).inv().unwrap());
                let x = get(((i, l), (l, i)));
                if i != l && !x.is_zero() {
                    let v = -&(&x / &(&get(((i, i), (l, l))) * &get(((l, l), (i, i)))));
                    rho_inv.insert(((i, l), (l, i)), v);
                }
            }
        }
        let ratio = a / sbc;
        let omega = (0..n).map(|i| ratio.powi(i as i64)).collect();
        HandStructure { n, rho, rho_inv, omega }
    }

    /// `t^k(E_ij)` coefficient.
    fn t_pow(&self, k: i64, i: usize, j: usize) -> Scalar {
        (&self.omega[i] / &self.omega[j]).powi(k)
    }

    /// `Σ_{i,j} tr(G⁻¹ a_i b_j) tr(G b_i a_j)` over the hand-written `ρ`.
    pub fn hopf_closed_form(&self) -> Scalar {
        let n = self.n;
        let g: Vec<Scalar> = self.omega.iter().map(|w| w * w).collect();
        let diag = |s: &[Scalar]| {
            let mut m = Mat::identity(n);
            for i in 0..n {
                m.e[i * n + i] = s[i].clone();
            }
            m
        };
        let gm = diag(&g);
        let gi = diag(&g.iter().map(|x| x.inv().unwrap()).collect::<Vec<_>>());
        let mut total = Scalar::zero();
        for (&((i, j), (l, m)), c1) in &self.rho {
            for (&((i2, j2), (l2, m2)), c2) in &self.rho {
                let (ai, bi) = (Mat::unit(n, i, j), Mat::unit(n, l, m));
                let (aj, bj) = (Mat::unit(n, i2, j2), Mat::unit(n, l2, m2));
                let x = gi.mul(&ai).mul(&bj).trace();
                let y = gm.mul(&bi).mul(&aj).trace();
                total = &total + &(&(c1 * c2) * &(&x * &y));
            }
        }
        total
    }

    /// The link invariant by brute force: every crossing ranges over all `n⁴` slots of its copy of
    /// `ρ^{±1}`; `t_d = t_u = t` is applied with the raw extremum counts; no normalization.
    pub fn brute_force(&self, d: &MorseDiagram) -> Scalar {
        let n = self.n;
        let comps = oracle_traverse(d);
        let crossings: Vec<usize> = (0..d.len()).filter(|&i| d.slices()[i].kind.is_crossing()).collect();
        let slots: Vec<((usize, usize), (usize, usize))> = (0..n * n * n * n)
            .map(|k| ((k / (n * n * n), (k / (n * n)) % n), ((k / n) % n, k % n)))
            .collect();
        let g: Vec<Scalar> = self.omega.iter().map(|w| w * w).collect();
        let mut total = Scalar::zero();
        let mut assign = vec![0usize; crossings.len()];
        loop {
            let mut coeff = Scalar::one();
            for (c, &s) in crossings.iter().zip(&assign) {
                let table = if d.slices()[*c].kind == SliceKind::Xp { &self.rho } else { &self.rho_inv };
                coeff = &coeff * &table.get(&slots[s]).cloned().unwrap_or_else(Scalar::zero);
                if coeff.is_zero() {
                    break;
                }
            }
            if !coeff.is_zero() {
                let mut value = coeff;
                for comp in &comps {
                    let mut m = Mat::identity(n);
                    for &(c, first, ud, uu) in &comp.labels {
                        let k = crossings.iter().position(|&x| x == c).unwrap();
                        let ((i, j), (l, mm)) = slots[assign[k]];
                        let (r, s) = if first { (i, j) } else { (l, mm) };
                        let f = &self.t_pow(ud, r, s) * &self.t_pow(uu, r, s);
                        m = m.mul(&Mat::unit(n, r, s).scale(&f));
                    }
                    let mut gd = Mat::identity(n);
                    for i in 0..n {
                        gd.e[i * n + i] = g[i].powi(comp.whitney);
                    }
                    value = &value * &gd.mul(&m).trace();
                }
                total = &total + &value;
            }
            let mut k = 0;
            loop {
                if k == assign.len() {
                    return total;
                }
                assign[k] += 1;
                if assign[k] < slots.len() {
                    break;
                }
                assign[k] = 0;
                k += 1;
            }
        }
    }
}

pub struct OracleComponent {
    /// `(crossing slice, over strand, u_d, u_u)`.
    pub labels: Vec<(usize, bool, i64, i64)>,
    pub whitney: i64,
}

/// Follows each closed component from its lowest-leftmost upward piece, recording crossings and
/// extrema; counters are taken over the rest of the loop.
pub fn oracle_traverse(d: &MorseDiagram) -> Vec<OracleComponent> {
    // widths and directions per level, recomputed here from the slices
    let mut levels: Vec<Vec<Dir>> = vec![vec![]];
    for s in d.slices() {
        let mut cur = levels.last().unwrap().clone();
        match s.kind {
            SliceKind::CupCw => drop(cur.splice(s.pos..s.pos, [Dir::Up, Dir::Down])),
            SliceKind::CupCcw => drop(cur.splice(s.pos..s.pos, [Dir::Down, Dir::Up])),
            SliceKind::CapCw | SliceKind::CapCcw => drop(cur.drain(s.pos..s.pos + 2)),
            _ => {}
        }
        levels.push(cur);
    }
    enum Ev {
        X(usize, bool),
        E(SliceKind),
    }
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for l in 0..levels.len() {
        for i in 0..levels[l].len() {
            if levels[l][i] != Dir::Up || seen.contains(&(l, i)) {
                continue;
            }
            let start = (l, i);
            let (mut lv, mut pos, mut up) = (l, i, true);
            let mut evs = Vec::new();
            loop {
                seen.insert((lv, pos));
                if up {
                    let s = d.slices()[lv];
                    let p = s.pos;
                    match s.kind {
                        SliceKind::Xp | SliceKind::Xn if pos == p || pos == p + 1 => {
                            let slash = pos == p;
                            evs.push(Ev::X(lv, slash == (s.kind == SliceKind::Xp)));
                            pos = if slash { p + 1 } else { p };
                            lv += 1;
                        }
                        SliceKind::CapCw | SliceKind::CapCcw if pos == p || pos == p + 1 => {
                            evs.push(Ev::E(s.kind));
                            pos = if pos == p { p + 1 } else { p };
                            up = false;
                        }
                        SliceKind::CapCw | SliceKind::CapCcw if pos > p => {
                            pos -= 2;
                            lv += 1;
                        }
                        SliceKind::CupCw | SliceKind::CupCcw if pos >= p => {
                            pos += 2;
                            lv += 1;
                        }
                        _ => lv += 1,
                    }
                } else {
                    let s = d.slices()[lv - 1];
                    let p = s.pos;
                    match s.kind {
                        SliceKind::Xp | SliceKind::Xn if pos == p || pos == p + 1 => {
                            let slash = pos == p + 1;
                            evs.push(Ev::X(lv - 1, slash == (s.kind == SliceKind::Xp)));
                            pos = if slash { p } else { p + 1 };
                            lv -= 1;
                        }
                        SliceKind::CupCw | SliceKind::CupCcw if pos == p || pos == p + 1 => {
                            evs.push(Ev::E(s.kind));
                            pos = if pos == p { p + 1 } else { p };
                            up = true;
                        }
                        SliceKind::CupCw | SliceKind::CupCcw if pos > p => {
                            pos -= 2;
                            lv -= 1;
                        }
                        SliceKind::CapCw | SliceKind::CapCcw if pos >= p => {
                            pos += 2;
                            lv -= 1;
                        }
                        _ => lv -= 1,
                    }
                }
                if (lv, pos) == start && up {
                    break;
                }
            }
            let mut labels = Vec::new();
            let mut cw = 0i64;
            for (k, e) in evs.iter().enumerate() {
                match e {
                    Ev::X(c, over) => {
                        let (mut ud, mut uu) = (0, 0);
                        for later in &evs[k + 1..] {
                            match later {
                                Ev::E(SliceKind::CapCcw) => ud += 1,
                                Ev::E(SliceKind::CupCw) => ud -= 1,
                                Ev::E(SliceKind::CupCcw) => uu += 1,
                                Ev::E(SliceKind::CapCw) => uu -= 1,
                                _ => {}
                            }
                        }
                        labels.push((*c, *over, ud, uu));
                    }
                    Ev::E(kind) => cw += if matches!(kind, SliceKind::CupCw | SliceKind::CapCw) { 1 } else { -1 },
                }
            }
            out.push(OracleComponent { labels, whitney: cw / 2 });
        }
    }
    out
}
