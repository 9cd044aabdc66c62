//! Multivariate polynomial gcd over the integers.
//!
//! Monomial and integer contents are split off first; what remains is handled
//! by the heuristic evaluation/interpolation gcd, falling back to a recursive
//! primitive pseudo-remainder sequence when the heuristic gives up.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::monomial::Monomial;
use crate::poly::Poly;

/// Greatest common divisor with positive leading coefficient (zero only if both inputs are zero).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone().normalize_sign();
    }
    if b.is_zero() {
        return a.clone().normalize_sign();
    }
    if a.is_monomial() {
        return monomial_gcd(a, b);
    }
    if b.is_monomial() {
        return monomial_gcd(b, a);
    }
    if a == b || *a == b.neg() {
        return a.clone().normalize_sign();
    }

    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let ca = a.content();
    let cb = b.content();
    let outer = Poly::term(ma.gcd(&mb), ca.gcd(&cb));

    let pa = strip(a, &ma, &ca);
    let pb = strip(b, &mb, &cb);
    let inner = heuristic_gcd(&pa, &pb).unwrap_or_else(|| gcd_primitive(&pa, &pb));
    outer.mul(&inner).normalize_sign()
}

fn strip(p: &Poly, m: &Monomial, c: &BigInt) -> Poly {
    p.div_monomial(m)
        .and_then(|q| q.div_int(c))
        .expect("content divides the polynomial")
}

/// Gcd when `a` is a single term.
fn monomial_gcd(a: &Poly, b: &Poly) -> Poly {
    let (m, c) = a.leading().expect("nonzero monomial");
    let g_int = c.gcd(&b.content());
    let g_mon = m.gcd(&b.monomial_content());
    Poly::term(g_mon, g_int)
}

const HEURISTIC_ATTEMPTS: usize = 6;

fn max_norm(p: &Poly) -> BigInt {
    p.terms()
        .iter()
        .map(|(_, c)| c.abs())
        .max()
        .unwrap_or_default()
}

/// Replaces variable `i` by the integer `x`.
fn eval_var(p: &Poly, i: usize, x: &BigInt) -> Poly {
    let mut acc = Poly::zero();
    for c in p.coeffs_in(i).iter().rev() {
        acc = acc.scale(x).add(c);
    }
    acc
}

/// Symmetric residue in `(-x/2, x/2]`.
fn symmetric_mod(c: &BigInt, x: &BigInt) -> BigInt {
    let r = c.mod_floor(x);
    if &r * 2 > *x {
        r - x
    } else {
        r
    }
}

/// Reads the integer coefficients of `h` as `x`-adic expansions in variable `i`.
fn interpolate(mut h: Poly, i: usize, x: &BigInt) -> Poly {
    let mut coeffs = Vec::new();
    while !h.is_zero() {
        let g = Poly::from_terms(
            h.terms()
                .iter()
                .map(|(m, c)| (m.clone(), symmetric_mod(c, x))),
        );
        h = h.sub(&g).div_int(x).expect("difference is divisible");
        coeffs.push(g);
    }
    let p = Poly::from_coeffs_in(i, &coeffs);
    let c = p.content();
    if c.is_zero() {
        return p;
    }
    p.div_int(&c).expect("content divides").normalize_sign()
}

/// Heuristic gcd of two polynomials with trivial content; `None` when it gives up.
fn heuristic_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    if a.is_zero() {
        return Some(b.clone().normalize_sign());
    }
    if b.is_zero() {
        return Some(a.clone().normalize_sign());
    }
    let width = a.width().max(b.width());
    let Some(v) = (0..width).rev().find(|&i| a.contains_var(i) || b.contains_var(i)) else {
        let g = a.leading_coeff().gcd(&b.leading_coeff());
        return Some(Poly::constant(g));
    };
    let na = max_norm(a);
    let nb = max_norm(b);
    let bound: BigInt = na.clone().min(nb.clone()) * 2 + 29;
    let lead = |p: &Poly, n: &BigInt| n / lead_in(p, v).abs().max(BigInt::from(1));
    let mut x = bound
        .clone()
        .min(bound.sqrt() * 99)
        .max(lead(a, &na).min(lead(b, &nb)) * 2 + 4);
    for _ in 0..HEURISTIC_ATTEMPTS {
        let ea = eval_var(a, v, &x);
        let eb = eval_var(b, v, &x);
        if !ea.is_zero() && !eb.is_zero() {
            let ca = ea.content();
            let cb = eb.content();
            let ma = ea.monomial_content();
            let mb = eb.monomial_content();
            let outer = Poly::term(ma.gcd(&mb), ca.gcd(&cb));
            let pa = strip(&ea, &ma, &ca);
            let pb = strip(&eb, &mb, &cb);
            if let Some(inner) = heuristic_gcd(&pa, &pb) {
                let h = interpolate(outer.mul(&inner), v, &x);
                if !h.is_zero() && a.div_exact(&h).is_some() && b.div_exact(&h).is_some() {
                    return Some(h);
                }
            }
        }
        x = (x.sqrt().sqrt() * &x * 73794) / 27011;
    }
    None
}

/// Leading integer coefficient of `p` viewed as a polynomial in variable `v`.
fn lead_in(p: &Poly, v: usize) -> BigInt {
    let coeffs = p.coeffs_in(v);
    coeffs
        .last()
        .map(|c| c.leading_coeff())
        .unwrap_or_default()
}

/// Gcd of two polynomials with trivial integer and monomial content.
fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.is_monomial() || b.is_monomial() {
        return monomial_gcd(a, b).normalize_sign();
    }
    if a == b || *a == b.neg() {
        return a.clone().normalize_sign();
    }
    let width = a.width().max(b.width());
    let Some(x) = (0..width)
        .rev()
        .find(|&i| a.contains_var(i) || b.contains_var(i))
    else {
        return Poly::one();
    };

    match (a.contains_var(x), b.contains_var(x)) {
        (true, true) => {}
        (true, false) => return gcd_with_coeffs(b, &a.coeffs_in(x)),
        (false, true) => return gcd_with_coeffs(a, &b.coeffs_in(x)),
        (false, false) => unreachable!("x was chosen from the support"),
    }

    let ca = a.coeffs_in(x);
    let cb = b.coeffs_in(x);
    let cont_a = gcd_many(&ca);
    let cont_b = gcd_many(&cb);
    let cont = gcd(&cont_a, &cont_b);
    let pa = divide_coeffs(&ca, &cont_a);
    let pb = divide_coeffs(&cb, &cont_b);
    let prim = prs_gcd(pa, pb);
    let g = Poly::from_coeffs_in(x, &prim);
    cont.mul(&g).normalize_sign()
}

/// Gcd of `p` (free of the main variable) with the polynomial whose coefficients are `coeffs`.
fn gcd_with_coeffs(p: &Poly, coeffs: &[Poly]) -> Poly {
    let mut g = p.clone();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g.normalize_sign()
}

fn gcd_many(polys: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_coeffs(coeffs: &[Poly], d: &Poly) -> Vec<Poly> {
    coeffs
        .iter()
        .map(|c| c.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

fn trim(mut v: Vec<Poly>) -> Vec<Poly> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Pseudo-remainder of `a` by `b` as univariate polynomials with polynomial coefficients.
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let n = b.len() - 1;
    let lb = &b[n];
    let mut r: Vec<Poly> = a.to_vec();
    while r.len() > n {
        let m = r.len() - 1;
        let lr = r[m].clone();
        let shift = m - n;
        let mut next: Vec<Poly> = r.iter().map(|c| c.mul(lb)).collect();
        for (k, bk) in b.iter().enumerate() {
            next[k + shift] = next[k + shift].sub(&bk.mul(&lr));
        }
        next.pop();
        r = trim(next);
    }
    r
}

fn primitive_coeffs(v: Vec<Poly>) -> Vec<Poly> {
    let cont = gcd_many(&v);
    if cont.is_one() {
        return v;
    }
    divide_coeffs(&v, &cont)
}

/// Gcd of two primitive univariate polynomials (coefficient vectors) by a primitive PRS.
fn prs_gcd(a: Vec<Poly>, b: Vec<Poly>) -> Vec<Poly> {
    let (mut p, mut q) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    loop {
        if q.len() == 1 {
            return vec![Poly::one()];
        }
        let r = prem(&p, &q);
        if r.is_empty() {
            let mut g = primitive_coeffs(q);
            if g.last().is_some_and(|lc| lc.leading_coeff().is_negative()) {
                g = g.iter().map(Poly::neg).collect();
            }
            return g;
        }
        if r.len() == 1 {
            return vec![Poly::one()];
        }
        p = q;
        q = primitive_coeffs(r);
    }
}

/// Least common multiple with positive leading coefficient.
pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let g = gcd(a, b);
    a.div_exact(&g)
        .expect("gcd divides")
        .mul(b)
        .normalize_sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(0)
    }
    fn y() -> Poly {
        Poly::var(1)
    }
    fn z() -> Poly {
        Poly::var(2)
    }
    fn c(v: i64) -> Poly {
        Poly::constant(BigInt::from(v))
    }

    #[test]
    fn univariate() {
        let p = x().sub(&c(1)).mul(&x().add(&c(2)));
        let q = x().sub(&c(1)).mul(&x().add(&c(3)));
        assert_eq!(gcd(&p, &q), x().sub(&c(1)));
    }

    #[test]
    fn multivariate_common_factor() {
        let f = x().mul(&y()).add(&z()).add(&c(1));
        let g1 = x().sub(&y()).mul(&z().add(&c(2)));
        let g2 = x().mul(&x()).add(&y().mul(&z())).sub(&c(3));
        let p = f.mul(&g1);
        let q = f.mul(&g2);
        assert_eq!(gcd(&p, &q), f.normalize_sign());
    }

    #[test]
    fn contents_are_kept() {
        let p = x().mul(&x()).mul(&y()).scale(&BigInt::from(6));
        let q = x().mul(&y()).mul(&y()).scale(&BigInt::from(4)).add(&x().scale(&BigInt::from(2)));
        // p = 6x^2 y, q = 2x(2y^2 + 1)
        assert_eq!(gcd(&p, &q), x().scale(&BigInt::from(2)));
    }

    #[test]
    fn coprime() {
        let p = x().add(&y());
        let q = x().sub(&y());
        assert!(gcd(&p, &q).is_one());
    }

    #[test]
    fn variable_in_one_argument_only() {
        let f = y().add(&c(1));
        let p = f.mul(&x()).add(&f.mul(&c(3)));
        let q = f.mul(&z().sub(&c(5)));
        assert_eq!(gcd(&p, &q), f);
    }

    #[test]
    fn lcm_of_overlapping() {
        let p = x().mul(&y());
        let q = y().mul(&z());
        assert_eq!(lcm(&p, &q), x().mul(&y()).mul(&z()));
    }
}
