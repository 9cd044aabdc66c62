use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ScalarError;
use crate::gcd::gcd;
use crate::monomial::Monomial;
use crate::poly::Poly;

/// An exact rational function `num / den` over the integers.
///
/// Always canonical: numerator and denominator are coprime (including their
/// integer contents), the denominator's leading coefficient is positive under
/// graded-lex order, and zero is `0 / 1`. Structural equality is therefore
/// field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Self {
        Scalar {
            num: Poly::constant(v.into()),
            den: Poly::one(),
        }
    }

    pub fn from_ratio<T: Into<BigInt>>(n: T, d: T) -> Result<Self, ScalarError> {
        Scalar::from_polys(Poly::constant(n.into()), Poly::constant(d.into()))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Scalar::from_polys(Poly::constant(r.numer().clone()), Poly::constant(r.denom().clone()))
            .expect("rational has nonzero denominator")
    }

    /// The variable with index `i` in the symbol table.
    pub fn var(i: usize) -> Self {
        Scalar {
            num: Poly::var(i),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    /// Canonicalizes `num / den`.
    pub fn from_polys(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(canonical(num, den))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value does not depend on any symbol.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(BigRational::new(n, d))
    }

    /// True when the denominator is a single term.
    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial()
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(fix_sign(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Scalar, ScalarError> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let k = u32::try_from(k).map_err(|_| ScalarError::ExponentTooLarge)?;
        Ok(Scalar {
            num: self.num.pow(k),
            den: self.den.pow(k),
        })
    }

    /// `self^k`, panicking on `0^k` with `k < 0`.
    pub fn powi(&self, k: i64) -> Scalar {
        self.pow(k).expect("power of zero with negative exponent")
    }

    /// Symbols (by index) that appear in the value.
    pub fn support(&self) -> Vec<usize> {
        let w = self.num.width().max(self.den.width());
        (0..w)
            .filter(|&i| self.num.contains_var(i) || self.den.contains_var(i))
            .collect()
    }

    /// Replaces symbols by values and re-canonicalizes.
    pub fn substitute(&self, bindings: &HashMap<usize, Scalar>) -> Result<Scalar, ScalarError> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let mut cache: HashMap<(usize, u32), Scalar> = HashMap::new();
        let n = eval_poly(&self.num, bindings, &mut cache);
        let d = eval_poly(&self.den, bindings, &mut cache);
        if d.is_zero() {
            return Err(ScalarError::SubstitutionPole);
        }
        Ok(&n / &d)
    }

    /// Square root with the positive-branch convention, when it exists in the field.
    ///
    /// The returned root has numerator with positive leading coefficient.
    pub fn sqrt(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        let nd = self.num.mul(&self.den);
        let root = nd.sqrt()?;
        Some(canonical(root, self.den.clone()))
    }

    /// Laurent expansion in the listed symbols, treating all other symbols as coefficients.
    ///
    /// Fails unless the denominator is a monomial in `vars` times a factor free of `vars`.
    pub fn laurent_in(&self, vars: &[usize]) -> Result<Vec<(Vec<i64>, Scalar)>, ScalarError> {
        let split = |m: &Monomial| -> (Vec<i64>, Monomial) {
            let exps: Vec<i64> = vars.iter().map(|&v| m.exp(v) as i64).collect();
            let width = m.width();
            let rest = Monomial::from_exps(
                (0..width).map(|i| if vars.contains(&i) { 0 } else { m.exp(i) }),
            );
            (exps, rest)
        };
        let mut den_exps: Option<Vec<i64>> = None;
        let mut den_rest = Vec::new();
        for (m, c) in self.den.terms() {
            let (e, rest) = split(m);
            match &den_exps {
                None => den_exps = Some(e),
                Some(prev) if *prev == e => {}
                Some(_) => return Err(ScalarError::NotLaurent),
            }
            den_rest.push((rest, c.clone()));
        }
        let den_exps = den_exps.unwrap_or_else(|| vec![0; vars.len()]);
        let den_rest = Poly::from_terms(den_rest);
        let mut buckets: Vec<(Vec<i64>, Vec<(Monomial, BigInt)>)> = Vec::new();
        for (m, c) in self.num.terms() {
            let (e, rest) = split(m);
            let e: Vec<i64> = e.iter().zip(&den_exps).map(|(a, b)| a - b).collect();
            match buckets.iter_mut().find(|(k, _)| *k == e) {
                Some((_, v)) => v.push((rest, c.clone())),
                None => buckets.push((e, vec![(rest, c.clone())])),
            }
        }
        buckets.sort_by(|a, b| b.0.cmp(&a.0));
        buckets
            .into_iter()
            .map(|(e, terms)| Ok((e, Scalar::from_polys(Poly::from_terms(terms), den_rest.clone())?)))
            .collect()
    }

    /// Common total degree in `vars` of every Laurent term, or `None` when terms disagree
    /// (or the value is zero).
    pub fn laurent_homogeneous_degree(&self, vars: &[usize]) -> Result<Option<i64>, ScalarError> {
        let terms = self.laurent_in(vars)?;
        let mut degree = None;
        for (e, _) in &terms {
            let d: i64 = e.iter().sum();
            match degree {
                None => degree = Some(d),
                Some(prev) if prev == d => {}
                Some(_) => return Ok(None),
            }
        }
        Ok(degree)
    }
}

fn eval_poly(
    p: &Poly,
    bindings: &HashMap<usize, Scalar>,
    cache: &mut HashMap<(usize, u32), Scalar>,
) -> Scalar {
    let mut acc = Scalar::zero();
    for (m, c) in p.terms() {
        let mut rest = Vec::with_capacity(m.width());
        let mut value = Scalar::from_int(c.clone());
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                rest.push(0);
                continue;
            }
            match bindings.get(&i) {
                Some(v) => {
                    rest.push(0);
                    let pw = cache
                        .entry((i, e))
                        .or_insert_with(|| v.powi(e as i64))
                        .clone();
                    value = &value * &pw;
                }
                None => rest.push(e),
            }
        }
        let mono = Scalar::from_poly(Poly::term(Monomial::from_exps(rest), BigInt::one()));
        acc = &acc + &(&value * &mono);
    }
    acc
}

fn fix_sign(num: Poly, den: Poly) -> Scalar {
    if den.leading_coeff().is_negative() {
        Scalar {
            num: num.neg(),
            den: den.neg(),
        }
    } else {
        Scalar { num, den }
    }
}

/// Reduces `num / den` to lowest terms with positive denominator leading coefficient.
fn canonical(num: Poly, den: Poly) -> Scalar {
    if num.is_zero() {
        return Scalar::zero();
    }
    if den.is_one() {
        return Scalar { num, den };
    }
    if let Some(d) = den.as_constant() {
        let g = num.content().gcd(&d);
        let g = if d.is_negative() { -g } else { g };
        if g.is_one() {
            return Scalar { num, den };
        }
        return Scalar {
            num: num.div_int(&g).expect("content divides"),
            den: Poly::constant(d / g),
        };
    }
    let g = gcd(&num, &den);
    let (num, den) = if g.is_one() {
        (num, den)
    } else {
        (
            num.div_exact(&g).expect("gcd divides numerator"),
            den.div_exact(&g).expect("gcd divides denominator"),
        )
    };
    fix_sign(num, den)
}

fn add_scalars(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.den == b.den {
        return canonical(a.num.add(&b.num), a.den.clone());
    }
    if a.den.is_monomial() && b.den.is_monomial() {
        let (ma, ca) = a.den.leading().cloned().unwrap();
        let (mb, cb) = b.den.leading().cloned().unwrap();
        let m = ma.lcm(&mb);
        let c = ca.lcm(&cb);
        let fa = (m.checked_div(&ma).unwrap(), &c / &ca);
        let fb = (m.checked_div(&mb).unwrap(), &c / &cb);
        let num = a.num.mul_term(&fa.0, &fa.1).add(&b.num.mul_term(&fb.0, &fb.1));
        return canonical(num, Poly::term(m, c));
    }
    let g = gcd(&a.den, &b.den);
    let da = a.den.div_exact(&g).expect("gcd divides");
    let db = b.den.div_exact(&g).expect("gcd divides");
    let num = a.num.mul(&db).add(&b.num.mul(&da));
    canonical(num, a.den.mul(&db))
}

fn mul_scalars(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_zero() || b.is_zero() {
        return Scalar::zero();
    }
    if a.den.is_one() && b.den.is_one() {
        return Scalar {
            num: a.num.mul(&b.num),
            den: Poly::one(),
        };
    }
    let g1 = gcd(&a.num, &b.den);
    let g2 = gcd(&b.num, &a.den);
    let an = a.num.div_exact(&g1).expect("gcd divides");
    let bd = b.den.div_exact(&g1).expect("gcd divides");
    let bn = b.num.div_exact(&g2).expect("gcd divides");
    let ad = a.den.div_exact(&g2).expect("gcd divides");
    fix_sign(an.mul(&bn), ad.mul(&bd))
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        add_scalars(self, rhs)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        add_scalars(self, &-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        mul_scalars(self, rhs)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] for a fallible form.
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar { (&self).$f(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &'a Scalar) -> Scalar { (&self).$f(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar { self.$f(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| &acc + &x)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| &acc * &x)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?}) / ({:?})", self.num, self.den)
        }
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}
