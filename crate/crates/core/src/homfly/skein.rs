use std::collections::{BTreeMap, HashMap};
use std::fmt;

use oqa_scalar::{BigInt, Scalar};

use crate::diagram::{MorseDiagram, SliceKind};

/// A Laurent polynomial in `α` and `z` with integer coefficients.
///
/// Conway polynomials use only `z`; their `α` exponents are all zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SkeinPolynomial {
    /// `(α exponent, z exponent) ↦ coefficient`, without zero entries.
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl SkeinPolynomial {
    pub fn zero() -> Self {
        SkeinPolynomial::default()
    }

    pub fn one() -> Self {
        SkeinPolynomial::monomial(1, 0, 0)
    }

    pub fn monomial(c: i64, alpha: i64, z: i64) -> Self {
        let mut p = SkeinPolynomial::zero();
        p.add_term((alpha, z), BigInt::from(c));
        p
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), BigInt)>>(terms: I) -> Self {
        let mut p = SkeinPolynomial::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: (i64, i64), c: BigInt) {
        let entry = self.terms.entry(k).or_default();
        *entry += c;
        if *entry == BigInt::from(0) {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &o.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        SkeinPolynomial { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = SkeinPolynomial::zero();
        for (&(a1, z1), c1) in &self.terms {
            for (&(a2, z2), c2) in &o.terms {
                out.add_term((a1 + a2, z1 + z2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(SkeinPolynomial::one(), |acc, _| acc.mul(self))
    }

    /// Multiplies by `α^a z^b`.
    pub fn shift(&self, a: i64, b: i64) -> Self {
        SkeinPolynomial { terms: self.terms.iter().map(|(&(x, y), c)| ((x + a, y + b), c.clone())).collect() }
    }

    /// Substitutes `α ↦ alpha`, `z ↦ z`.
    pub fn eval(&self, alpha: &Scalar, z: &Scalar) -> Option<Scalar> {
        let mut out = Scalar::zero();
        for (&(a, b), c) in &self.terms {
            let term = &(&Scalar::from_int(c.clone()) * &alpha.pow(a).ok()?) * &z.pow(b).ok()?;
            out = &out + &term;
        }
        Some(out)
    }

    /// Substitutes `α ↦ 1`.
    pub fn at_alpha_one(&self) -> Self {
        SkeinPolynomial::from_terms(self.terms.iter().map(|(&(_, z), c)| ((0, z), c.clone())))
    }
}

impl fmt::Display for SkeinPolynomial {
    /// Descending powers of `z`, then of `α`: `z^2 + 1`, `-α^-1 z^-1 + α z^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<&(i64, i64)> = self.terms.keys().collect();
        keys.sort_by(|x, y| (y.1, y.0).cmp(&(x.1, x.0)));
        let one = BigInt::from(1);
        for (k, &&(a, z)) in keys.iter().enumerate() {
            let c = &self.terms[&(a, z)];
            let negative = *c < BigInt::from(0);
            let mag = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut vars = Vec::new();
            for (name, e) in [("α", a), ("z", z)] {
                match e {
                    0 => {}
                    1 => vars.push(name.to_string()),
                    _ => vars.push(format!("{name}^{e}")),
                }
            }
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == one {
                f.write_str(&vars.join(" "))?;
            } else {
                write!(f, "{mag} {}", vars.join(" "))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Flavor {
    Homfly,
    Conway,
}

/// Skein recursion: switch the first crossing met from below along the traversal, smoothing it on
/// the side, until every crossing is first met from above. Such a descending diagram is an unlink.
struct Skein {
    flavor: Flavor,
    memo: HashMap<String, SkeinPolynomial>,
}

impl Skein {
    fn eval(&mut self, d: &MorseDiagram) -> SkeinPolynomial {
        let key = d.serialize();
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let rec = d.traverse();
        let out = match rec.first_under_crossing() {
            None => self.unlink(d.writhe(), rec.components.len()),
            Some(i) => {
                let switched = self.eval(&d.switch_crossing(i).expect("crossing slice"));
                let smoothed = self.eval(&d.smooth_crossing(i).expect("crossing slice")).shift(0, 1);
                if d.slices()[i].kind == SliceKind::Xp {
                    switched.add(&smoothed)
                } else {
                    switched.sub(&smoothed)
                }
            }
        };
        self.memo.insert(key, out.clone());
        out
    }

    fn unlink(&self, writhe: i64, components: usize) -> SkeinPolynomial {
        match self.flavor {
            Flavor::Conway if components == 1 => SkeinPolynomial::one(),
            Flavor::Conway => SkeinPolynomial::zero(),
            Flavor::Homfly => {
                let delta = SkeinPolynomial::monomial(1, 1, -1).sub(&SkeinPolynomial::monomial(1, -1, -1));
                delta.pow(components.saturating_sub(1) as u32).shift(writhe, 0)
            }
        }
    }
}

/// A split unknot multiplies by `(α − α⁻¹)/z`.
pub(super) fn homfly(d: &MorseDiagram) -> SkeinPolynomial {
    Skein { flavor: Flavor::Homfly, memo: HashMap::new() }.eval(d)
}

/// Split links give 0.
pub(super) fn conway(d: &MorseDiagram) -> SkeinPolynomial {
    Skein { flavor: Flavor::Conway, memo: HashMap::new() }.eval(d)
}
