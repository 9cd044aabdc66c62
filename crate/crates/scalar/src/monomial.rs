use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// A power product `x_0^e_0 x_1^e_1 ...` with non-negative exponents.
///
/// Trailing zero exponents are never stored, so monomials built against
/// symbol tables of different lengths still compare and multiply correctly.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: SmallVec<[u32; 6]>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(index: usize, exp: u32) -> Self {
        let mut exps: SmallVec<[u32; 6]> = SmallVec::from_elem(0, index + 1);
        exps[index] = exp;
        Monomial::from_exps(exps)
    }

    pub fn from_exps<I: IntoIterator<Item = u32>>(exps: I) -> Self {
        let mut exps: SmallVec<[u32; 6]> = exps.into_iter().collect();
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial { exps }
    }

    /// Exponent of variable `i` (zero when absent).
    pub fn exp(&self, i: usize) -> u32 {
        self.exps.get(i).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Number of stored exponent slots (one past the highest variable present).
    pub fn width(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.exps.len() >= other.exps.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut exps = long.exps.clone();
        for (e, s) in exps.iter_mut().zip(short.exps.iter()) {
            *e += *s;
        }
        Monomial { exps }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial::from_exps(self.exps.iter().map(|&e| e * k))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() <= other.exps.len()
            && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut exps = self.exps.clone();
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e -= *o;
        }
        Some(Monomial::from_exps(exps))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::from_exps(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.min(b)),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        Monomial::from_exps((0..n).map(|i| self.exp(i).max(other.exp(i))))
    }

    /// Removes variable `i`, returning its exponent and the remaining monomial.
    pub fn split_var(&self, i: usize) -> (u32, Monomial) {
        let e = self.exp(i);
        if e == 0 {
            return (0, self.clone());
        }
        let mut exps = self.exps.clone();
        exps[i] = 0;
        (e, Monomial::from_exps(exps))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order with variable 0 most significant.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let n = self.exps.len().max(other.exps.len());
        for i in 0..n {
            match self.exp(i).cmp(&other.exp(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_zeros_are_trimmed() {
        let m = Monomial::from_exps([1, 0, 0]);
        assert_eq!(m, Monomial::var(0, 1));
        assert_eq!(m.width(), 1);
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::var(0, 1);
        let b = Monomial::var(1, 1);
        let b2 = Monomial::var(1, 2);
        assert!(a > b);
        assert!(b2 > a);
        assert!(Monomial::one() < b);
    }

    #[test]
    fn division_and_gcd() {
        let m = Monomial::from_exps([2, 1]);
        let n = Monomial::from_exps([1, 3]);
        assert_eq!(m.gcd(&n), Monomial::from_exps([1, 1]));
        assert_eq!(m.lcm(&n), Monomial::from_exps([2, 3]));
        assert_eq!(m.checked_div(&Monomial::var(0, 2)), Some(Monomial::var(1, 1)));
        assert_eq!(m.checked_div(&n), None);
    }
}
