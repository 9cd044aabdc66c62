use std::collections::HashMap;

use oqa_scalar::{Scalar, SymbolTable};
use proptest::prelude::*;

/// Small random rational functions in three symbols, built from a term list.
fn small_poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-4i64..=4, 0u32..3, 0u32..3, 0u32..2), 1..4).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(c, i, j, k)| {
                Scalar::from_int(c)
                    * Scalar::var(0).powi(i as i64)
                    * Scalar::var(1).powi(j as i64)
                    * Scalar::var(2).powi(k as i64)
            })
            .sum()
    })
}

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (small_poly(), small_poly()).prop_map(|(n, d)| {
        if d.is_zero() {
            n
        } else {
            &n / &d
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associativity(x in small_scalar(), y in small_scalar(), z in small_scalar()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn distributivity(x in small_scalar(), y in small_scalar(), z in small_scalar()) {
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn inverses(x in small_scalar()) {
        prop_assume!(!x.is_zero());
        prop_assert_eq!(&x * &x.inv().unwrap(), Scalar::one());
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn construction_order_is_irrelevant(x in small_scalar(), y in small_scalar(), z in small_scalar()) {
        prop_assume!(!z.is_zero());
        let left = &(&(&x * &z) + &(&y * &z)) / &z;
        prop_assert_eq!(left, &x + &y);
    }

    #[test]
    fn substitution_is_a_homomorphism(x in small_scalar(), y in small_scalar(), v in 1i64..5, w in -3i64..3) {
        let mut b = HashMap::new();
        b.insert(0usize, Scalar::from_int(v));
        b.insert(2usize, Scalar::from_int(w));
        let (Ok(sx), Ok(sy), Ok(sxy)) = (x.substitute(&b), y.substitute(&b), (&x * &y).substitute(&b)) else {
            return Ok(());
        };
        prop_assert_eq!(sxy, &sx * &sy);
    }

    #[test]
    fn text_round_trip(x in small_scalar()) {
        let t = SymbolTable::new(["a", "sbc", "w1"]).unwrap();
        let printed = t.format(&x);
        prop_assert_eq!(t.parse(&printed).unwrap(), x);
    }

    #[test]
    fn square_roots_of_squares(x in small_scalar()) {
        let sq = &x * &x;
        let r = sq.sqrt().expect("a square has a root");
        prop_assert_eq!(&r * &r, sq);
    }
}

fn raw_poly() -> impl Strategy<Value = oqa_scalar::Poly> {
    small_poly().prop_map(|s| s.numer().clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn gcd_recovers_planted_factor(f in raw_poly(), g in raw_poly(), h in raw_poly()) {
        prop_assume!(!h.is_zero() && !f.is_zero() && !g.is_zero());
        let d = oqa_scalar::gcd(&f.mul(&h), &g.mul(&h));
        prop_assert!(d.div_exact(&h).is_some());
        let (cf, cg) = (f.mul(&h).div_exact(&d).unwrap(), g.mul(&h).div_exact(&d).unwrap());
        prop_assert!(oqa_scalar::gcd(&cf, &cg).is_constant());
    }
}
