//! Property tests over randomly generated exact data.

use hurwitz_core::cayley::{cayley_transform, source_len, CAYLEY_DIMS};
use hurwitz_core::exactnum::{rat, Composer, Family, Monomial, MultiPoly, Rational, Var};
use hurwitz_core::hurwitz::{build_hurwitz, ParamVector};
use hurwitz_core::ksmap::{quadratic_map, Side, MAP_DIMS};
use hurwitz_core::matrix::ExactMatrix;
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

fn monomial(arity: usize) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0u8..=2, arity).prop_map(|exps| {
        exps.iter().enumerate().fold(Monomial::one(), |m, (slot, &e)| {
            (0..e).fold(m, |acc, _| acc.mul(&Monomial::var(slot)))
        })
    })
}

fn poly(family: Family, arity: usize) -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((monomial(arity), rational()), 0..5)
        .prop_map(move |terms| MultiPoly::from_terms(family, arity, terms))
}

fn point(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(rational(), len)
}

fn param(len: usize) -> impl Strategy<Value = ParamVector> {
    point(len)
        .prop_filter("nonzero", |v| v.iter().any(|x| !x.is_zero()))
        .prop_map(|v| ParamVector::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in poly(Family::U, 3), q in poly(Family::U, 3), r in poly(Family::U, 3)) {
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) - &q, p.clone());
    }

    #[test]
    fn partials_commute(p in poly(Family::U, 3)) {
        let a = p.partial(Var::u(1)).unwrap().partial(Var::u(2)).unwrap();
        let b = p.partial(Var::u(2)).unwrap().partial(Var::u(1)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn eval_of_compose(f in poly(Family::X, 2), g1 in poly(Family::U, 3), g2 in poly(Family::U, 3), a in point(3)) {
        let subst = vec![g1.clone(), g2.clone()];
        let composed = f.compose(&subst).unwrap();
        let inner = vec![g1.eval(&a).unwrap(), g2.eval(&a).unwrap()];
        prop_assert_eq!(composed.eval(&a).unwrap(), f.eval(&inner).unwrap());
        prop_assert_eq!(Composer::new(&subst).compose(&f).unwrap(), composed);
    }

    #[test]
    fn display_parse_round_trip(p in poly(Family::U, 4)) {
        let text = p.to_string();
        let back: MultiPoly = text.parse().unwrap();
        prop_assert_eq!(back.with_arity(Family::U, 4), p.with_arity(Family::U, 4));
    }

    #[test]
    fn hurwitz_rows_orthogonal(u8 in param(8)) {
        for n in [2usize, 4, 8] {
            let u = ParamVector::new(u8.entries()[..n].to_vec()).unwrap();
            let h = build_hurwitz(n, &u).unwrap();
            prop_assert_eq!(h.mul(&h.transpose()), ExactMatrix::scalar(n, &u.norm_sq()));
        }
    }

    #[test]
    fn cayley_scaled_orthogonal(u16 in param(16), first in rational().prop_filter("nonzero", |x| !x.is_zero())) {
        for n in CAYLEY_DIMS {
            let mut entries = u16.entries()[..source_len(n).unwrap()].to_vec();
            entries[0] = first.clone();
            let u = ParamVector::new(entries).unwrap();
            let o = cayley_transform(n, &u).unwrap();
            prop_assert!(o.gram_residual().is_zero(), "n = {}", n);
        }
    }

    #[test]
    fn quadratic_maps_compose_norms(u16 in param(16)) {
        for n in MAP_DIMS {
            for side in Side::BOTH {
                let m = quadratic_map(n, side).unwrap();
                let u = ParamVector::new(u16.entries()[..m.n_source].to_vec()).unwrap();
                let x = m.apply(&u).unwrap();
                let sum: Rational = x.iter().map(|v| v * v).sum();
                prop_assert_eq!(sum, &u.norm_sq() * &u.norm_sq());
            }
        }
    }
}
