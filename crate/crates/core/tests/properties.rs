//! Randomized properties over small instances, exact arithmetic.

use maw_core::boolalg::FinBool;
use maw_core::disint::{disintegrate, rel_product, verify_uniqueness};
use maw_core::format;
use maw_core::funcalg::{cond_exp, integrate, l1_direct, l1_level_set, linfty, Func};
use maw_core::proba::{ProbAlgebra, ProbMorphism};
use maw_core::stoned::{clopen, stone};
use maw_core::{Rational, Scalar};
use proptest::prelude::*;

/// A factor map from weighted atoms `x0…` onto the atoms hit by `labels`.
fn factor(weights: &[u64], labels: &[usize]) -> ProbMorphism {
    let total: u64 = weights.iter().sum();
    let mass = |w: u64| Rational::from_ratio(w as i64, total as i64);
    let x = ProbAlgebra::from_pairs(weights.iter().enumerate().map(|(i, &w)| (format!("x{i}"), mass(w)))).unwrap();
    let mut used: Vec<usize> = labels.to_vec();
    used.sort_unstable();
    used.dedup();
    let map: Vec<usize> = labels.iter().map(|l| used.binary_search(l).unwrap()).collect();
    let mut y = vec![0u64; used.len()];
    for (&w, &b) in weights.iter().zip(&map) {
        y[b] += w;
    }
    let y = ProbAlgebra::from_pairs(y.iter().enumerate().map(|(i, &w)| (format!("y{i}"), mass(w)))).unwrap();
    ProbMorphism::new(x, y, map).unwrap()
}

fn arb_factor() -> impl Strategy<Value = ProbMorphism> {
    (1usize..=8).prop_flat_map(|n| {
        (prop::collection::vec(1u64..=6, n), prop::collection::vec(0usize..4, n))
            .prop_map(|(weights, labels)| factor(&weights, &labels))
    })
}

fn arb_values(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-9i64..=9, 1i64..=6), n)
        .prop_map(|pairs| pairs.into_iter().map(|(p, q)| Rational::from_ratio(p, q)).collect())
}

proptest! {
    #[test]
    fn disintegration_is_the_unique_kernel(pi in arb_factor()) {
        let k = disintegrate(&pi);
        prop_assert!(k.is_supported() && k.is_normalized() && k.is_mixture());
        prop_assert!(k.satisfies_identity());
        prop_assert!(verify_uniqueness(&pi, &k));
    }

    #[test]
    fn conditional_expectation_preserves_the_integral(
        (pi, values) in arb_factor().prop_flat_map(|pi| {
            let n = pi.source().atom_count();
            (Just(pi), arb_values(n))
        })
    ) {
        let f = Func::real(values);
        let e = cond_exp(&pi, &f);
        prop_assert_eq!(integrate(&linfty(pi.source()), &f), integrate(&linfty(pi.target()), &e));
    }

    #[test]
    fn level_set_l1_matches_direct(values in (1usize..=7).prop_flat_map(arb_values)) {
        let n = values.len();
        let x = ProbAlgebra::uniform(FinBool::new((0..n).map(|i| format!("a{i}"))).unwrap()).unwrap();
        let a = linfty(&x);
        let f = Func::real(values);
        prop_assert_eq!(l1_level_set(&a, &f).unwrap(), l1_direct(&a, &f).unwrap());
    }

    #[test]
    fn relative_self_product_commutes_and_is_generated(pi in arb_factor()) {
        let r = rel_product(&pi, &pi).unwrap();
        prop_assert!(r.commutes(&pi, &pi));
        prop_assert!(r.f1f2_violations(&pi, &pi).is_empty());
        prop_assert!(r.is_generated_by_factors());
    }

    #[test]
    fn morphisms_round_trip_through_json(pi in arb_factor()) {
        let text = format::to_text(&pi);
        let back: ProbMorphism = format::from_text(&text, "prop").unwrap();
        prop_assert_eq!(&back, &pi);
        prop_assert_eq!(format::to_text(&back), text);
    }

    #[test]
    fn rationals_print_in_lowest_terms(p in -1000i64..1000, q in 1i64..1000) {
        let r = Rational::from_ratio(p, q);
        let text = r.to_text();
        prop_assert_eq!(Rational::from_text(&text).unwrap(), r.clone());
        if let Some((num, den)) = text.split_once('/') {
            let (num, den): (i64, i64) = (num.parse().unwrap(), den.parse().unwrap());
            prop_assert!(den > 1);
            prop_assert_eq!(num * q, p * den);
        }
    }

    #[test]
    fn clopen_of_stone_is_the_identity(n in 0usize..=6) {
        let b = FinBool::new((0..n).map(|i| format!("b{i}"))).unwrap();
        prop_assert_eq!(clopen(&stone(&b)), b);
    }
}
