//! The same constructions over `f64`: results agree with the exact field
//! up to rounding.

use maw_core::disint::disintegrate;
use maw_core::funcalg::{cond_exp, integrate, linfty, Func};
use maw_core::proba::tensor;
use maw_core::{ProbAlgebraF64, ProbMorphismF64, Scalar};

fn thirds() -> ProbMorphismF64 {
    let x = ProbAlgebraF64::from_pairs([("a", 1.0 / 6.0), ("b", 1.0 / 3.0), ("c", 1.0 / 2.0)]).unwrap();
    let y = ProbAlgebraF64::from_pairs([("u", 1.0 / 2.0), ("v", 1.0 / 2.0)]).unwrap();
    ProbMorphismF64::new(x, y, vec![0, 0, 1]).unwrap()
}

#[test]
fn disintegration_in_floating_point() {
    let k = disintegrate(&thirds());
    assert!(k.fiber(0)[0].same(&(1.0 / 3.0)));
    assert!(k.fiber(0)[1].same(&(2.0 / 3.0)));
    assert!(k.fiber(1)[2].same(&1.0));
    assert!(k.satisfies_identity());
}

#[test]
fn conditional_expectation_in_floating_point() {
    let pi = thirds();
    let f = Func::real(vec![1.0, 4.0, 7.0]);
    let e = cond_exp(&pi, &f);
    assert!(e.0[0].re.same(&3.0));
    assert!(e.0[1].re.same(&7.0));
    assert!(integrate(&linfty(pi.source()), &f).re.same(&5.0));
}

#[test]
fn tensor_masses_in_floating_point() {
    let x = ProbAlgebraF64::from_pairs([("p", 0.25), ("q", 0.75)]).unwrap();
    let y = ProbAlgebraF64::from_pairs([("r", 1.0 / 3.0), ("s", 2.0 / 3.0)]).unwrap();
    let t = tensor(&[x, y]);
    let expected = [1.0 / 12.0, 1.0 / 6.0, 0.25, 0.5];
    for (m, e) in t.algebra.measure().iter().zip(expected) {
        assert!(m.same(&e), "{m} vs {e}");
    }
}

#[test]
fn inexact_measures_are_still_validated() {
    let x = ProbAlgebraF64::from_pairs([("a", 0.5), ("b", 0.5)]).unwrap();
    let y = ProbAlgebraF64::from_pairs([("u", 0.25), ("v", 0.75)]).unwrap();
    let err = ProbMorphismF64::new(x, y, vec![0, 1]).unwrap_err();
    assert_eq!(err.name(), "NotMeasurePreserving");
}
