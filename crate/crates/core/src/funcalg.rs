//! The function algebra `L∞(X)` of a finite probability algebra.
//!
//! Elements are vectors of Gaussian scalars indexed by atoms, with pointwise
//! product, conjugation and the trace `τ(f) = Σ_a f(a) μ(a)`. Norms that would
//! need a square root are reported squared so everything stays in the field.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::boolalg::{Element, FinBool};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::proba::{MeasuredBool, ProbAlgebra, ProbMorphism};
use crate::scalar::{self, Rational, Scalar};

/// A function on the atoms of a probability algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Func<S = Rational>(pub Vec<Complex<S>>);

impl<S: Scalar> Func<S> {
    pub fn real(values: Vec<S>) -> Self {
        Func(values.into_iter().map(scalar::real).collect())
    }

    pub fn constant(len: usize, value: Complex<S>) -> Self {
        Func(vec![value; len])
    }

    pub fn indicator(e: &Element) -> Self {
        Func(
            (0..e.width())
                .map(|a| if e.contains(a) { Complex::new(S::one(), S::zero()) } else { Complex::new(S::zero(), S::zero()) })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(|z| scalar::is_zero(&z.im))
    }

    pub fn conj(&self) -> Self {
        Func(self.0.iter().map(Complex::conj).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Func(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() * b.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Func(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Func(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() - b.clone()).collect())
    }

    pub fn scale(&self, c: &Complex<S>) -> Self {
        Func(self.0.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn same(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| scalar::complex_same(a, b))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|z| scalar::is_zero(&z.re) && scalar::is_zero(&z.im))
    }

    /// `f = f* = f²`.
    pub fn is_projection(&self) -> bool {
        self.same(&self.conj()) && self.same(&self.mul(self))
    }

    /// `max_a |f(a)|²`.
    pub fn sup_norm_sqr(&self) -> S {
        self.0
            .iter()
            .map(scalar::norm_sqr)
            .fold(S::zero(), |acc, v| if v > acc { v } else { acc })
    }
}

/// `L∞(X)` for a finite probability algebra `X`.
#[derive(Clone, Debug, PartialEq)]
pub struct FuncAlg<S = Rational> {
    base: ProbAlgebra<S>,
}

pub fn linfty<S: Scalar>(x: &ProbAlgebra<S>) -> FuncAlg<S> {
    FuncAlg { base: x.clone() }
}

impl<S: Scalar> FuncAlg<S> {
    pub fn base(&self) -> &ProbAlgebra<S> {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.atom_count()
    }

    pub fn one(&self) -> Func<S> {
        Func::constant(self.dim(), Complex::new(S::one(), S::zero()))
    }

    pub fn zero(&self) -> Func<S> {
        Func::constant(self.dim(), Complex::new(S::zero(), S::zero()))
    }

    pub fn basis(&self, atom: usize) -> Func<S> {
        Func::indicator(&self.base.algebra().atom(atom))
    }

    fn check(&self, f: &Func<S>) {
        assert_eq!(f.len(), self.dim(), "function lives on a different algebra");
    }

    /// `τ(f) = Σ_a f(a) μ(a)`.
    pub fn trace(&self, f: &Func<S>) -> Complex<S> {
        self.check(f);
        f.0.iter()
            .zip(self.base.measure())
            .fold(Complex::new(S::zero(), S::zero()), |acc, (z, m)| {
                acc + Complex::new(z.re.clone() * m.clone(), z.im.clone() * m.clone())
            })
    }

    /// `⟨f, g⟩ = τ(f g*)`.
    pub fn inner(&self, f: &Func<S>, g: &Func<S>) -> Complex<S> {
        self.trace(&f.mul(&g.conj()))
    }

    /// Every projection, found by solving `z = z̄ = z²` coordinatewise: each
    /// coordinate is 0 or 1. `2^n` of them.
    pub fn projections(&self) -> Vec<Func<S>> {
        enumerate::subsets(self.dim())
            .map(|mask| Func::indicator(&Element::from_mask(&mask)))
            .collect()
    }

    /// Minimal nonzero projections, found by brute force over
    /// [`FuncAlg::projections`].
    pub fn minimal_projections(&self) -> Vec<Func<S>> {
        let all = self.projections();
        all.iter()
            .filter(|p| !p.is_zero())
            .filter(|p| {
                all.iter()
                    .filter(|q| !q.is_zero() && !q.same(p))
                    .all(|q| !q.mul(p).same(q))
            })
            .cloned()
            .collect()
    }
}

/// A unital *-homomorphism `L∞(Y) → L∞(X)`, determined by the images of the
/// minimal projections of `L∞(Y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FuncHom<S = Rational> {
    source: FuncAlg<S>,
    target: FuncAlg<S>,
    images: Vec<Func<S>>,
}

impl<S: Scalar> FuncHom<S> {
    pub fn identity(a: &FuncAlg<S>) -> Self {
        FuncHom {
            source: a.clone(),
            target: a.clone(),
            images: (0..a.dim()).map(|i| a.basis(i)).collect(),
        }
    }

    pub fn source(&self) -> &FuncAlg<S> {
        &self.source
    }

    pub fn target(&self) -> &FuncAlg<S> {
        &self.target
    }

    pub fn images(&self) -> &[Func<S>] {
        &self.images
    }

    /// `f ↦ Σ_b f(b) · image(1_b)`.
    pub fn apply(&self, f: &Func<S>) -> Func<S> {
        self.source.check(f);
        f.0.iter()
            .zip(&self.images)
            .fold(self.target.zero(), |acc, (c, img)| acc.add(&img.scale(c)))
    }

    /// `later ∘ earlier`.
    pub fn compose(later: &Self, earlier: &Self) -> Result<Self> {
        if earlier.target != later.source {
            return Err(Error::CompositionMismatch {
                reason: "earlier.target differs from later.source".into(),
            });
        }
        Ok(FuncHom {
            source: earlier.source.clone(),
            target: later.target.clone(),
            images: earlier.images.iter().map(|img| later.apply(img)).collect(),
        })
    }

    pub fn same(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.images.iter().zip(&other.images).all(|(a, b)| a.same(b))
    }

    pub fn is_trace_preserving(&self) -> bool {
        (0..self.source.dim()).all(|b| {
            let f = self.source.basis(b);
            scalar::complex_same(&self.target.trace(&self.apply(&f)), &self.source.trace(&f))
        })
    }
}

/// Koopman operator of `T: X → Y`: `g ↦ g ∘ T`, from `L∞(Y)` to `L∞(X)`.
pub fn koopman<S: Scalar>(t: &ProbMorphism<S>) -> FuncHom<S> {
    let source = linfty(t.target());
    let target = linfty(t.source());
    let images = (0..source.dim())
        .map(|b| {
            let fiber = Element::from_indices(
                target.dim(),
                t.map().iter().enumerate().filter(|(_, &y)| y == b).map(|(a, _)| a),
            );
            Func::indicator(&fiber)
        })
        .collect();
    FuncHom { source, target, images }
}

/// The probability algebra of projections of `A`: atoms are the minimal
/// projections `1_a`, masses their traces.
pub fn idem<S: Scalar>(a: &FuncAlg<S>) -> ProbAlgebra<S> {
    let measure: Vec<S> = (0..a.dim())
        .map(|i| {
            let p = a.basis(i);
            debug_assert!(p.is_projection());
            a.trace(&p).re
        })
        .collect();
    let algebra = FinBool::new(a.base.atoms().iter().cloned()).expect("atoms of a valid algebra");
    ProbAlgebra::new(algebra, measure).expect("trace of minimal projections is a positive distribution")
}

/// Idem on morphisms: a unital *-homomorphism `L∞(Y) → L∞(X)` sends minimal
/// projections to a partition of unity; atom `a` of `X` goes to the unique
/// `b` with `K(1_b)(a) = 1`.
pub fn idem_morphism<S: Scalar>(k: &FuncHom<S>) -> Result<ProbMorphism<S>> {
    let x = idem(&k.target);
    let y = idem(&k.source);
    let map = (0..k.target.dim())
        .map(|a| {
            let owners: Vec<usize> = (0..k.source.dim())
                .filter(|&b| scalar::is_one(&k.images[b].0[a].re))
                .collect();
            match owners.as_slice() {
                [b] => Ok(*b),
                _ => Err(Error::NotAHomomorphism {
                    reason: format!("images of minimal projections do not partition unity at atom #{a}"),
                }),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    ProbMorphism::new(x, y, map)
}

/// `∫_X f dμ = τ(f)`.
pub fn integrate<S: Scalar>(a: &FuncAlg<S>, f: &Func<S>) -> Complex<S> {
    a.trace(f)
}

/// `E(f|Y)(b) = Σ_{π(a) = b} f(a) μ_X(a) / μ_Y(b)`.
pub fn cond_exp<S: Scalar>(pi: &ProbMorphism<S>, f: &Func<S>) -> Func<S> {
    let x = pi.source();
    let y = pi.target();
    assert_eq!(f.len(), x.atom_count(), "function lives on a different algebra");
    let zero = Complex::new(S::zero(), S::zero());
    let mut sums = vec![zero; y.atom_count()];
    for ((z, m), &b) in f.0.iter().zip(x.measure()).zip(pi.map()) {
        sums[b] = sums[b].clone() + Complex::new(z.re.clone() * m.clone(), z.im.clone() * m.clone());
    }
    Func(
        sums.into_iter()
            .zip(y.measure())
            .map(|(s, m)| Complex::new(s.re / m.clone(), s.im / m.clone()))
            .collect(),
    )
}

/// Exponents computed exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    One,
    Two,
    Infinity,
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" => Ok(Exponent::One),
            "2" => Ok(Exponent::Two),
            "inf" | "infinity" | "∞" => Ok(Exponent::Infinity),
            other => Err(Error::UnsupportedExponent { p: other.to_string() }),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exponent::One => "1",
            Exponent::Two => "2",
            Exponent::Infinity => "inf",
        })
    }
}

/// A norm value; `squared` when the field lacks the square root.
#[derive(Clone, Debug, PartialEq)]
pub struct Norm<S = Rational> {
    pub p: Exponent,
    pub value: S,
    pub squared: bool,
}

fn real_abs<S: Scalar>(a: &FuncAlg<S>, f: &Func<S>) -> Result<Vec<S>> {
    f.0.iter()
        .enumerate()
        .map(|(i, z)| {
            if scalar::is_zero(&z.im) {
                Ok(z.re.abs())
            } else {
                Err(Error::RealValuedRequired {
                    atom: a.base.atoms()[i].clone(),
                })
            }
        })
        .collect()
}

/// `‖f‖₁ = ∫₀^∞ μ(|f| > r) dr`, evaluated as a finite sum over the distinct
/// values `0 = r₀ < r₁ < … < r_k` of `|f|`: `Σ (r_i − r_{i−1}) μ(|f| > r_{i−1})`.
pub fn l1_level_set<S: Scalar>(a: &FuncAlg<S>, f: &Func<S>) -> Result<S> {
    let abs = real_abs(a, f)?;
    let mut levels: Vec<S> = abs.iter().filter(|v| v.is_positive()).cloned().collect();
    levels.sort_by(|x, y| x.partial_cmp(y).expect("ordered field"));
    levels.dedup_by(|x, y| x.same(y));
    let mut total = S::zero();
    let mut prev = S::zero();
    for r in levels {
        let above = abs
            .iter()
            .zip(a.base.measure())
            .filter(|(v, _)| **v > prev)
            .fold(S::zero(), |acc, (_, m)| acc + m.clone());
        total = total + (r.clone() - prev) * above;
        prev = r;
    }
    Ok(total)
}

/// `‖f‖₁ = Σ_a |f(a)| μ(a)`.
pub fn l1_direct<S: Scalar>(a: &FuncAlg<S>, f: &Func<S>) -> Result<S> {
    let abs = real_abs(a, f)?;
    Ok(abs
        .into_iter()
        .zip(a.base.measure())
        .fold(S::zero(), |acc, (v, m)| acc + v * m.clone()))
}

/// `p = 1`: the norm, by both routes (checked equal). `p = 2`: `τ(f f*)`.
/// `p = ∞`: `max |f|²`.
pub fn lp_norm<S: Scalar>(a: &FuncAlg<S>, f: &Func<S>, p: Exponent) -> Result<Norm<S>> {
    a.check(f);
    let (value, squared) = match p {
        Exponent::One => {
            let level = l1_level_set(a, f)?;
            let direct = l1_direct(a, f)?;
            assert!(level.same(&direct), "level-set and direct L1 disagree");
            (level, false)
        }
        Exponent::Two => (a.inner(f, f).re, true),
        Exponent::Infinity => (f.sup_norm_sqr(), true),
    };
    Ok(Norm { p, value, squared })
}

/// A state on the functions of a finite discrete space, given by its values
/// on point indicators.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteState<S = Rational> {
    points: FinBool,
    values: Vec<S>,
}

impl<S: Scalar> FiniteState<S> {
    /// Positivity and `λ(1) = 1` are checked.
    pub fn new(points: FinBool, values: Vec<S>) -> Result<Self> {
        if values.len() != points.atom_count() {
            return Err(Error::NotAState {
                reason: "one value per point is required".into(),
            });
        }
        if let Some((p, v)) = points.atoms().iter().zip(&values).find(|(_, v)| v.is_negative()) {
            return Err(Error::NotAState {
                reason: format!("λ(1_{p}) = {} is negative", v.to_text()),
            });
        }
        if !scalar::is_unit_total(&values) {
            return Err(Error::NotAState {
                reason: format!("λ(1) = {}", scalar::sum(&values).to_text()),
            });
        }
        Ok(FiniteState { points, values })
    }

    pub fn points(&self) -> &FinBool {
        &self.points
    }

    /// `λ(1_p)` for every point `p`, in atom order.
    pub fn values(&self) -> &[S] {
        &self.values
    }

    /// `λ(f)` by linearity from the indicator values.
    pub fn evaluate(&self, f: &[S]) -> S {
        f.iter()
            .zip(&self.values)
            .fold(S::zero(), |acc, (x, v)| acc + x.clone() * v.clone())
    }
}

/// The unique measure `μ` with `λ(f) = Σ_k f(k) μ(k)`.
pub fn riesz_finite<S: Scalar>(state: &FiniteState<S>) -> MeasuredBool<S> {
    let measure = (0..state.points.atom_count())
        .map(|k| {
            let indicator: Vec<S> = (0..state.points.atom_count())
                .map(|j| if j == k { S::one() } else { S::zero() })
                .collect();
            state.evaluate(&indicator)
        })
        .collect();
    MeasuredBool::new(state.points.clone(), measure).expect("states are positive and normalized")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn prob(pairs: &[(&str, Rational)]) -> ProbAlgebra {
        ProbAlgebra::from_pairs(pairs.iter().cloned()).unwrap()
    }

    fn reals(v: &[i64]) -> Func {
        Func::real(v.iter().map(|&x| q(x, 1)).collect())
    }

    fn uniform(n: usize) -> ProbAlgebra {
        ProbAlgebra::uniform(FinBool::new((0..n).map(|i| format!("a{i}"))).unwrap()).unwrap()
    }

    #[test]
    fn trace_is_faithful_and_unital() {
        let a = linfty(&prob(&[("a", q(1, 4)), ("b", q(3, 4))]));
        assert_eq!(a.trace(&a.one()), Complex::new(q(1, 1), q(0, 1)));
        let f = Func(vec![Complex::new(q(1, 2), q(-1, 1)), Complex::new(q(0, 1), q(2, 1))]);
        let ff = a.inner(&f, &f);
        assert!(ff.im.is_zero());
        assert!(ff.re > q(0, 1));
        assert!(a.inner(&a.zero(), &a.zero()).re.is_zero());
    }

    #[test]
    fn projections_are_indicators() {
        for n in 1..=4 {
            let a = linfty(&uniform(n));
            let p = a.projections();
            assert_eq!(p.len(), 1 << n);
            assert!(p.iter().all(Func::is_projection));
            let minimal = a.minimal_projections();
            assert_eq!(minimal.len(), n);
            for i in 0..n {
                assert!(minimal.iter().any(|m| m.same(&a.basis(i))));
            }
        }
        let f = Func::<Rational>(vec![Complex::new(q(0, 1), q(1, 1))]);
        assert!(!f.is_projection());
    }

    #[test]
    fn sup_norm_splits_over_projections() {
        let a = linfty(&uniform(3));
        let f = Func(vec![
            Complex::new(q(1, 2), q(1, 1)),
            Complex::new(q(-3, 1), q(0, 1)),
            Complex::new(q(1, 1), q(1, 1)),
        ]);
        for p in a.projections() {
            let rest = a.one().sub(&p);
            let split = f.mul(&p).sup_norm_sqr().max(f.mul(&rest).sup_norm_sqr());
            assert_eq!(f.sup_norm_sqr(), split);
        }
    }

    #[test]
    fn koopman_duplicates_coordinates() {
        let x = uniform(4);
        let y = ProbAlgebra::uniform(FinBool::new(["u", "v"]).unwrap()).unwrap();
        let t = ProbMorphism::new(x.clone(), y.clone(), vec![0, 0, 1, 1]).unwrap();
        let k = koopman(&t);
        let g = reals(&[5, 7]);
        assert_eq!(k.apply(&g), reals(&[5, 5, 7, 7]));
        assert_eq!(linfty(&x).trace(&k.apply(&g)), linfty(&y).trace(&g));
        assert!(k.is_trace_preserving());
        assert!(koopman(&ProbMorphism::identity(&x)).same(&FuncHom::identity(&linfty(&x))));
    }

    #[test]
    fn probability_duality() {
        let x = prob(&[("a", q(1, 4)), ("b", q(3, 4))]);
        assert_eq!(idem(&linfty(&x)), x);
        assert_eq!(linfty(&idem(&linfty(&x))), linfty(&x));
        let p = ProbAlgebra::<Rational>::point();
        assert_eq!(idem(&linfty(&p)), p);
        let t = ProbMorphism::new(uniform(4), ProbAlgebra::uniform(FinBool::new(["u", "v"]).unwrap()).unwrap(), vec![0, 1, 1, 0]).unwrap();
        assert_eq!(idem_morphism(&koopman(&t)).unwrap(), t);
    }

    #[test]
    fn integration() {
        let a = linfty(&uniform(2));
        assert_eq!(integrate(&a, &a.one()).re, q(1, 1));
        let x = prob(&[("a", q(1, 6)), ("b", q(1, 3)), ("c", q(1, 2))]);
        let ax = linfty(&x);
        let e = x.algebra().element(&["a", "c"]).unwrap();
        assert_eq!(integrate(&ax, &Func::indicator(&e)).re, q(2, 3));
        assert_eq!(integrate(&a, &reals(&[2, 4])).re, q(3, 1));
    }

    #[test]
    fn conditional_expectation_examples() {
        let x = uniform(2);
        let point = ProbAlgebra::point();
        let to_point = ProbMorphism::new(x.clone(), point, vec![0, 0]).unwrap();
        assert_eq!(cond_exp(&to_point, &reals(&[2, 4])), reals(&[3]));

        let x = prob(&[("a", q(1, 6)), ("b", q(1, 3)), ("c", q(1, 2))]);
        let y = prob(&[("y1", q(1, 2)), ("y2", q(1, 2))]);
        let pi = ProbMorphism::new(x.clone(), y.clone(), vec![0, 0, 1]).unwrap();
        let f = reals(&[1, 4, 7]);
        let e = cond_exp(&pi, &f);
        assert_eq!(e, reals(&[3, 7]));
        // orthogonal projection characterization on indicators of Y
        let (ax, ay) = (linfty(&x), linfty(&y));
        let k = koopman(&pi);
        for b in 0..2 {
            let g = ay.basis(b);
            assert_eq!(ax.trace(&f.mul(&k.apply(&g))), ay.trace(&e.mul(&g)));
        }
        // pulled-back functions are fixed
        let g = reals(&[5, -1]);
        assert_eq!(cond_exp(&pi, &k.apply(&g)), g);
    }

    #[test]
    fn lp_examples() {
        let a = linfty(&uniform(2));
        let f = reals(&[1, -1]);
        assert_eq!(l1_level_set(&a, &f).unwrap(), q(1, 1));
        assert_eq!(l1_direct(&a, &f).unwrap(), q(1, 1));

        let one = linfty(&ProbAlgebra::point());
        let f = reals(&[3]);
        assert_eq!(lp_norm(&one, &f, Exponent::One).unwrap().value, q(3, 1));
        assert_eq!(lp_norm(&one, &f, Exponent::Two).unwrap().value, q(9, 1));
        assert_eq!(lp_norm(&one, &f, Exponent::Infinity).unwrap().value, q(9, 1));

        let a = linfty(&prob(&[("a", q(1, 2)), ("b", q(1, 3)), ("c", q(1, 6))]));
        let f = reals(&[1, 2, 3]);
        assert_eq!(l1_level_set(&a, &f).unwrap(), q(5, 3));
        assert_eq!(l1_direct(&a, &f).unwrap(), q(5, 3));

        let complex = Func(vec![Complex::new(q(0, 1), q(1, 1)), Complex::new(q(1, 1), q(0, 1)), Complex::new(q(1, 1), q(0, 1))]);
        assert_eq!(lp_norm(&a, &complex, Exponent::One).unwrap_err().name(), "RealValuedRequired");
        assert_eq!(lp_norm(&a, &complex, Exponent::Infinity).unwrap().value, q(1, 1));
        assert_eq!("3".parse::<Exponent>().unwrap_err().name(), "UnsupportedExponent");
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
    }

    #[test]
    fn riesz_on_finite_spaces() {
        let k = FinBool::new(["p", "q"]).unwrap();
        let state = FiniteState::new(k.clone(), vec![q(1, 3), q(2, 3)]).unwrap();
        assert_eq!(riesz_finite(&state).measure(), [q(1, 3), q(2, 3)]);
        let dirac = FiniteState::new(k.clone(), vec![q(0, 1), q(1, 1)]).unwrap();
        assert_eq!(riesz_finite(&dirac).measure(), [q(0, 1), q(1, 1)]);
        assert_eq!(FiniteState::new(k.clone(), vec![q(-1, 3), q(4, 3)]).unwrap_err().name(), "NotAState");
        assert_eq!(FiniteState::new(k, vec![q(1, 3), q(1, 3)]).unwrap_err().name(), "NotAState");
    }
}
