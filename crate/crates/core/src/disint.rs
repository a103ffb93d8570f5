//! Disintegration of factor maps, relative products and ergodic
//! decomposition.
//!
//! For `π: X → Y` the disintegration is the kernel `y ↦ μ_y` on the atoms of
//! `X`, characterized by
//! `∫_X f·(g∘π) dμ_X = ∫_Y (∫_X f dμ_y) g(y) dμ_Y(y)` for all `f, g`.

use std::collections::BTreeMap;

use crate::boolalg::{self, Element, FinBool};
use crate::error::{Error, Result};
use crate::funcalg::{self, Func};
use crate::ident;
use crate::proba::{self, InvariantFactor, MeasuredBool, ProbAlgebra, ProbMorphism};
use crate::scalar::{self, Rational, Scalar};

/// A kernel over a factor map: `fibers[y][a] = μ_y(a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel<S = Rational> {
    base: ProbMorphism<S>,
    fibers: Vec<Vec<S>>,
}

impl<S: Scalar> Kernel<S> {
    /// Only the shape is checked; whether the kernel is *the* disintegration
    /// is what [`verify_uniqueness`] decides.
    pub fn new(base: ProbMorphism<S>, fibers: Vec<Vec<S>>) -> Result<Self> {
        let (nx, ny) = (base.source().atom_count(), base.target().atom_count());
        if fibers.len() != ny {
            return Err(Error::MalformedKernel {
                reason: format!("{} fibers for {} atoms of the base", fibers.len(), ny),
            });
        }
        if let Some((y, _)) = fibers.iter().enumerate().find(|(_, f)| f.len() != nx) {
            return Err(Error::MalformedKernel {
                reason: format!("fiber over `{}` does not have {} entries", base.target().atoms()[y], nx),
            });
        }
        Ok(Kernel { base, fibers })
    }

    /// Reads `{y: {a: mass}}`; missing entries are zero.
    pub fn from_named(base: ProbMorphism<S>, named: &BTreeMap<String, BTreeMap<String, S>>) -> Result<Self> {
        let (x, y) = (base.source(), base.target());
        let mut fibers = vec![vec![S::zero(); x.atom_count()]; y.atom_count()];
        for (b, fiber) in named {
            let b = y.algebra().require_index(b)?;
            for (a, m) in fiber {
                fibers[b][x.algebra().require_index(a)?] = m.clone();
            }
        }
        Kernel::new(base, fibers)
    }

    pub fn base(&self) -> &ProbMorphism<S> {
        &self.base
    }

    pub fn fibers(&self) -> &[Vec<S>] {
        &self.fibers
    }

    pub fn fiber(&self, y: usize) -> &[S] {
        &self.fibers[y]
    }

    /// `{y: {a: μ_y(a)}}`, zeros included.
    pub fn named(&self) -> BTreeMap<String, BTreeMap<String, S>> {
        let (x, y) = (self.base.source(), self.base.target());
        y.atoms()
            .iter()
            .zip(&self.fibers)
            .map(|(b, fiber)| (b.clone(), x.atoms().iter().cloned().zip(fiber.iter().cloned()).collect()))
            .collect()
    }

    /// `μ_y` is carried by the fiber `π⁻¹(y)`.
    pub fn is_supported(&self) -> bool {
        self.fibers.iter().enumerate().all(|(y, fiber)| {
            fiber
                .iter()
                .zip(self.base.map())
                .all(|(m, &b)| b == y || scalar::is_zero(m))
        })
    }

    /// Every `μ_y` is a probability measure.
    pub fn is_normalized(&self) -> bool {
        self.fibers
            .iter()
            .all(|f| f.iter().all(|m| !m.is_negative()) && scalar::is_unit_total(f))
    }

    /// `Σ_y μ_Y(y) μ_y = μ_X`.
    pub fn is_mixture(&self) -> bool {
        let x = self.base.source();
        let weights = self.base.target().measure();
        (0..x.atom_count()).all(|a| {
            let mixed = self
                .fibers
                .iter()
                .zip(weights)
                .fold(S::zero(), |acc, (f, w)| acc + f[a].clone() * w.clone());
            mixed.same(&x.measure()[a])
        })
    }

    /// Pairs `(a, y)` where the disintegration identity fails for
    /// `f = 1_a, g = 1_y`. Both sides are computed as traces in the function
    /// algebras, independently of the closed form used by [`disintegrate`].
    pub fn identity_violations(&self) -> Vec<(usize, usize)> {
        let (x, y) = (self.base.source(), self.base.target());
        let lx = funcalg::linfty(x);
        let ly = funcalg::linfty(y);
        let pull = funcalg::koopman(&self.base);
        let mut out = Vec::new();
        for a in 0..x.atom_count() {
            let f = lx.basis(a);
            // y ↦ ∫ f dμ_y
            let inner = Func::real(
                self.fibers
                    .iter()
                    .map(|fiber| {
                        fiber
                            .iter()
                            .zip(&f.0)
                            .fold(S::zero(), |acc, (m, v)| acc + m.clone() * v.re.clone())
                    })
                    .collect(),
            );
            for b in 0..y.atom_count() {
                let g = ly.basis(b);
                let lhs = lx.trace(&f.mul(&pull.apply(&g)));
                let rhs = ly.trace(&inner.mul(&g));
                if !scalar::complex_same(&lhs, &rhs) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn satisfies_identity(&self) -> bool {
        self.identity_violations().is_empty()
    }
}

/// The disintegration of `π` over its target.
pub fn disintegrate<S: Scalar>(pi: &ProbMorphism<S>) -> Kernel<S> {
    let (x, y) = (pi.source(), pi.target());
    let mut fibers = vec![vec![S::zero(); x.atom_count()]; y.atom_count()];
    for (a, &b) in pi.map().iter().enumerate() {
        fibers[b][a] = x.measure()[a].clone() / y.measure()[b].clone();
    }
    Kernel {
        base: pi.clone(),
        fibers,
    }
}

/// Whether `candidate` is the disintegration of `pi`. The identity pins the
/// kernel down on every atom, so a candidate passes exactly when it equals
/// [`disintegrate`]'s output.
pub fn verify_uniqueness<S: Scalar>(pi: &ProbMorphism<S>, candidate: &Kernel<S>) -> bool {
    if candidate.base != *pi {
        return false;
    }
    let holds = candidate.satisfies_identity();
    debug_assert_eq!(
        holds,
        candidate
            .fibers
            .iter()
            .flatten()
            .zip(disintegrate(pi).fibers.iter().flatten())
            .all(|(a, b)| a.same(b))
    );
    holds
}

/// `X₁ ×_Y X₂` with its two projections.
#[derive(Clone, Debug, PartialEq)]
pub struct RelProduct<S = Rational> {
    pub algebra: ProbAlgebra<S>,
    /// `Π₁: X₁ ×_Y X₂ → X₁`.
    pub left: ProbMorphism<S>,
    /// `Π₂: X₁ ×_Y X₂ → X₂`.
    pub right: ProbMorphism<S>,
}

/// Relative independent product. Raw atoms are the pairs `a₁&a₂`; the
/// measure is `∫_Y μ_{1,y}(a₁) μ_{2,y}(a₂) dμ_Y(y)` and null pairs (those
/// over different points of `Y`) are then deleted.
pub fn rel_product<S: Scalar>(pi1: &ProbMorphism<S>, pi2: &ProbMorphism<S>) -> Result<RelProduct<S>> {
    if pi1.target() != pi2.target() {
        return Err(Error::TargetMismatch);
    }
    let (x1, x2, y) = (pi1.source(), pi2.source(), pi1.target());
    let (k1, k2) = (disintegrate(pi1), disintegrate(pi2));
    let mut raw: Vec<(String, (usize, usize), S)> = Vec::new();
    for a1 in 0..x1.atom_count() {
        for a2 in 0..x2.atom_count() {
            let mass = (0..y.atom_count()).fold(S::zero(), |acc, b| {
                acc + k1.fibers[b][a1].clone() * k2.fibers[b][a2].clone() * y.measure()[b].clone()
            });
            raw.push((ident::pair_name(&x1.atoms()[a1], &x2.atoms()[a2]), (a1, a2), mass));
        }
    }
    raw.sort_by(|l, r| l.0.cmp(&r.0));
    let algebra = FinBool::new(raw.iter().map(|r| r.0.clone()))?;
    let measured = MeasuredBool::new(algebra, raw.iter().map(|r| r.2.clone()).collect())?;
    let reduced = proba::mes(&measured);
    let pairs: Vec<(usize, usize)> = reduced.inclusion.map().iter().map(|&i| raw[i].1).collect();
    let left = ProbMorphism::new(reduced.algebra.clone(), x1.clone(), pairs.iter().map(|p| p.0).collect())?;
    let right = ProbMorphism::new(reduced.algebra.clone(), x2.clone(), pairs.iter().map(|p| p.1).collect())?;
    Ok(RelProduct {
        algebra: reduced.algebra,
        left,
        right,
    })
}

impl<S: Scalar> RelProduct<S> {
    /// `π₁ ∘ Π₁ = π₂ ∘ Π₂`.
    pub fn commutes(&self, pi1: &ProbMorphism<S>, pi2: &ProbMorphism<S>) -> bool {
        match (
            ProbMorphism::compose(pi1, &self.left),
            ProbMorphism::compose(pi2, &self.right),
        ) {
            (Ok(l), Ok(r)) => l == r,
            _ => false,
        }
    }

    /// Atom pairs `(a₁, a₂)` violating
    /// `∫ (1_{a₁}∘Π₁)(1_{a₂}∘Π₂) = ∫_Y E(1_{a₁}|Y) E(1_{a₂}|Y)`.
    pub fn f1f2_violations(&self, pi1: &ProbMorphism<S>, pi2: &ProbMorphism<S>) -> Vec<(usize, usize)> {
        let lr = funcalg::linfty(&self.algebra);
        let ly = funcalg::linfty(pi1.target());
        let (l1, l2) = (funcalg::linfty(pi1.source()), funcalg::linfty(pi2.source()));
        let (p1, p2) = (funcalg::koopman(&self.left), funcalg::koopman(&self.right));
        let mut out = Vec::new();
        for a1 in 0..l1.dim() {
            let f1 = l1.basis(a1);
            let e1 = funcalg::cond_exp(pi1, &f1);
            for a2 in 0..l2.dim() {
                let f2 = l2.basis(a2);
                let lhs = lr.trace(&p1.apply(&f1).mul(&p2.apply(&f2)));
                let rhs = ly.trace(&e1.mul(&funcalg::cond_exp(pi2, &f2)));
                if !scalar::complex_same(&lhs, &rhs) {
                    out.push((a1, a2));
                }
            }
        }
        out
    }

    /// The σ-algebra is generated by `Π₁*(Σ_{X₁}) ∪ Π₂*(Σ_{X₂})`: refining by
    /// all pulled-back atoms separates every atom.
    pub fn is_generated_by_factors(&self) -> bool {
        let n = self.algebra.atom_count();
        let pullbacks = |m: &ProbMorphism<S>| -> Vec<Element> {
            (0..m.target().atom_count())
                .map(|b| m.sigma_hom().apply(&m.target().algebra().atom(b)))
                .collect()
        };
        let mut generators = pullbacks(&self.left);
        generators.extend(pullbacks(&self.right));
        let blocks = boolalg::refine(n, &generators);
        let mut seen = vec![false; n];
        blocks.iter().all(|&b| !std::mem::replace(&mut seen[b], true))
    }
}

/// Ergodic decomposition of a finite action.
#[derive(Clone, Debug, PartialEq)]
pub struct ErgodicDecomposition<S = Rational> {
    pub invariant: InvariantFactor<S>,
    /// Disintegration of `X → Inv(X)`: one ergodic measure per orbit.
    pub components: Kernel<S>,
}

/// Decomposes `X` over its invariant factor.
pub fn ergodic_components<S: Scalar>(
    x: &ProbAlgebra<S>,
    generators: &[ProbMorphism<S>],
) -> Result<ErgodicDecomposition<S>> {
    let invariant = proba::invariant_factor(x, generators)?;
    let components = disintegrate(&invariant.factor);
    Ok(ErgodicDecomposition { invariant, components })
}

/// `μ` (on the atoms of `x`) is invariant under every generator.
pub fn is_invariant_measure<S: Scalar>(generators: &[ProbMorphism<S>], measure: &[S]) -> bool {
    generators.iter().all(|g| {
        let pushed = proba::pushforward(measure, g.map(), measure.len());
        pushed.iter().zip(measure).all(|(a, b)| a.same(b))
    })
}

/// Invariant, and every invariant set has measure 0 or 1 — equivalently at
/// most one orbit carries mass.
pub fn is_ergodic<S: Scalar>(x: &ProbAlgebra<S>, generators: &[ProbMorphism<S>], measure: &[S]) -> Result<bool> {
    let orbits = proba::orbits(x, generators)?;
    let charged = orbits
        .iter()
        .filter(|o| o.iter().any(|&a| !scalar::is_zero(&measure[a])))
        .count();
    Ok(charged <= 1 && is_invariant_measure(generators, measure))
}

/// The definition by brute force over all invariant elements.
pub fn is_ergodic_by_enumeration<S: Scalar>(
    x: &ProbAlgebra<S>,
    generators: &[ProbMorphism<S>],
    measure: &[S],
) -> bool {
    is_invariant_measure(generators, measure)
        && proba::invariant_elements(x, generators).iter().all(|e| {
            let m = e.atoms().fold(S::zero(), |acc, a| acc + measure[a].clone());
            scalar::is_zero(&m) || scalar::is_one(&m)
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn prob(pairs: &[(&str, Rational)]) -> ProbAlgebra {
        ProbAlgebra::from_pairs(pairs.iter().cloned()).unwrap()
    }

    fn three_to_two() -> ProbMorphism {
        // X = {a: 1/4, b: 1/4, c: 1/2}, Y = {u: 1/2, v: 1/2}, a,b ↦ u, c ↦ v
        let x = prob(&[("a", q(1, 4)), ("b", q(1, 4)), ("c", q(1, 2))]);
        let y = prob(&[("u", q(1, 2)), ("v", q(1, 2))]);
        ProbMorphism::new(x, y, vec![0, 0, 1]).unwrap()
    }

    #[test]
    fn disintegration_example() {
        let pi = three_to_two();
        let k = disintegrate(&pi);
        assert_eq!(k.fiber(0), [q(1, 2), q(1, 2), q(0, 1)]);
        assert_eq!(k.fiber(1), [q(0, 1), q(0, 1), q(1, 1)]);
        assert!(k.is_supported() && k.is_normalized() && k.is_mixture());
        assert!(k.satisfies_identity());
        assert!(verify_uniqueness(&pi, &k));
        assert_eq!(k.named()["u"]["c"], q(0, 1));
    }

    #[test]
    fn perturbed_kernels_are_rejected() {
        let pi = three_to_two();
        let mut fibers = disintegrate(&pi).fibers().to_vec();
        fibers[0][0] = q(1, 3);
        fibers[0][1] = q(2, 3);
        let bad = Kernel::new(pi.clone(), fibers).unwrap();
        assert!(bad.is_normalized() && bad.is_supported());
        assert!(!bad.is_mixture());
        assert!(!verify_uniqueness(&pi, &bad));
        assert_eq!(bad.identity_violations(), vec![(0, 0), (1, 0)]);
        assert_eq!(
            Kernel::new(pi, vec![vec![q(1, 1)]]).unwrap_err().name(),
            "MalformedKernel"
        );
    }

    #[test]
    fn identity_map_has_point_masses() {
        let x = prob(&[("a", q(1, 3)), ("b", q(2, 3))]);
        let k = disintegrate(&ProbMorphism::identity(&x));
        assert_eq!(k.fibers(), [vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]]);
    }

    #[test]
    fn relative_product_over_a_point_is_the_tensor() {
        let x1 = prob(&[("a", q(1, 3)), ("b", q(2, 3))]);
        let x2 = prob(&[("c", q(1, 4)), ("d", q(3, 4))]);
        let pt = ProbAlgebra::point();
        let p1 = ProbMorphism::new(x1.clone(), pt.clone(), vec![0, 0]).unwrap();
        let p2 = ProbMorphism::new(x2.clone(), pt, vec![0, 0]).unwrap();
        let r = rel_product(&p1, &p2).unwrap();
        let t = proba::tensor(&[x1, x2]);
        assert_eq!(r.algebra.measure(), t.algebra.measure());
        assert_eq!(r.algebra.atoms(), ["a&c", "a&d", "b&c", "b&d"]);
        assert_eq!(r.left.map(), t.marginals[0].map());
        assert!(r.commutes(&p1, &p2));
        assert!(r.f1f2_violations(&p1, &p2).is_empty());
        assert!(r.is_generated_by_factors());
    }

    #[test]
    fn relative_product_over_itself_is_the_diagonal() {
        let pi = three_to_two();
        let y = pi.target().clone();
        let id = ProbMorphism::identity(&y);
        let r = rel_product(&id, &id).unwrap();
        assert_eq!(r.algebra.atoms(), ["u&u", "v&v"]);
        assert!(r.left.is_bijective());

        let r = rel_product(&pi, &pi).unwrap();
        assert_eq!(r.algebra.atoms(), ["a&a", "a&b", "b&a", "b&b", "c&c"]);
        assert_eq!(r.algebra.measure()[0], q(1, 8));
        assert_eq!(r.algebra.measure()[4], q(1, 2));
        assert!(r.commutes(&pi, &pi));
        assert!(r.f1f2_violations(&pi, &pi).is_empty());
        assert!(r.is_generated_by_factors());
    }

    #[test]
    fn mismatched_targets() {
        let pi = three_to_two();
        let x = pi.source().clone();
        let id = ProbMorphism::identity(&x);
        assert_eq!(rel_product(&pi, &id).unwrap_err(), Error::TargetMismatch);
    }

    #[test]
    fn ergodic_decomposition_of_a_swap() {
        let x = prob(&[("a", q(1, 4)), ("b", q(1, 4)), ("c", q(1, 4)), ("d", q(1, 4))]);
        let g = ProbMorphism::new(x.clone(), x.clone(), vec![1, 0, 3, 2]).unwrap();
        let d = ergodic_components(&x, std::slice::from_ref(&g)).unwrap();
        assert_eq!(d.invariant.algebra.atoms(), ["a+b", "c+d"]);
        for fiber in d.components.fibers() {
            assert!(is_ergodic(&x, std::slice::from_ref(&g), fiber).unwrap());
            assert!(is_ergodic_by_enumeration(&x, std::slice::from_ref(&g), fiber));
        }
        assert!(!is_ergodic(&x, std::slice::from_ref(&g), x.measure()).unwrap());
        assert!(!is_ergodic_by_enumeration(&x, &[g], x.measure()));
    }
}
