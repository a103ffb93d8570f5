//! Concrete models of probability algebras and the canonical (Stone) model.
//!
//! A concrete model of `X` is a finite space with the full powerset σ-algebra
//! and a probability measure, together with an inclusion identifying the
//! positive-mass points with the atoms of `X`. Continuous means arbitrary on a
//! finite discrete space, so the strong Lusin property reduces to "no point
//! carries zero mass".

use crate::boolalg::{BoolHom, FinBool};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::proba::{self, MeasuredBool, ProbAlgebra, ProbMorphism};
use crate::scalar::{self, Rational, Scalar};
use crate::stoned::{self, PointMap, StoneSpace};

/// Hard cap on extra null points when enumerating `Model(X)`.
pub const MAX_NULL_POINTS: usize = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct ConcreteModel<S = Rational> {
    modeled: ProbAlgebra<S>,
    space: StoneSpace,
    measure: Vec<S>,
    /// Atom of `modeled` → the point representing it.
    inclusion: Vec<usize>,
}

impl<S: Scalar> ConcreteModel<S> {
    /// Checks that `inclusion` is a measure-preserving bijection between the
    /// atoms of `modeled` and the positive-mass points.
    pub fn new(modeled: ProbAlgebra<S>, space: StoneSpace, measure: Vec<S>, inclusion: Vec<usize>) -> Result<Self> {
        let fail = |reason: String| Err(Error::NotAModel { reason });
        if measure.len() != space.len() {
            return fail(format!("{} masses for {} points", measure.len(), space.len()));
        }
        if inclusion.len() != modeled.atom_count() {
            return fail("inclusion must be defined on every atom".into());
        }
        if let Err(e) = MeasuredBool::new(stoned::clopen(&space), measure.clone()) {
            return fail(e.to_string());
        }
        let mut hit = vec![false; space.len()];
        for (a, &p) in inclusion.iter().enumerate() {
            if p >= space.len() || std::mem::replace(&mut hit[p], true) {
                return fail(format!("inclusion is not injective at `{}`", modeled.atoms()[a]));
            }
            if !measure[p].same(&modeled.measure()[a]) {
                return fail(format!("point `{}` does not carry the mass of `{}`", space.points()[p], modeled.atoms()[a]));
            }
        }
        if let Some(p) = (0..space.len()).find(|&p| !hit[p] && !scalar::is_zero(&measure[p])) {
            return fail(format!("point `{}` has mass but represents no atom", space.points()[p]));
        }
        Ok(ConcreteModel {
            modeled,
            space,
            measure,
            inclusion,
        })
    }

    pub fn modeled(&self) -> &ProbAlgebra<S> {
        &self.modeled
    }

    pub fn space(&self) -> &StoneSpace {
        &self.space
    }

    pub fn measure(&self) -> &[S] {
        &self.measure
    }

    pub fn inclusion(&self) -> &[usize] {
        &self.inclusion
    }

    pub fn null_points(&self) -> Vec<usize> {
        (0..self.space.len())
            .filter(|&p| scalar::is_zero(&self.measure[p]))
            .collect()
    }

    /// The measured powerset of the model.
    pub fn measured(&self) -> MeasuredBool<S> {
        MeasuredBool::new(stoned::clopen(&self.space), self.measure.clone()).expect("validated")
    }

    /// `Cast(W)`: the probability algebra of the model.
    pub fn cast(&self) -> ProbAlgebra<S> {
        proba::mes(&self.measured()).algebra
    }

    /// The isomorphism `Cast(W) → X` certified by the inclusion.
    pub fn natural_iso(&self) -> ProbMorphism<S> {
        let cast = proba::mes(&self.measured());
        let map = cast
            .inclusion
            .map()
            .iter()
            .map(|&p| self.inclusion.iter().position(|&q| q == p).expect("positive points are included"))
            .collect();
        ProbMorphism::new(cast.algebra, self.modeled.clone(), map).expect("inclusion preserves mass")
    }

    /// The same model with `count` extra null points `~0, ~1, …`.
    pub fn with_null_points(&self, count: usize) -> Result<Self> {
        let mut names: Vec<String> = self.space.points().to_vec();
        names.extend((0..count).map(|i| format!("~{i}")));
        let space = StoneSpace::new(names)?;
        let mut measure = vec![S::zero(); space.len()];
        let relabel: Vec<usize> = self
            .space
            .points()
            .iter()
            .map(|p| space.index_of(p).expect("kept"))
            .collect();
        for (p, m) in self.measure.iter().enumerate() {
            measure[relabel[p]] = m.clone();
        }
        let inclusion = self.inclusion.iter().map(|&p| relabel[p]).collect();
        ConcreteModel::new(self.modeled.clone(), space, measure, inclusion)
    }
}

/// `Stone(X)`: the spectrum of `L∞(X)`, whose points are the minimal
/// projections, i.e. the atoms.
pub fn stone_model<S: Scalar>(x: &ProbAlgebra<S>) -> ConcreteModel<S> {
    ConcreteModel {
        modeled: x.clone(),
        space: stoned::stone(x.algebra()),
        measure: x.measure().to_vec(),
        inclusion: (0..x.atom_count()).collect(),
    }
}

/// `Stone(T): Stone(X) → Stone(Y)`.
pub fn model_morphism<S: Scalar>(t: &ProbMorphism<S>) -> PointMap {
    PointMap::new(
        stoned::stone(t.source().algebra()),
        stoned::stone(t.target().algebra()),
        t.map().to_vec(),
    )
    .expect("atom maps are total")
}

/// Every continuous function's a.e.-class has exactly one continuous
/// representative iff no point is null.
pub fn strong_lusin<S: Scalar>(w: &ConcreteModel<S>) -> bool {
    w.null_points().is_empty()
}

/// The literal definition, by brute force over `{0,1}`-valued functions:
/// any two distinct continuous functions must differ on a positive-mass
/// point.
pub fn strong_lusin_by_definition<S: Scalar>(w: &ConcreteModel<S>) -> bool {
    let n = w.space.len();
    let functions: Vec<Vec<usize>> = enumerate::functions(n, 2).collect();
    functions.iter().all(|f| {
        functions.iter().all(|g| {
            f == g || (0..n).any(|p| f[p] != g[p] && !scalar::is_zero(&w.measure[p]))
        })
    })
}

/// Morphisms of models `W → W'` of the same `X`: measure-preserving point
/// maps `T` with `T ∘ ι_W = ι_W'`. Enumerated exhaustively.
pub fn model_morphisms<S: Scalar>(from: &ConcreteModel<S>, to: &ConcreteModel<S>) -> Vec<PointMap> {
    if from.modeled != to.modeled {
        return Vec::new();
    }
    enumerate::functions(from.space.len(), to.space.len())
        .filter(|map| {
            from.inclusion.iter().zip(&to.inclusion).all(|(&p, &q)| map[p] == q)
                && proba::pushforward(&from.measure, map, to.space.len())
                    .iter()
                    .zip(&to.measure)
                    .all(|(a, b)| a.same(b))
        })
        .map(|map| PointMap::new(from.space.clone(), to.space.clone(), map).expect("total"))
        .collect()
}

/// The models of `X` with `0..=max_null` extra null points adjoined to `Stone(X)`.
pub fn enumerate_models<S: Scalar>(x: &ProbAlgebra<S>, max_null: usize) -> Vec<ConcreteModel<S>> {
    let base = stone_model(x);
    (0..=max_null)
        .map(|k| base.with_null_points(k).expect("fresh names"))
        .collect()
}

/// The unique model morphism `Stone(X) → W`: each atom goes to the point
/// representing it.
pub fn initial_factorization<S: Scalar>(x: &ProbAlgebra<S>, w: &ConcreteModel<S>) -> Result<PointMap> {
    if w.modeled != *x {
        return Err(Error::NotAModel {
            reason: "the model certifies a different probability algebra".into(),
        });
    }
    PointMap::new(stoned::stone(x.algebra()), w.space.clone(), w.inclusion.clone())
}

/// `W` is initial among `models` when it has exactly one morphism into each.
pub fn is_initial_among<S: Scalar>(w: &ConcreteModel<S>, models: &[ConcreteModel<S>]) -> bool {
    models.iter().all(|m| model_morphisms(w, m).len() == 1)
}

/// Represents a σ-homomorphism `powerset(K) → Σ_X` (an abstract measurable
/// map `X → K`) by the continuous map `Stone(X) → K`.
pub fn represent<S: Scalar>(x: &ProbAlgebra<S>, k: &StoneSpace, hom: &BoolHom) -> Result<PointMap> {
    if hom.source() != &stoned::clopen(k) || hom.target() != x.algebra() {
        return Err(Error::NotAHomomorphism {
            reason: "expected a homomorphism from the powerset of K into the algebra of X".into(),
        });
    }
    PointMap::new(stoned::stone(x.algebra()), k.clone(), hom.dual().to_vec())
}

/// The σ-homomorphism `powerset(K) → Σ_X` given by the preimages of the
/// points of `K`.
pub fn abstract_map(x: &FinBool, k: &StoneSpace, images: &[crate::boolalg::Element]) -> Result<BoolHom> {
    BoolHom::from_atom_images(stoned::clopen(k), x.clone(), images)
}

/// Action of automorphisms on `Stone(X)` by measure-preserving bijections.
pub fn model_action<S: Scalar>(x: &ProbAlgebra<S>, generators: &[ProbMorphism<S>]) -> Result<Vec<PointMap>> {
    generators
        .iter()
        .enumerate()
        .map(|(i, g)| {
            if g.source() != x || g.target() != x || !g.is_bijective() {
                Err(Error::NotAnAutomorphism { index: i })
            } else {
                Ok(model_morphism(g))
            }
        })
        .collect()
}

/// `Stone(T)` read back as a morphism `Cast(Stone(X)) → Cast(Stone(Y))`.
pub fn cast_morphism<S: Scalar>(t: &ProbMorphism<S>) -> ProbMorphism<S> {
    let from = stone_model(t.source());
    let to = stone_model(t.target());
    let src = proba::mes(&from.measured());
    let tgt = proba::mes(&to.measured());
    let point_map = model_morphism(t);
    let map = src
        .inclusion
        .map()
        .iter()
        .map(|&p| {
            let image = point_map.map()[p];
            tgt.inclusion.map().iter().position(|&q| q == image).expect("positive point")
        })
        .collect();
    ProbMorphism::new(src.algebra, tgt.algebra, map).expect("measure preserving")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolalg::Element;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn prob(pairs: &[(&str, Rational)]) -> ProbAlgebra {
        ProbAlgebra::from_pairs(pairs.iter().cloned()).unwrap()
    }

    fn uniform(n: usize) -> ProbAlgebra {
        ProbAlgebra::uniform(FinBool::new((0..n).map(|i| format!("a{i}"))).unwrap()).unwrap()
    }

    #[test]
    fn stone_model_basics() {
        let x = prob(&[("a", q(1, 4)), ("b", q(3, 4))]);
        let w = stone_model(&x);
        assert_eq!(w.space().points(), ["a", "b"]);
        assert_eq!(w.measure(), x.measure());
        assert_eq!(w.cast(), x);
        assert!(strong_lusin(&w));
        assert!(strong_lusin_by_definition(&w));
        assert_eq!(w.natural_iso(), ProbMorphism::identity(&x));
    }

    #[test]
    fn null_points_break_lusin() {
        let x = uniform(2);
        let w = stone_model(&x).with_null_points(1).unwrap();
        assert!(!strong_lusin(&w));
        assert!(!strong_lusin_by_definition(&w));
        assert_eq!(w.cast(), x);
    }

    #[test]
    fn model_validation() {
        let x = uniform(2);
        let space = StoneSpace::new(["p", "q", "r"]).unwrap();
        let ok = ConcreteModel::new(x.clone(), space.clone(), vec![q(1, 2), q(0, 1), q(1, 2)], vec![0, 2]);
        assert!(ok.is_ok());
        let bad = ConcreteModel::new(x.clone(), space.clone(), vec![q(1, 2), q(1, 4), q(1, 4)], vec![0, 1]);
        assert_eq!(bad.unwrap_err().name(), "NotAModel");
        let bad = ConcreteModel::new(x, space, vec![q(1, 2), q(0, 1), q(1, 2)], vec![0, 0]);
        assert_eq!(bad.unwrap_err().name(), "NotAModel");
    }

    #[test]
    fn initial_factorization_examples() {
        let x = uniform(2);
        let w = stone_model(&x);
        assert_eq!(initial_factorization(&x, &w).unwrap(), PointMap::identity(w.space()));

        let bigger = w.with_null_points(1).unwrap();
        let t = initial_factorization(&x, &bigger).unwrap();
        assert!(!t.map().contains(&bigger.null_points()[0]));
        let all = model_morphisms(&w, &bigger);
        assert_eq!(all, vec![t]);

        let other = uniform(3);
        assert_eq!(initial_factorization(&other, &w).unwrap_err().name(), "NotAModel");
    }

    #[test]
    fn lusin_iff_initial() {
        for n in 1..=3 {
            let x = uniform(n);
            let models = enumerate_models(&x, MAX_NULL_POINTS);
            for w in &models {
                assert_eq!(strong_lusin(w), is_initial_among(w, &models), "{n} atoms, {:?}", w.space());
            }
        }
    }

    #[test]
    fn morphisms_are_surjective_and_functorial() {
        let x = uniform(4);
        let y = prob(&[("u", q(1, 2)), ("v", q(1, 2))]);
        let z = ProbAlgebra::point();
        let t = ProbMorphism::new(x.clone(), y.clone(), vec![0, 1, 0, 1]).unwrap();
        let s = ProbMorphism::new(y.clone(), z, vec![0, 0]).unwrap();
        assert!(model_morphism(&t).is_surjective());
        assert_eq!(model_morphism(&ProbMorphism::identity(&x)), PointMap::identity(&stoned::stone(x.algebra())));
        let st = ProbMorphism::compose(&s, &t).unwrap();
        assert_eq!(
            model_morphism(&st),
            PointMap::compose(&model_morphism(&s), &model_morphism(&t)).unwrap()
        );
        // naturality of Cast(Stone) ≅ id
        let lhs = ProbMorphism::compose(&stone_model(&y).natural_iso(), &cast_morphism(&t)).unwrap();
        let rhs = ProbMorphism::compose(&t, &stone_model(&x).natural_iso()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn representation_is_a_bijection() {
        for n in 1..=3 {
            let x = uniform(n);
            for m in 1..=3 {
                let k = StoneSpace::new((0..m).map(|i| format!("k{i}"))).unwrap();
                let elements: Vec<Element> = x.algebra().elements().collect();
                let mut valid = 0;
                let mut seen = Vec::new();
                for choice in enumerate::functions(m, elements.len()) {
                    let images: Vec<Element> = choice.iter().map(|&i| elements[i].clone()).collect();
                    if let Ok(hom) = abstract_map(x.algebra(), &k, &images) {
                        valid += 1;
                        let rep = represent(&x, &k, &hom).unwrap();
                        assert!(!seen.contains(&rep));
                        seen.push(rep);
                    }
                }
                assert_eq!(valid, m.pow(n as u32));
                assert_eq!(valid, PointMap::enumerate(&stoned::stone(x.algebra()), &k).len());
            }
        }
    }

    #[test]
    fn represent_simple_cases() {
        let x = uniform(3);
        let k = StoneSpace::new(["only"]).unwrap();
        let constant = abstract_map(x.algebra(), &k, &[x.algebra().one()]).unwrap();
        assert_eq!(represent(&x, &k, &constant).unwrap().map(), [0, 0, 0]);

        let own = stoned::stone(x.algebra());
        let id = BoolHom::identity(x.algebra());
        assert_eq!(represent(&x, &own, &id).unwrap(), PointMap::identity(&own));
    }

    #[test]
    fn actions() {
        let x = uniform(2);
        let swap = ProbMorphism::new(x.clone(), x.clone(), vec![1, 0]).unwrap();
        let action = model_action(&x, std::slice::from_ref(&swap)).unwrap();
        assert_eq!(action[0].map(), [1, 0]);
        let iso = stone_model(&x).natural_iso();
        let lhs = ProbMorphism::compose(&iso, &cast_morphism(&swap)).unwrap();
        let rhs = ProbMorphism::compose(&swap, &iso).unwrap();
        assert_eq!(lhs, rhs);
        let id = model_action(&x, &[ProbMorphism::identity(&x)]).unwrap();
        assert_eq!(id[0], PointMap::identity(&stoned::stone(x.algebra())));
        let y = ProbAlgebra::point();
        let collapse = ProbMorphism::new(x.clone(), y, vec![0, 0]).unwrap();
        assert_eq!(model_action(&x, &[collapse]).unwrap_err().name(), "NotAnAutomorphism");
    }
}
