//! The workbench's categories, functors and monoidal structures as finite
//! instances for the checkers.

use std::sync::Arc;

use crate::boolalg::{self, BoolHom, Element, FinBool};
use crate::canmodel;
use crate::funcalg::{self, FuncAlg, FuncHom};
use crate::proba::{self, MeasuredBool, MeasuredMorphism, ProbAlgebra, ProbMorphism};
use crate::scalar::Scalar;
use crate::stoned::{self, DeleteMap, DeleteSpace, PointMap, StoneSpace};

use super::{FiniteCategoryInstance, Functor, Marginalization, MonoidalStructure, Variance};

const LETTERS: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

fn letters(n: usize) -> Vec<&'static str> {
    assert!(n <= LETTERS.len(), "object menus stop at {} atoms", LETTERS.len());
    LETTERS[..n].to_vec()
}

fn set_label(names: &[String]) -> String {
    format!("{{{}}}", names.join(","))
}

fn weighted<S: Scalar>(names: &[&str], weights: &[i64]) -> Vec<S> {
    let total: i64 = weights.iter().sum();
    assert_eq!(names.len(), weights.len());
    weights.iter().map(|&w| S::from_ratio(w, total)).collect()
}

// ---------------------------------------------------------------- objects

/// One algebra per size `0..=max` (size 0 is the degenerate algebra).
pub fn bool_objects(max_atoms: usize) -> Vec<FinBool> {
    (0..=max_atoms)
        .map(|n| FinBool::new(letters(n)).expect("letters are valid atoms"))
        .collect()
}

pub fn stone_spaces(max_points: usize) -> Vec<StoneSpace> {
    bool_objects(max_points).iter().map(stoned::stone).collect()
}

/// Every null set on every space with at most `max_points` points.
pub fn delete_objects(max_points: usize) -> Vec<DeleteSpace> {
    stone_spaces(max_points)
        .into_iter()
        .flat_map(|s| {
            crate::enumerate::subsets(s.len())
                .map(|mask| DeleteSpace::new(s.clone(), Element::from_mask(&mask)))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Uniform, increasing and "one heavy atom" measures on `1..=max` atoms.
pub fn prob_objects<S: Scalar>(max_atoms: usize) -> Vec<ProbAlgebra<S>> {
    let mut out = Vec::new();
    for n in 1..=max_atoms {
        let names = letters(n);
        let algebra = FinBool::new(names.iter().copied()).expect("letters");
        let mut menus: Vec<Vec<i64>> = vec![vec![1; n]];
        if n >= 2 {
            menus.push((1..=n as i64).collect());
        }
        if n >= 3 {
            let mut heavy = vec![1; n];
            heavy[n - 1] = n as i64 - 1;
            menus.push(heavy);
        }
        for w in menus {
            out.push(ProbAlgebra::new(algebra.clone(), weighted(&names, &w)).expect("positive"));
        }
    }
    out
}

/// Probability algebras plus measures with null atoms.
pub fn measured_objects<S: Scalar>(max_atoms: usize) -> Vec<MeasuredBool<S>> {
    let mut out: Vec<MeasuredBool<S>> = prob_objects(max_atoms).iter().map(ProbAlgebra::inc).collect();
    for n in 2..=max_atoms {
        let names = letters(n);
        let algebra = FinBool::new(names.iter().copied()).expect("letters");
        let mut last_null = vec![1; n];
        last_null[n - 1] = 0;
        let mut first_null: Vec<i64> = (0..n as i64).collect();
        first_null[0] = 0;
        for w in [last_null, first_null] {
            let m = MeasuredBool::new(algebra.clone(), weighted(&names, &w)).expect("nonnegative");
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out
}

// ---------------------------------------------------------------- categories

pub fn bool_category(objects: Vec<FinBool>) -> FiniteCategoryInstance<FinBool, BoolHom> {
    FiniteCategoryInstance {
        name: "Bool".into(),
        objects,
        homs: Arc::new(BoolHom::enumerate),
        compose: Arc::new(|g, f| BoolHom::compose(g, f).ok()),
        identity: Arc::new(BoolHom::identity),
        label: Arc::new(|b: &FinBool| set_label(b.atoms())),
    }
}

pub fn finset_category(objects: Vec<StoneSpace>) -> FiniteCategoryInstance<StoneSpace, PointMap> {
    FiniteCategoryInstance {
        name: "Stone".into(),
        objects,
        homs: Arc::new(PointMap::enumerate),
        compose: Arc::new(|g, f| PointMap::compose(g, f).ok()),
        identity: Arc::new(PointMap::identity),
        label: Arc::new(|s: &StoneSpace| set_label(s.points())),
    }
}

fn compose_delete(g: &DeleteMap, f: &DeleteMap) -> Option<DeleteMap> {
    if f.target() != g.source() {
        return None;
    }
    let map = f.map().iter().map(|&p| g.map()[p]).collect();
    DeleteMap::new(f.source().clone(), g.target().clone(), map).ok()
}

pub fn delete_category(objects: Vec<DeleteSpace>) -> FiniteCategoryInstance<DeleteSpace, DeleteMap> {
    FiniteCategoryInstance {
        name: "Delete".into(),
        objects,
        homs: Arc::new(|a: &DeleteSpace, b: &DeleteSpace| {
            PointMap::enumerate(a.space(), b.space())
                .into_iter()
                .filter_map(|p| DeleteMap::new(a.clone(), b.clone(), p.map().to_vec()).ok())
                .collect()
        }),
        compose: Arc::new(compose_delete),
        identity: Arc::new(|d: &DeleteSpace| {
            DeleteMap::new(d.clone(), d.clone(), (0..d.space().len()).collect()).expect("identity")
        }),
        label: Arc::new(|d: &DeleteSpace| format!("{}∖{}", set_label(d.space().points()), set_label(&d.null_names()))),
    }
}

fn measure_label<S: Scalar>(names: &[String], measure: &[S]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(measure)
        .map(|(a, m)| format!("{a}:{}", m.to_text()))
        .collect();
    format!("{{{}}}", parts.join(","))
}

pub fn prob_category<S: Scalar>(objects: Vec<ProbAlgebra<S>>) -> FiniteCategoryInstance<ProbAlgebra<S>, ProbMorphism<S>> {
    FiniteCategoryInstance {
        name: "ProbAlg".into(),
        objects,
        homs: Arc::new(ProbMorphism::enumerate),
        compose: Arc::new(|g, f| ProbMorphism::compose(g, f).ok()),
        identity: Arc::new(ProbMorphism::identity),
        label: Arc::new(|x: &ProbAlgebra<S>| measure_label(x.atoms(), x.measure())),
    }
}

pub fn measured_category<S: Scalar>(
    objects: Vec<MeasuredBool<S>>,
) -> FiniteCategoryInstance<MeasuredBool<S>, MeasuredMorphism<S>> {
    FiniteCategoryInstance {
        name: "AbsProb".into(),
        objects,
        homs: Arc::new(MeasuredMorphism::enumerate),
        compose: Arc::new(|g, f| MeasuredMorphism::compose(g, f).ok()),
        identity: Arc::new(MeasuredMorphism::identity),
        label: Arc::new(|m: &MeasuredBool<S>| measure_label(m.algebra().atoms(), m.measure())),
    }
}

/// Commutative tracial algebras `L∞(X)`; `Hom(A → B)` consists of the
/// Koopman operators of `ProbAlg(B.base → A.base)`, which are all the
/// trace-preserving unital *-homomorphisms.
pub fn func_category<S: Scalar>(objects: Vec<FuncAlg<S>>) -> FiniteCategoryInstance<FuncAlg<S>, FuncHom<S>> {
    FiniteCategoryInstance {
        name: "Func".into(),
        objects,
        homs: Arc::new(|a: &FuncAlg<S>, b: &FuncAlg<S>| {
            ProbMorphism::enumerate(b.base(), a.base()).iter().map(funcalg::koopman).collect()
        }),
        compose: Arc::new(|g, f| FuncHom::compose(g, f).ok()),
        identity: Arc::new(FuncHom::identity),
        label: Arc::new(|a: &FuncAlg<S>| format!("L∞{}", measure_label(a.base().atoms(), a.base().measure()))),
    }
}

// ---------------------------------------------------------------- functors

pub fn identity_functor<O: Clone + 'static, M: Clone + 'static>(name: &str) -> Functor<O, M, O, M> {
    Functor::new(name, Variance::Covariant, O::clone, M::clone)
}

pub fn stone_functor() -> Functor<FinBool, BoolHom, StoneSpace, PointMap> {
    Functor::new("Stone", Variance::Contravariant, stoned::stone, stoned::stone_map)
}

pub fn clopen_functor() -> Functor<StoneSpace, PointMap, FinBool, BoolHom> {
    Functor::new("Clopen", Variance::Contravariant, stoned::clopen, stoned::clopen_map)
}

pub fn clopen_stone_functor() -> Functor<FinBool, BoolHom, FinBool, BoolHom> {
    Functor::new(
        "Clopen∘Stone",
        Variance::Covariant,
        |b| stoned::clopen(&stoned::stone(b)),
        |h| stoned::clopen_map(&stoned::stone_map(h)),
    )
}

pub fn stone_clopen_functor() -> Functor<StoneSpace, PointMap, StoneSpace, PointMap> {
    Functor::new(
        "Stone∘Clopen",
        Variance::Covariant,
        |s| stoned::stone(&stoned::clopen(s)),
        |f| stoned::stone_map(&stoned::clopen_map(f)),
    )
}

pub fn loomis_functor() -> Functor<FinBool, BoolHom, DeleteSpace, DeleteMap> {
    Functor::new("Λ", Variance::Contravariant, stoned::loomis, stoned::loomis_map)
}

pub fn delete_quotient_functor() -> Functor<DeleteSpace, DeleteMap, FinBool, BoolHom> {
    Functor::new(
        "⊖",
        Variance::Contravariant,
        |d| stoned::delete_quotient(d).algebra,
        stoned::delete_quotient_map,
    )
}

pub fn linfty_functor<S: Scalar>() -> Functor<ProbAlgebra<S>, ProbMorphism<S>, FuncAlg<S>, FuncHom<S>> {
    Functor::new("L∞", Variance::Contravariant, funcalg::linfty, funcalg::koopman)
}

pub fn idem_functor<S: Scalar>() -> Functor<FuncAlg<S>, FuncHom<S>, ProbAlgebra<S>, ProbMorphism<S>> {
    Functor::new("Idem", Variance::Contravariant, funcalg::idem, |k| {
        funcalg::idem_morphism(k).expect("enumerated morphisms are *-homomorphisms")
    })
}

pub fn mes_functor<S: Scalar>() -> Functor<MeasuredBool<S>, MeasuredMorphism<S>, ProbAlgebra<S>, ProbMorphism<S>> {
    Functor::new("Mes", Variance::Covariant, |m| proba::mes(m).algebra, proba::mes_morphism)
}

pub fn inc_mes_functor<S: Scalar>() -> Functor<MeasuredBool<S>, MeasuredMorphism<S>, MeasuredBool<S>, MeasuredMorphism<S>> {
    Functor::new(
        "Inc∘Mes",
        Variance::Covariant,
        |m| proba::mes(m).algebra.inc(),
        |t| proba::inc_morphism(&proba::mes_morphism(t)),
    )
}

pub fn linfty_mes_functor<S: Scalar>() -> Functor<MeasuredBool<S>, MeasuredMorphism<S>, FuncAlg<S>, FuncHom<S>> {
    Functor::new(
        "L∞∘Mes",
        Variance::Contravariant,
        |m| funcalg::linfty(&proba::mes(m).algebra),
        |t| funcalg::koopman(&proba::mes_morphism(t)),
    )
}

/// `X ↦ Stone(X)` on spaces.
pub fn stone_model_functor<S: Scalar>() -> Functor<ProbAlgebra<S>, ProbMorphism<S>, StoneSpace, PointMap> {
    Functor::new(
        "Stone(-)",
        Variance::Covariant,
        |x: &ProbAlgebra<S>| stoned::stone(x.algebra()),
        canmodel::model_morphism,
    )
}

/// `X ↦ Stone(X)_ProbAlg`.
pub fn cast_stone_functor<S: Scalar>() -> Functor<ProbAlgebra<S>, ProbMorphism<S>, ProbAlgebra<S>, ProbMorphism<S>> {
    Functor::new(
        "Stone(-)_ProbAlg",
        Variance::Covariant,
        |x| canmodel::stone_model(x).cast(),
        canmodel::cast_morphism,
    )
}

// ---------------------------------------------------------------- monoidal

fn position(coords: &[Vec<usize>], tuple: &[usize]) -> usize {
    coords.iter().position(|c| c == tuple).expect("tuple exists")
}

/// Point maps between tensor products, built from their coordinates.
fn prob_map<S: Scalar>(source: &proba::Tensor<S>, target: &proba::Tensor<S>, map: Vec<usize>) -> ProbMorphism<S> {
    ProbMorphism::new(source.algebra.clone(), target.algebra.clone(), map).expect("structure maps preserve measure")
}

fn t2<S: Scalar>(a: &ProbAlgebra<S>, b: &ProbAlgebra<S>) -> proba::Tensor<S> {
    proba::tensor(&[a.clone(), b.clone()])
}

/// `(ProbAlg, ⊗, point)` with its marginal projections.
pub fn prob_tensor_structure<S: Scalar>() -> MonoidalStructure<ProbAlgebra<S>, ProbMorphism<S>> {
    MonoidalStructure {
        name: "proba.tensor".into(),
        unit: ProbAlgebra::point(),
        tensor: Arc::new(|a, b| t2(a, b).algebra),
        tensor_morphisms: Arc::new(|f, g| proba::tensor_morphism(&[f.clone(), g.clone()])),
        associator: Arc::new(|a, b, c| {
            let (ab, bc) = (t2(a, b), t2(b, c));
            let (src, tgt) = (t2(&ab.algebra, c), t2(a, &bc.algebra));
            let map = src
                .coords
                .iter()
                .map(|s| {
                    let (x, y) = (ab.coords[s[0]][0], ab.coords[s[0]][1]);
                    position(&tgt.coords, &[x, position(&bc.coords, &[y, s[1]])])
                })
                .collect();
            prob_map(&src, &tgt, map)
        }),
        left_unitor: Arc::new(|a| {
            let src = t2(&ProbAlgebra::point(), a);
            let map = src.coords.iter().map(|c| c[1]).collect();
            ProbMorphism::new(src.algebra, a.clone(), map).expect("unitor")
        }),
        right_unitor: Arc::new(|a| {
            let src = t2(a, &ProbAlgebra::point());
            let map = src.coords.iter().map(|c| c[0]).collect();
            ProbMorphism::new(src.algebra, a.clone(), map).expect("unitor")
        }),
        braiding: Arc::new(|a, b| {
            let (src, tgt) = (t2(a, b), t2(b, a));
            let map = src.coords.iter().map(|c| position(&tgt.coords, &[c[1], c[0]])).collect();
            prob_map(&src, &tgt, map)
        }),
        marginalization: Marginalization::Projections,
        marginals: Arc::new(|a, b| {
            let t = t2(a, b);
            (t.marginals[0].clone(), t.marginals[1].clone())
        }),
    }
}

fn c2(a: &FinBool, b: &FinBool) -> boolalg::Coproduct {
    boolalg::coproduct(&[a.clone(), b.clone()])
}

fn dual_hom(source: &boolalg::Coproduct, target: &boolalg::Coproduct, dual: Vec<usize>) -> BoolHom {
    BoolHom::from_dual(source.algebra.clone(), target.algebra.clone(), dual).expect("structure maps are total")
}

/// `(Bool, ⊔, 2)` with its coproduct inclusions. Structure maps are given by
/// their Stone duals, which run backwards.
pub fn bool_coproduct_structure() -> MonoidalStructure<FinBool, BoolHom> {
    MonoidalStructure {
        name: "boolalg.coproduct".into(),
        unit: FinBool::point(),
        tensor: Arc::new(|a, b| c2(a, b).algebra),
        tensor_morphisms: Arc::new(|f, g| {
            let (src, tgt) = (c2(f.source(), g.source()), c2(f.target(), g.target()));
            let dual = tgt
                .coords
                .iter()
                .map(|t| position(&src.coords, &[f.dual()[t[0]], g.dual()[t[1]]]))
                .collect();
            dual_hom(&src, &tgt, dual)
        }),
        associator: Arc::new(|a, b, c| {
            let (ab, bc) = (c2(a, b), c2(b, c));
            let (src, tgt) = (c2(&ab.algebra, c), c2(a, &bc.algebra));
            let dual = tgt
                .coords
                .iter()
                .map(|t| {
                    let (y, z) = (bc.coords[t[1]][0], bc.coords[t[1]][1]);
                    position(&src.coords, &[position(&ab.coords, &[t[0], y]), z])
                })
                .collect();
            dual_hom(&src, &tgt, dual)
        }),
        left_unitor: Arc::new(|a| {
            let src = c2(&FinBool::point(), a);
            let dual = (0..a.atom_count()).map(|x| position(&src.coords, &[0, x])).collect();
            BoolHom::from_dual(src.algebra, a.clone(), dual).expect("unitor")
        }),
        right_unitor: Arc::new(|a| {
            let src = c2(a, &FinBool::point());
            let dual = (0..a.atom_count()).map(|x| position(&src.coords, &[x, 0])).collect();
            BoolHom::from_dual(src.algebra, a.clone(), dual).expect("unitor")
        }),
        braiding: Arc::new(|a, b| {
            let (src, tgt) = (c2(a, b), c2(b, a));
            let dual = tgt.coords.iter().map(|t| position(&src.coords, &[t[1], t[0]])).collect();
            dual_hom(&src, &tgt, dual)
        }),
        marginalization: Marginalization::Inclusions,
        marginals: Arc::new(|a, b| {
            let co = c2(a, b);
            (co.injections[0].clone(), co.injections[1].clone())
        }),
    }
}

/// Objects for the coherence suites: every object has at most two atoms.
pub fn small_prob_objects<S: Scalar>() -> Vec<ProbAlgebra<S>> {
    vec![
        ProbAlgebra::point(),
        ProbAlgebra::uniform(FinBool::new(["a", "b"]).expect("atoms")).expect("uniform"),
        ProbAlgebra::new(FinBool::new(["c", "d"]).expect("atoms"), vec![S::from_ratio(1, 3), S::from_ratio(2, 3)])
            .expect("positive"),
    ]
}

pub fn small_bool_objects() -> Vec<FinBool> {
    vec![
        FinBool::degenerate(),
        FinBool::point(),
        FinBool::new(["a", "b"]).expect("atoms"),
        FinBool::new(["c", "d"]).expect("atoms"),
    ]
}
