//! Exhaustive law checking over finite category instances.
//!
//! A [`FiniteCategoryInstance`] is a list of objects together with a hom-set
//! enumerator and composition/identity hooks. The checkers walk every
//! object, every enumerated morphism and every composable pair, comparing
//! morphisms by structural equality of their canonical forms. Violations are
//! report content, never panics.
//!
//! Cost: functor laws visit `Σ_{X,Y,Z} |Hom(X,Y)|·|Hom(Y,Z)|` composable
//! pairs, and `|Hom(X,Y)|` is `|Y|^|X|` point maps before filtering, so
//! object caps of 3–4 atoms are the practical limit.

pub mod instances;
pub mod suites;

use std::collections::HashMap;
use std::fmt::Debug;
use std::sync::Arc;

/// At most this many witnesses are kept per report; the count is exact.
pub const MAX_WITNESSES: usize = 16;

type Shared<F> = Arc<F>;

/// Objects, hom-set enumerator and composition for one finite category.
#[derive(Clone)]
pub struct FiniteCategoryInstance<O, M> {
    pub name: String,
    pub objects: Vec<O>,
    /// `Hom(X → Y)`, exhaustively.
    pub homs: Shared<dyn Fn(&O, &O) -> Vec<M> + Send + Sync>,
    /// `compose(g, f) = g ∘ f`, or `None` when the endpoints do not match.
    pub compose: Shared<dyn Fn(&M, &M) -> Option<M> + Send + Sync>,
    pub identity: Shared<dyn Fn(&O) -> M + Send + Sync>,
    /// Short human label of an object, used in witnesses.
    pub label: Shared<dyn Fn(&O) -> String + Send + Sync>,
}

impl<O: Clone + 'static, M: 'static> FiniteCategoryInstance<O, M> {
    /// The same category with a different object list.
    pub fn with_objects(&self, objects: Vec<O>) -> Self {
        FiniteCategoryInstance {
            name: self.name.clone(),
            objects,
            homs: Arc::clone(&self.homs),
            compose: Arc::clone(&self.compose),
            identity: Arc::clone(&self.identity),
            label: Arc::clone(&self.label),
        }
    }

    /// `C^op`: same objects, reversed morphisms.
    pub fn opposite(&self) -> Self {
        let homs = Arc::clone(&self.homs);
        let compose = Arc::clone(&self.compose);
        FiniteCategoryInstance {
            name: format!("{}^op", self.name),
            objects: self.objects.clone(),
            homs: Arc::new(move |a, b| homs(b, a)),
            compose: Arc::new(move |g, f| compose(f, g)),
            identity: Arc::clone(&self.identity),
            label: Arc::clone(&self.label),
        }
    }

    /// `table[i][j] = Hom(objects[i] → objects[j])`.
    pub fn hom_table(&self) -> Vec<Vec<Vec<M>>> {
        self.objects
            .iter()
            .map(|a| self.objects.iter().map(|b| (self.homs)(a, b)).collect())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    Covariant,
    Contravariant,
}

/// Object and morphism maps of a (possibly contravariant) functor.
#[derive(Clone)]
pub struct Functor<O1, M1, O2, M2> {
    pub name: String,
    pub variance: Variance,
    pub on_objects: Shared<dyn Fn(&O1) -> O2 + Send + Sync>,
    pub on_morphisms: Shared<dyn Fn(&M1) -> M2 + Send + Sync>,
}

impl<O1, M1, O2, M2> Functor<O1, M1, O2, M2> {
    pub fn new(
        name: &str,
        variance: Variance,
        on_objects: impl Fn(&O1) -> O2 + Send + Sync + 'static,
        on_morphisms: impl Fn(&M1) -> M2 + Send + Sync + 'static,
    ) -> Self {
        Functor {
            name: name.to_string(),
            variance,
            on_objects: Arc::new(on_objects),
            on_morphisms: Arc::new(on_morphisms),
        }
    }
}

/// The outcome of one law over one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub law: String,
    /// Number of individual equalities checked.
    pub checked: usize,
    /// Number of failed equalities.
    pub violation_count: usize,
    /// The first [`MAX_WITNESSES`] failures.
    pub violations: Vec<String>,
}

impl LawReport {
    pub fn new(law: impl Into<String>) -> Self {
        LawReport {
            law: law.into(),
            checked: 0,
            violation_count: 0,
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    /// Records one check; `witness` is only evaluated on failure.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(witness());
        }
    }

    /// Folds another report's counts and witnesses into this one.
    pub fn merge(&mut self, other: LawReport) {
        self.checked += other.checked;
        self.violation_count += other.violation_count;
        for w in other.violations {
            if self.violations.len() < MAX_WITNESSES {
                self.violations.push(w);
            }
        }
    }

    fn fail(&mut self, witness: String) {
        self.violation_count += 1;
        if self.violations.len() < MAX_WITNESSES {
            self.violations.push(witness);
        }
    }
}

fn same<M: PartialEq>(a: &Option<M>, b: &Option<M>) -> bool {
    matches!((a, b), (Some(x), Some(y)) if x == y)
}

/// `F(id_X) = id_{F(X)}` and `F(g ∘ f) = F(g) ∘ F(f)` (reversed for
/// contravariant `F`) on every enumerated composable pair.
pub fn check_functor_laws<O1, M1, O2, M2>(
    functor: &Functor<O1, M1, O2, M2>,
    source: &FiniteCategoryInstance<O1, M1>,
    target: &FiniteCategoryInstance<O2, M2>,
) -> LawReport
where
    O1: Clone + 'static,
    M1: PartialEq + 'static,
    O2: Clone + 'static,
    M2: PartialEq + 'static,
{
    let mut report = LawReport::new(format!("functor {} on {}", functor.name, source.name));
    let label = |i: usize| (source.label)(&source.objects[i]);
    for (i, x) in source.objects.iter().enumerate() {
        let image = (functor.on_morphisms)(&(source.identity)(x));
        let expected = (target.identity)(&(functor.on_objects)(x));
        report.check(image == expected, || format!("F(id) ≠ id on {}", label(i)));
    }
    let table = source.hom_table();
    let n = source.objects.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for (fi, f) in table[i][j].iter().enumerate() {
                    for (gi, g) in table[j][k].iter().enumerate() {
                        let witness = || format!("g#{gi}∘f#{fi} over {}→{}→{}", label(i), label(j), label(k));
                        let Some(gf) = (source.compose)(g, f) else {
                            report.check(false, || format!("{} not composable in the source", witness()));
                            continue;
                        };
                        let (ff, fg) = ((functor.on_morphisms)(f), (functor.on_morphisms)(g));
                        let composite = match functor.variance {
                            Variance::Covariant => (target.compose)(&fg, &ff),
                            Variance::Contravariant => (target.compose)(&ff, &fg),
                        };
                        let image = Some((functor.on_morphisms)(&gf));
                        report.check(same(&image, &composite), || format!("F(g∘f) ≠ F(g)∘F(f) for {}", witness()));
                    }
                }
            }
        }
    }
    report
}

/// A family of components `η_X: F(X) → G(X)`.
#[derive(Clone)]
pub struct NaturalTransformation<O1, M2> {
    pub name: String,
    pub component: Shared<dyn Fn(&O1) -> M2 + Send + Sync>,
}

impl<O1, M2> NaturalTransformation<O1, M2> {
    pub fn new(name: &str, component: impl Fn(&O1) -> M2 + Send + Sync + 'static) -> Self {
        NaturalTransformation {
            name: name.to_string(),
            component: Arc::new(component),
        }
    }
}

/// `G(f) ∘ η_X = η_Y ∘ F(f)` for every enumerated `f: X → Y` (for
/// contravariant functors `G(f) ∘ η_Y = η_X ∘ F(f)`).
pub fn check_naturality<O1, M1, O2, M2>(
    eta: &NaturalTransformation<O1, M2>,
    f_functor: &Functor<O1, M1, O2, M2>,
    g_functor: &Functor<O1, M1, O2, M2>,
    source: &FiniteCategoryInstance<O1, M1>,
    target: &FiniteCategoryInstance<O2, M2>,
) -> LawReport
where
    O1: Clone + 'static,
    M1: PartialEq + 'static,
    O2: Clone + 'static,
    M2: PartialEq + 'static,
{
    assert_eq!(f_functor.variance, g_functor.variance, "naturality needs functors of equal variance");
    let mut report = LawReport::new(format!(
        "naturality of {}: {} ⇒ {} on {}",
        eta.name, f_functor.name, g_functor.name, source.name
    ));
    let table = source.hom_table();
    let components: Vec<M2> = source.objects.iter().map(|x| (eta.component)(x)).collect();
    let n = source.objects.len();
    for i in 0..n {
        for j in 0..n {
            for (fi, f) in table[i][j].iter().enumerate() {
                let (ff, gf) = ((f_functor.on_morphisms)(f), (g_functor.on_morphisms)(f));
                let (lhs, rhs) = match f_functor.variance {
                    Variance::Covariant => ((target.compose)(&gf, &components[i]), (target.compose)(&components[j], &ff)),
                    Variance::Contravariant => {
                        ((target.compose)(&gf, &components[j]), (target.compose)(&components[i], &ff))
                    }
                };
                report.check(same(&lhs, &rhs), || {
                    format!(
                        "square fails for f#{fi}: {}→{}",
                        (source.label)(&source.objects[i]),
                        (source.label)(&source.objects[j])
                    )
                });
            }
        }
    }
    report
}

/// Existence and uniqueness of the mediating morphism: for every probe `Y`
/// and every tuple `(f_α: Y → X_α)` exactly one `φ: Y → P` has
/// `π_α ∘ φ = f_α`, by exhaustive search over `Hom(Y → P)`.
pub fn check_universal_product<O, M>(
    law: &str,
    instance: &FiniteCategoryInstance<O, M>,
    candidate: &O,
    projections: &[(O, M)],
    probes: &[O],
) -> LawReport
where
    O: Clone + 'static,
    M: PartialEq + 'static,
{
    let mut report = LawReport::new(format!("universal product: {law} in {}", instance.name));
    for probe in probes {
        let legs: Vec<Vec<M>> = projections.iter().map(|(x, _)| (instance.homs)(probe, x)).collect();
        let radices: Vec<usize> = legs.iter().map(Vec::len).collect();
        let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
        for (pi, phi) in (instance.homs)(probe, candidate).iter().enumerate() {
            let key: Option<Vec<usize>> = projections
                .iter()
                .zip(&legs)
                .map(|((_, p), hom)| {
                    let composite = (instance.compose)(p, phi)?;
                    hom.iter().position(|h| *h == composite)
                })
                .collect();
            match key {
                Some(k) => *counts.entry(k).or_default() += 1,
                None => report.check(false, || {
                    format!("φ#{pi} from {} composes outside the enumerated legs", (instance.label)(probe))
                }),
            }
        }
        let total: usize = radices.iter().product();
        for flat in 0..total {
            let tuple = crate::enumerate::unflatten(flat, &radices);
            let found = counts.get(&tuple).copied().unwrap_or(0);
            report.check(found == 1, || {
                let what = if found == 0 { "no mediating morphism" } else { "mediating morphism not unique" };
                format!("{what} for legs {tuple:?} from {}", (instance.label)(probe))
            });
        }
    }
    report
}

/// Brute-force mono/epi against the probe objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonoEpi {
    pub mono: bool,
    pub epi: bool,
}

fn pairwise_distinct<M: PartialEq>(items: &[Option<M>]) -> bool {
    items.iter().enumerate().all(|(i, a)| {
        a.is_some() && items[..i].iter().all(|b| !same(a, b))
    })
}

/// `f` is mono if `f∘g = f∘g′ ⇒ g = g′` for all `g, g′: Z → dom f` and epi
/// if `g∘f = g′∘f ⇒ g = g′` for all `g, g′: cod f → Z`, over the probes.
pub fn check_mono_epi<O, M>(instance: &FiniteCategoryInstance<O, M>, f: &M, dom: &O, cod: &O, probes: &[O]) -> MonoEpi
where
    O: Clone + 'static,
    M: PartialEq + 'static,
{
    let mono = probes.iter().all(|z| {
        let images: Vec<Option<M>> = (instance.homs)(z, dom).iter().map(|g| (instance.compose)(f, g)).collect();
        pairwise_distinct(&images)
    });
    let epi = probes.iter().all(|z| {
        let images: Vec<Option<M>> = (instance.homs)(cod, z).iter().map(|g| (instance.compose)(g, f)).collect();
        pairwise_distinct(&images)
    });
    MonoEpi { mono, epi }
}

/// How the factors of a tensor are related to it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Marginalization {
    /// Semicartesian: `X ⊗ Y → X`, natural in both factors.
    Projections,
    /// Cosemicartesian: `X → X ⊗ Y`.
    Inclusions,
}

/// Structure maps of a symmetric monoidal category, by component.
#[derive(Clone)]
pub struct MonoidalStructure<O, M> {
    pub name: String,
    pub unit: O,
    pub tensor: Shared<dyn Fn(&O, &O) -> O + Send + Sync>,
    pub tensor_morphisms: Shared<dyn Fn(&M, &M) -> M + Send + Sync>,
    /// `α: (A⊗B)⊗C → A⊗(B⊗C)`.
    pub associator: Shared<dyn Fn(&O, &O, &O) -> M + Send + Sync>,
    /// `λ: I⊗A → A`.
    pub left_unitor: Shared<dyn Fn(&O) -> M + Send + Sync>,
    /// `ρ: A⊗I → A`.
    pub right_unitor: Shared<dyn Fn(&O) -> M + Send + Sync>,
    /// `β: A⊗B → B⊗A`.
    pub braiding: Shared<dyn Fn(&O, &O) -> M + Send + Sync>,
    pub marginalization: Marginalization,
    /// The two marginal maps between `A⊗B` and its factors.
    pub marginals: Shared<dyn Fn(&O, &O) -> (M, M) + Send + Sync>,
}

/// Pentagon, triangle, hexagon, `β∘β = id` and the naturality squares of
/// the marginal maps, one report per law.
pub fn check_monoidal_coherence<O, M>(
    structure: &MonoidalStructure<O, M>,
    instance: &FiniteCategoryInstance<O, M>,
) -> Vec<LawReport>
where
    O: Clone + 'static,
    M: PartialEq + Clone + 'static,
{
    let s = structure;
    let c = |g: &M, f: &M| (instance.compose)(g, f);
    let c3 = |h: &M, g: &M, f: &M| c(g, f).and_then(|gf| c(h, &gf));
    let t = |a: &O, b: &O| (s.tensor)(a, b);
    let id = |a: &O| (instance.identity)(a);
    let tm = |f: &M, g: &M| (s.tensor_morphisms)(f, g);
    let lbl = |a: &O| (instance.label)(a);
    let objs = &instance.objects;
    let what = |law: &str| format!("{law} for {} on {}", s.name, instance.name);

    let mut pentagon = LawReport::new(what("pentagon"));
    for a in objs {
        for b in objs {
            for cc in objs {
                for d in objs {
                    let lhs = c(&(s.associator)(a, b, &t(cc, d)), &(s.associator)(&t(a, b), cc, d));
                    let rhs = c3(
                        &tm(&id(a), &(s.associator)(b, cc, d)),
                        &(s.associator)(a, &t(b, cc), d),
                        &tm(&(s.associator)(a, b, cc), &id(d)),
                    );
                    pentagon.check(same(&lhs, &rhs), || {
                        format!("({}, {}, {}, {})", lbl(a), lbl(b), lbl(cc), lbl(d))
                    });
                }
            }
        }
    }

    let mut triangle = LawReport::new(what("triangle"));
    let mut symmetry = LawReport::new(what("symmetry β∘β = id"));
    for a in objs {
        for b in objs {
            let lhs = c(&tm(&id(a), &(s.left_unitor)(b)), &(s.associator)(a, &s.unit, b));
            let rhs = Some(tm(&(s.right_unitor)(a), &id(b)));
            triangle.check(same(&lhs, &rhs), || format!("({}, {})", lbl(a), lbl(b)));
            let twice = c(&(s.braiding)(b, a), &(s.braiding)(a, b));
            symmetry.check(same(&twice, &Some(id(&t(a, b)))), || format!("({}, {})", lbl(a), lbl(b)));
        }
    }

    let mut hexagon = LawReport::new(what("hexagon"));
    for a in objs {
        for b in objs {
            for cc in objs {
                let lhs = c3(
                    &(s.associator)(b, cc, a),
                    &(s.braiding)(a, &t(b, cc)),
                    &(s.associator)(a, b, cc),
                );
                let rhs = c3(
                    &tm(&id(b), &(s.braiding)(a, cc)),
                    &(s.associator)(b, a, cc),
                    &tm(&(s.braiding)(a, b), &id(cc)),
                );
                hexagon.check(same(&lhs, &rhs), || format!("({}, {}, {})", lbl(a), lbl(b), lbl(cc)));
            }
        }
    }

    let mut marginals = LawReport::new(what(match s.marginalization {
        Marginalization::Projections => "projection naturality",
        Marginalization::Inclusions => "inclusion naturality",
    }));
    let table = instance.hom_table();
    let n = objs.len();
    for (i, j, k, l) in (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).flat_map(move |k| (0..n).map(move |l| (i, j, k, l))))) {
        // f: A → A', g: B → B' with A = objs[i], A' = objs[j], B = objs[k], B' = objs[l]
        let (m1, m2) = (s.marginals)(&objs[i], &objs[k]);
        let (n1, n2) = (s.marginals)(&objs[j], &objs[l]);
        for f in &table[i][j] {
            for g in &table[k][l] {
                let fg = tm(f, g);
                let (ok1, ok2) = match s.marginalization {
                    Marginalization::Projections => (
                        same(&c(&n1, &fg), &c(f, &m1)),
                        same(&c(&n2, &fg), &c(g, &m2)),
                    ),
                    Marginalization::Inclusions => (
                        same(&c(&fg, &m1), &c(&n1, f)),
                        same(&c(&fg, &m2), &c(&n2, g)),
                    ),
                };
                let w = || format!("{}⊗{} → {}⊗{}", lbl(&objs[i]), lbl(&objs[k]), lbl(&objs[j]), lbl(&objs[l]));
                marginals.check(ok1, w);
                marginals.check(ok2, w);
            }
        }
    }

    vec![pentagon, triangle, hexagon, symmetry, marginals]
}

/// Collapses reports into `(total checked, total violations)`.
pub fn totals(reports: &[LawReport]) -> (usize, usize) {
    reports
        .iter()
        .fold((0, 0), |(c, v), r| (c + r.checked, v + r.violation_count))
}

impl<O: Debug, M> Debug for FiniteCategoryInstance<O, M> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteCategoryInstance")
            .field("name", &self.name)
            .field("objects", &self.objects)
            .finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::instances::*;
    use super::*;
    use crate::boolalg::{self, BoolHom, FinBool};
    use crate::proba::{ProbAlgebra, ProbMorphism};
    use crate::scalar::Rational;
    use crate::stoned::{self, PointMap};

    /// On two-point spaces, post-compose with the swap.
    fn swapped(f: PointMap) -> PointMap {
        if f.target().points().len() != 2 {
            return f;
        }
        let map = f.map().iter().map(|&p| 1 - p).collect();
        PointMap::new(f.source().clone(), f.target().clone(), map).expect("swap stays in range")
    }

    #[test]
    fn correct_functor_passes() {
        let bools = bool_category(bool_objects(3));
        let spaces = finset_category(stone_spaces(3));
        let report = check_functor_laws(&stone_functor(), &bools, &spaces);
        assert!(report.passed(), "{report:?}");
        assert!(report.checked > 100);
    }

    #[test]
    fn planted_functor_bug_is_caught() {
        let bools = bool_category(bool_objects(3));
        let spaces = finset_category(stone_spaces(3));
        let broken = Functor::new(
            "swapped Stone",
            Variance::Contravariant,
            stoned::stone,
            |h: &BoolHom| swapped(stoned::stone_map(h)),
        );
        let report = check_functor_laws(&broken, &bools, &spaces);
        assert!(!report.passed());
        assert!(!report.violations.is_empty() && report.violations.len() <= MAX_WITNESSES);
        assert!(report.violation_count >= report.violations.len());
    }

    #[test]
    fn planted_naturality_bug_is_caught() {
        let bools = bool_category(bool_objects(3));
        let good = NaturalTransformation::new("unit", BoolHom::identity);
        let id = identity_functor("Id");
        assert!(check_naturality(&good, &id, &clopen_stone_functor(), &bools, &bools).passed());
        // swap the two atoms of every two-atom algebra
        let bad = NaturalTransformation::new("swapped unit", |b: &FinBool| {
            if b.atom_count() == 2 {
                BoolHom::from_dual(b.clone(), b.clone(), vec![1, 0]).expect("automorphism")
            } else {
                BoolHom::identity(b)
            }
        });
        let report = check_naturality(&bad, &id, &clopen_stone_functor(), &bools, &bools);
        assert!(!report.passed(), "{report:?}");
    }

    #[test]
    fn constant_projection_is_not_a_product() {
        let objects = bool_objects(2);
        let op = bool_category(objects.clone()).opposite();
        let (a, b) = (objects[2].clone(), objects[2].clone());
        let co = boolalg::coproduct(&[a.clone(), b.clone()]);
        let good = vec![(a.clone(), co.injections[0].clone()), (b.clone(), co.injections[1].clone())];
        assert!(check_universal_product("coproduct", &op, &co.algebra, &good, &objects).passed());
        let n = co.algebra.atom_count();
        let constant = BoolHom::from_dual(a.clone(), co.algebra.clone(), vec![0; n]).expect("total dual");
        let bad = vec![(a, constant), (b, co.injections[1].clone())];
        let report = check_universal_product("constant leg", &op, &co.algebra, &bad, &objects);
        assert!(!report.passed());
    }

    #[test]
    fn brute_force_mono_epi_on_bool() {
        let objects = bool_objects(2);
        let bools = bool_category(objects.clone());
        let (one, two) = (&objects[1], &objects[2]);
        let unit = BoolHom::enumerate(one, two).pop().expect("2 → 2²");
        assert_eq!(check_mono_epi(&bools, &unit, one, two, &objects), MonoEpi { mono: true, epi: false });
        let id = BoolHom::identity(two);
        assert_eq!(check_mono_epi(&bools, &id, two, two, &objects), MonoEpi { mono: true, epi: true });
    }

    #[test]
    fn coherence_holds_and_planted_pentagon_bug_is_caught() {
        let structure = prob_tensor_structure::<Rational>();
        let category = prob_category(small_prob_objects::<Rational>());
        for report in check_monoidal_coherence(&structure, &category) {
            assert!(report.passed(), "{report:?}");
        }
        let uniform = small_prob_objects::<Rational>()[1].clone();
        let swap = ProbMorphism::new(uniform.clone(), uniform.clone(), vec![1, 0]).expect("uniform swap");
        let mut broken = structure.clone();
        let (assoc, tm) = (Arc::clone(&structure.associator), Arc::clone(&structure.tensor_morphisms));
        let (tensor, id) = (Arc::clone(&structure.tensor), Arc::clone(&category.identity));
        broken.associator = Arc::new(move |a: &ProbAlgebra<Rational>, b, c| {
            let alpha = assoc(a, b, c);
            if *a != uniform {
                return alpha;
            }
            let twist = tm(&swap, &id(&tensor(b, c)));
            ProbMorphism::compose(&twist, &alpha).expect("composable")
        });
        let reports = check_monoidal_coherence(&broken, &category);
        assert!(!reports[0].passed(), "pentagon: {:?}", reports[0]);
        assert!(reports[0].law.starts_with("pentagon"));
    }

    #[test]
    fn totals_add_up() {
        let mut a = LawReport::new("a");
        a.check(true, String::new);
        a.check(false, || "w".into());
        let mut b = LawReport::new("b");
        b.check(false, || "v".into());
        assert_eq!(totals(&[a.clone(), b.clone()]), (3, 2));
        a.merge(b);
        assert_eq!((a.checked, a.violation_count, a.violations.len()), (3, 2, 2));
    }
}
