//! The named law suites behind `maw check`.
//!
//! Each suite is a list of independent checks; checks run in parallel on the
//! ambient rayon pool and their reports are concatenated in declaration
//! order, so output does not depend on scheduling. Randomized checks draw
//! from a stream derived from the seed and the check's own name.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

use crate::boolalg::{self, BoolHom, FinBool};
use crate::canmodel;
use crate::disint::{self, Kernel};
use crate::funcalg::{self, Func};
use crate::gen;
use crate::kolmo::{self, ConsistentFamily, Cylinder};
use crate::proba::{self, MeasuredMorphism, ProbAlgebra, ProbMorphism};
use crate::scalar::{Rational, Scalar};
use crate::stoned::{self, PointMap};

use super::instances::*;
use super::{
    check_functor_laws, check_mono_epi, check_monoidal_coherence, check_naturality, check_universal_product, LawReport,
    NaturalTransformation,
};

type Q = Rational;

/// Suite selector for `--suite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    StoneDuality,
    ProbDuality,
    Disint,
    Kolmo,
    Monoidal,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["stone-duality", "prob-duality", "disint", "kolmo", "monoidal", "all"];

    pub fn name(self) -> &'static str {
        match self {
            Suite::StoneDuality => "stone-duality",
            Suite::ProbDuality => "prob-duality",
            Suite::Disint => "disint",
            Suite::Kolmo => "kolmo",
            Suite::Monoidal => "monoidal",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "stone-duality" => Suite::StoneDuality,
            "prob-duality" => Suite::ProbDuality,
            "disint" => Suite::Disint,
            "kolmo" => Suite::Kolmo,
            "monoidal" => Suite::Monoidal,
            "all" => Suite::All,
            other => return Err(format!("unknown suite `{other}`; expected one of {}", Suite::NAMES.join(", "))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Caps and sample sizes. Exhaustive checks use `max_atoms` for objects and
/// `probe_atoms` wherever whole hom-sets between objects are walked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub max_atoms: usize,
    pub probe_atoms: usize,
    pub seed: u64,
    pub random_morphisms: usize,
    pub random_atoms: usize,
    pub perturbations: usize,
    pub relprod_pairs: usize,
    pub tower_pairs: usize,
    pub l1_vectors: usize,
    pub epi_morphisms: usize,
    pub kolmo_queries: usize,
    pub actions: usize,
    pub action_atoms: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_atoms: 4,
            probe_atoms: 3,
            seed: 0,
            random_morphisms: 1000,
            random_atoms: 12,
            perturbations: 100,
            relprod_pairs: 500,
            tower_pairs: 200,
            l1_vectors: 1000,
            epi_morphisms: 1000,
            kolmo_queries: 1000,
            actions: 200,
            action_atoms: 6,
        }
    }
}

impl SuiteConfig {
    /// Defaults with the object cap (and the probe cap, if larger) lowered.
    pub fn with_max_atoms(max_atoms: usize) -> Self {
        let d = SuiteConfig::default();
        SuiteConfig {
            max_atoms,
            probe_atoms: d.probe_atoms.min(max_atoms),
            ..d
        }
    }

    fn probe(&self) -> usize {
        self.probe_atoms.min(self.max_atoms)
    }
}

pub type Check = fn(&SuiteConfig) -> Vec<LawReport>;

/// The checks making up a suite, in report order.
pub fn checks(suite: Suite) -> Vec<(&'static str, Check)> {
    let stone: Vec<(&'static str, Check)> = vec![
        ("stone roundtrip", stone_roundtrip),
        ("stone functors", stone_functors),
        ("stone naturality", stone_naturality),
        ("loomis", loomis_sikorski),
        ("bool mono/epi", bool_mono_epi),
        ("products", products),
    ];
    let prob: Vec<(&'static str, Check)> = vec![
        ("prob duality", prob_duality),
        ("measured", measured),
        ("canonical model", canonical_model),
        ("prob epi", prob_epi),
    ];
    let dis: Vec<(&'static str, Check)> = vec![
        ("disintegration", disintegration),
        ("perturbations", perturbations),
        ("relative products", relative_products),
        ("conditional expectation", conditional_expectation),
        ("lp", lp_norms),
        ("ergodic", ergodic),
    ];
    let kol: Vec<(&'static str, Check)> = vec![("kolmogorov", kolmogorov)];
    let mon: Vec<(&'static str, Check)> = vec![("monoidal", monoidal)];
    match suite {
        Suite::StoneDuality => stone,
        Suite::ProbDuality => prob,
        Suite::Disint => dis,
        Suite::Kolmo => kol,
        Suite::Monoidal => mon,
        Suite::All => [stone, prob, dis, kol, mon].concat(),
    }
}

/// Runs a suite on the current rayon pool with a deterministic merge.
pub fn run(suite: Suite, config: &SuiteConfig) -> Vec<LawReport> {
    checks(suite)
        .par_iter()
        .map(|(_, check)| check(config))
        .collect::<Vec<_>>()
        .concat()
}

// ---------------------------------------------------------------- stone duality

/// `Clopen(Stone(B)) = B` and `Stone(Clopen(S)) = S` on objects.
pub fn stone_roundtrip(cfg: &SuiteConfig) -> Vec<LawReport> {
    let mut algebras = LawReport::new(format!("Clopen(Stone(B)) = B, B ≤ {} atoms", cfg.max_atoms));
    for b in bool_objects(cfg.max_atoms) {
        algebras.check(stoned::clopen(&stoned::stone(&b)) == b, || format!("{:?}", b.atoms()));
    }
    let mut spaces = LawReport::new(format!("Stone(Clopen(S)) = S, S ≤ {} points", cfg.max_atoms));
    for s in stone_spaces(cfg.max_atoms) {
        spaces.check(stoned::stone(&stoned::clopen(&s)) == s, || format!("{:?}", s.points()));
    }
    vec![algebras, spaces]
}

pub fn stone_functors(cfg: &SuiteConfig) -> Vec<LawReport> {
    let p = cfg.probe();
    let bools = bool_category(bool_objects(p));
    let spaces = finset_category(stone_spaces(p));
    vec![
        check_functor_laws(&stone_functor(), &bools, &spaces),
        check_functor_laws(&clopen_functor(), &spaces, &bools),
    ]
}

/// Unit and counit of the duality are identities in canonical form; their
/// naturality squares are the morphism-level round trips.
pub fn stone_naturality(cfg: &SuiteConfig) -> Vec<LawReport> {
    let p = cfg.probe();
    let bools = bool_category(bool_objects(p));
    let spaces = finset_category(stone_spaces(p));
    let unit = NaturalTransformation::new("unit", BoolHom::identity);
    let counit = NaturalTransformation::new("counit", PointMap::identity);
    vec![
        check_naturality(&unit, &identity_functor("Id"), &clopen_stone_functor(), &bools, &bools),
        check_naturality(&counit, &identity_functor("Id"), &stone_clopen_functor(), &spaces, &spaces),
    ]
}

/// Λ and ⊖ are functors and `⊖∘Λ = id` on objects and morphisms.
pub fn loomis_sikorski(cfg: &SuiteConfig) -> Vec<LawReport> {
    let p = cfg.probe();
    let bools = bool_category(bool_objects(p));
    let deletes = delete_category(delete_objects(p.min(2)));
    let mut roundtrip = LawReport::new(format!("⊖∘Λ = id, objects ≤ {} atoms, homs ≤ {p}", cfg.max_atoms));
    for b in bool_objects(cfg.max_atoms) {
        let q = stoned::delete_quotient(&stoned::loomis(&b));
        roundtrip.check(q.algebra == b && q.map == BoolHom::identity(&b), || format!("object {:?}", b.atoms()));
    }
    for row in bools.hom_table() {
        for homs in row {
            for h in homs {
                let back = stoned::delete_quotient_map(&stoned::loomis_map(&h));
                roundtrip.check(back == h, || format!("hom {:?}", h.dual_named()));
            }
        }
    }
    vec![
        check_functor_laws(&loomis_functor(), &bools, &deletes),
        check_functor_laws(&delete_quotient_functor(), &deletes, &bools),
        roundtrip,
    ]
}

/// Structural injective/surjective against brute-force mono/epi.
pub fn bool_mono_epi(cfg: &SuiteConfig) -> Vec<LawReport> {
    let p = cfg.probe();
    let objects = bool_objects(p);
    let bools = bool_category(objects.clone());
    let mut report = LawReport::new(format!("Bool: injective ⇔ mono, surjective ⇔ epi, ≤ {p} atoms, probes ≤ {p}"));
    for a in &objects {
        for b in &objects {
            for h in BoolHom::enumerate(a, b) {
                let brute = check_mono_epi(&bools, &h, a, b, &objects);
                let w = || format!("{:?}", h.dual_named());
                report.check(h.is_mono() == brute.mono, w);
                report.check(h.is_epi() == brute.epi, w);
                report.check(h.is_injective_by_enumeration() == brute.mono, w);
                report.check(h.is_surjective_by_enumeration() == brute.epi, w);
            }
        }
    }
    vec![report]
}

/// The AbsMes product (a product in `Bool^op`), the coproduct in its dual
/// form, and the product of delete spaces.
pub fn products(cfg: &SuiteConfig) -> Vec<LawReport> {
    let p = cfg.probe();
    let objects = bool_objects(p);
    let op = bool_category(objects.clone()).opposite();
    let mut absmes = LawReport::new(format!("absmes_product universal in Bool^op, factors and probes ≤ {p} atoms"));
    let mut coprod = LawReport::new(format!("boolalg.coproduct universal in Bool^op, factors and probes ≤ {p} atoms"));
    for a in objects.iter().filter(|b| !b.is_degenerate()) {
        for b in objects.iter().filter(|b| !b.is_degenerate()) {
            let prod = stoned::absmes_product(&[a.clone(), b.clone()]).expect("nondegenerate factors");
            let legs = vec![(a.clone(), prod.projections[0].clone()), (b.clone(), prod.projections[1].clone())];
            absmes.merge(check_universal_product("", &op, &prod.algebra, &legs, &objects));
            let co = boolalg::coproduct(&[a.clone(), b.clone()]);
            let legs = vec![(a.clone(), co.injections[0].clone()), (b.clone(), co.injections[1].clone())];
            coprod.merge(check_universal_product("", &op, &co.algebra, &legs, &objects));
        }
    }
    let small = delete_objects(p.min(2));
    let deletes = delete_category(small.clone());
    let mut delete = LawReport::new("delete_product universal in Delete, factors and probes ≤ 2 points");
    for a in small.iter().filter(|d| !d.space().is_empty()) {
        for b in small.iter().filter(|d| !d.space().is_empty()) {
            let prod = stoned::delete_product(&[a.clone(), b.clone()]).expect("nonempty factors");
            let legs = vec![(a.clone(), prod.projections[0].clone()), (b.clone(), prod.projections[1].clone())];
            delete.merge(check_universal_product("", &deletes, &prod.space, &legs, &small));
        }
    }
    vec![absmes, coprod, delete]
}

// ---------------------------------------------------------------- probability duality

/// L∞ and Idem are functors and mutually inverse on objects and morphisms.
pub fn prob_duality(cfg: &SuiteConfig) -> Vec<LawReport> {
    let probs = prob_category(prob_objects::<Q>(cfg.max_atoms));
    let funcs = func_category(probs.objects.iter().map(funcalg::linfty).collect());
    let mut idem_linfty = LawReport::new(format!("Idem∘L∞ = id, ≤ {} atoms", cfg.max_atoms));
    let mut linfty_idem = LawReport::new(format!("L∞∘Idem = id, ≤ {} atoms", cfg.max_atoms));
    for x in &probs.objects {
        idem_linfty.check(funcalg::idem(&funcalg::linfty(x)) == *x, || format!("object {}", (probs.label)(x)));
    }
    for a in &funcs.objects {
        linfty_idem.check(funcalg::linfty(&funcalg::idem(a)) == *a, || format!("object {}", (funcs.label)(a)));
    }
    for row in probs.hom_table() {
        for homs in row {
            for t in homs {
                let back = funcalg::idem_morphism(&funcalg::koopman(&t));
                idem_linfty.check(back.as_ref() == Ok(&t), || format!("morphism {:?}", t.map_named()));
            }
        }
    }
    for row in funcs.hom_table() {
        for homs in row {
            for k in homs {
                let back = funcalg::idem_morphism(&k).map(|t| funcalg::koopman(&t));
                linfty_idem.check(back.as_ref() == Ok(&k), || "Koopman operator not recovered".to_string());
            }
        }
    }
    vec![
        check_functor_laws(&linfty_functor(), &probs, &funcs),
        check_functor_laws(&idem_functor(), &funcs, &probs),
        idem_linfty,
        linfty_idem,
    ]
}

/// Mes, L∞∘Mes, `Mes∘Inc = id` and the natural monomorphism `Inc∘Mes ⇒ id`.
pub fn measured(cfg: &SuiteConfig) -> Vec<LawReport> {
    let p = cfg.probe();
    let measured = measured_category(measured_objects::<Q>(p));
    let probs = prob_category(prob_objects::<Q>(p));
    let funcs = func_category(probs.objects.iter().map(funcalg::linfty).collect());
    let iota = NaturalTransformation::new("ι", |m: &proba::MeasuredBool<Q>| proba::mes(m).inclusion);
    let mut mes_inc = LawReport::new(format!("Mes∘Inc = id, ≤ {p} atoms"));
    for x in &probs.objects {
        mes_inc.check(proba::mes(&x.inc()).algebra == *x, || format!("object {}", (probs.label)(x)));
    }
    for row in probs.hom_table() {
        for homs in row {
            for t in homs {
                let back = proba::mes_morphism(&proba::inc_morphism(&t));
                mes_inc.check(back == t, || format!("morphism {:?}", t.map_named()));
            }
        }
    }
    let mut mono = LawReport::new("ι components are injective");
    for m in &measured.objects {
        mono.check(MeasuredMorphism::is_injective(&proba::mes(m).inclusion), || (measured.label)(m));
    }
    vec![
        check_functor_laws(&mes_functor(), &measured, &probs),
        check_functor_laws(&linfty_mes_functor(), &measured, &funcs),
        mes_inc,
        check_naturality(&iota, &inc_mes_functor(), &identity_functor("Id"), &measured, &measured),
        mono,
    ]
}

/// Canonical model: functoriality, `Stone(X)_ProbAlg ≅ X` naturally, strong
/// Lusin, initiality, the representation bijection and surjectivity.
pub fn canonical_model(cfg: &SuiteConfig) -> Vec<LawReport> {
    let p = cfg.probe();
    let probs = prob_category(prob_objects::<Q>(cfg.max_atoms));
    let spaces = finset_category(stone_spaces(cfg.max_atoms));
    let iso = NaturalTransformation::new("𝔄", |x: &ProbAlgebra<Q>| {
        canmodel::stone_model(x).natural_iso()
    });
    let naturality = check_naturality(&iso, &cast_stone_functor(), &identity_functor("Id"), &probs, &probs);
    let mut iso_ok = LawReport::new("𝔄 components are isomorphisms");
    let mut lusin = LawReport::new(format!("stone_model is strong Lusin, ≤ {} atoms and random ≤ 6", cfg.max_atoms));
    let mut rng = gen::rng(cfg.seed, "canonical model");
    let mut samples = probs.objects.clone();
    samples.extend((0..50).map(|_| {
        let n = rng.gen_range(1..=6);
        gen::prob_algebra(&mut rng, "x", n)
    }));
    for x in &samples {
        let w = canmodel::stone_model(x);
        iso_ok.check(w.natural_iso().is_bijective(), || (probs.label)(x));
        lusin.check(canmodel::strong_lusin(&w), || (probs.label)(x));
        if x.atom_count() <= 4 {
            lusin.check(canmodel::strong_lusin_by_definition(&w), || (probs.label)(x));
        }
    }
    let mut initial = LawReport::new(format!(
        "strong Lusin ⇔ initial in Model(X), ≤ {p} atoms, ≤ {} null points",
        canmodel::MAX_NULL_POINTS
    ));
    for x in prob_objects::<Q>(p) {
        let models = canmodel::enumerate_models(&x, canmodel::MAX_NULL_POINTS);
        for w in &models {
            initial.check(
                canmodel::strong_lusin(w) == canmodel::is_initial_among(w, &models),
                || format!("{} with {} null points", (probs.label)(&x), w.null_points().len()),
            );
            initial.check(
                canmodel::strong_lusin(w) == canmodel::strong_lusin_by_definition(w),
                || format!("definition disagrees on {}", (probs.label)(&x)),
            );
            let t = canmodel::initial_factorization(&x, w).expect("model of x");
            initial.check(
                canmodel::model_morphisms(&canmodel::stone_model(&x), w) == vec![t],
                || format!("Stone(X) → W not unique for {}", (probs.label)(&x)),
            );
        }
    }
    let mut represent = LawReport::new(format!("Hom(X → K) ≅ C(Stone(X), K), X ≤ {p} atoms, |K| ≤ 3"));
    for x in prob_objects::<Q>(p) {
        for k in stone_spaces(3).into_iter().filter(|k| !k.is_empty()) {
            let homs = BoolHom::enumerate(&stoned::clopen(&k), x.algebra());
            let maps = PointMap::enumerate(&stoned::stone(x.algebra()), &k);
            represent.check(homs.len() == maps.len(), || format!("count for {} → {:?}", (probs.label)(&x), k.points()));
            let reps: Vec<PointMap> = homs
                .iter()
                .map(|h| canmodel::represent(&x, &k, h).expect("matching endpoints"))
                .collect();
            let injective = reps.iter().enumerate().all(|(i, r)| !reps[..i].contains(r));
            represent.check(injective && reps.iter().all(|r| maps.contains(r)), || {
                format!("bijection for {} → {:?}", (probs.label)(&x), k.points())
            });
        }
    }
    let mut surjective = LawReport::new(format!("Stone(T) is surjective, ≤ {} atoms", cfg.max_atoms));
    for row in probs.hom_table() {
        for homs in row {
            for t in homs {
                surjective.check(canmodel::model_morphism(&t).is_surjective(), || format!("{:?}", t.map_named()));
            }
        }
    }
    vec![
        check_functor_laws(&stone_model_functor(), &probs, &spaces),
        naturality,
        iso_ok,
        lusin,
        initial,
        represent,
        surjective,
    ]
}

/// Every measure-preserving map is surjective and brute-force epi.
pub fn prob_epi(cfg: &SuiteConfig) -> Vec<LawReport> {
    let probes = prob_objects::<Q>(cfg.max_atoms);
    let probs = prob_category(probes.clone());
    let mut rng = gen::rng(cfg.seed, "prob epi");
    let mut report = LawReport::new(format!(
        "ProbAlg: {} random morphisms ≤ {} atoms are surjective and epi",
        cfg.epi_morphisms, cfg.max_atoms
    ));
    for _ in 0..cfg.epi_morphisms {
        let t = gen::prob_morphism(&mut rng, cfg.max_atoms);
        let mut local = probes.clone();
        local.push(t.target().clone());
        local.push(t.source().clone());
        let brute = check_mono_epi(&probs, &t, t.source(), t.target(), &local);
        report.check(t.is_surjective(), || format!("not surjective: {:?}", t.map_named()));
        report.check(brute.epi, || format!("not epi: {:?}", t.map_named()));
    }
    vec![report]
}

// ---------------------------------------------------------------- disintegration

pub fn disintegration(cfg: &SuiteConfig) -> Vec<LawReport> {
    let mut rng = gen::rng(cfg.seed, "disintegration");
    let title = |what: &str| format!("{what}, {} random maps ≤ {} atoms", cfg.random_morphisms, cfg.random_atoms);
    let mut support = LawReport::new(title("kernel support"));
    let mut normal = LawReport::new(title("kernel normalization"));
    let mut mixture = LawReport::new(title("kernel mixture"));
    let mut identity = LawReport::new(title("disintegration identity on indicator bases"));
    for _ in 0..cfg.random_morphisms {
        let pi = gen::prob_morphism(&mut rng, cfg.random_atoms);
        let k = disint::disintegrate(&pi);
        let w = || format!("{:?}", pi.map_named());
        support.check(k.is_supported(), w);
        normal.check(k.is_normalized(), w);
        mixture.check(k.is_mixture(), w);
        let violations = k.identity_violations();
        identity.checked += pi.source().atom_count() * pi.target().atom_count() - 1;
        identity.check(violations.is_empty(), || format!("{w:?} at {violations:?}", w = w()));
    }
    vec![support, normal, mixture, identity]
}

/// Perturbs one true kernel entry (or moves mass within or out of a fiber).
fn perturb(rng: &mut gen::SeededRng, k: &Kernel<Q>) -> Kernel<Q> {
    let mut fibers = k.fibers().to_vec();
    let (ny, nx) = (fibers.len(), fibers[0].len());
    let y = rng.gen_range(0..ny);
    let a = rng.gen_range(0..nx);
    let delta = Q::from_ratio(rng.gen_range(1..=5), rng.gen_range(2..=9));
    match rng.gen_range(0..3) {
        // move mass to another atom (inside or outside the fiber)
        0 if nx > 1 => {
            let mut b = rng.gen_range(0..nx - 1);
            if b >= a {
                b += 1;
            }
            fibers[y][a] = fibers[y][a].clone() - delta.clone();
            fibers[y][b] = fibers[y][b].clone() + delta;
        }
        // scale a whole fiber
        1 => {
            for m in &mut fibers[y] {
                *m = m.clone() * (Q::from_ratio(1, 1) + delta.clone());
            }
        }
        _ => fibers[y][a] = fibers[y][a].clone() + delta,
    }
    Kernel::new(k.base().clone(), fibers).expect("same shape")
}

pub fn perturbations(cfg: &SuiteConfig) -> Vec<LawReport> {
    let mut rng = gen::rng(cfg.seed, "perturbations");
    let mut report = LawReport::new(format!("{} perturbed kernels fail verify_uniqueness", cfg.perturbations));
    let mut truth = LawReport::new(format!("{} true kernels pass verify_uniqueness", cfg.perturbations));
    for _ in 0..cfg.perturbations {
        let pi = gen::prob_morphism(&mut rng, cfg.random_atoms);
        let k = disint::disintegrate(&pi);
        truth.check(disint::verify_uniqueness(&pi, &k), || format!("{:?}", pi.map_named()));
        let bad = perturb(&mut rng, &k);
        report.check(bad != k && !disint::verify_uniqueness(&pi, &bad), || format!("{:?}", bad.named()));
    }
    vec![report, truth]
}

pub fn relative_products(cfg: &SuiteConfig) -> Vec<LawReport> {
    let mut rng = gen::rng(cfg.seed, "relative products");
    let n = cfg.relprod_pairs;
    let mut f1f2 = LawReport::new(format!("relative product identity on indicator bases, {n} random pairs"));
    let mut square = LawReport::new(format!("π₁∘Π₁ = π₂∘Π₂, {n} random pairs"));
    let mut generation = LawReport::new(format!("Π₁, Π₂ generate the relative product, {n} random pairs"));
    for _ in 0..n {
        let (p1, p2) = gen::pair_over(&mut rng, 4);
        let r = disint::rel_product(&p1, &p2).expect("common target");
        let w = || format!("{:?} / {:?}", p1.map_named(), p2.map_named());
        square.check(r.commutes(&p1, &p2), w);
        generation.check(r.is_generated_by_factors(), w);
        let v = r.f1f2_violations(&p1, &p2);
        f1f2.check(v.is_empty(), || format!("{} at {v:?}", w()));
    }

    let mut trivial = LawReport::new("relative product over a point is the tensor product");
    for _ in 0..50 {
        let (n1, n2) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let x1 = gen::prob_algebra(&mut rng, "u", n1);
        let x2 = gen::prob_algebra(&mut rng, "v", n2);
        let pt = ProbAlgebra::point();
        let p1 = ProbMorphism::new(x1.clone(), pt.clone(), vec![0; n1]).expect("to a point");
        let p2 = ProbMorphism::new(x2.clone(), pt, vec![0; n2]).expect("to a point");
        let r = disint::rel_product(&p1, &p2).expect("common target");
        let t = proba::tensor(&[x1, x2]);
        // a&b ↦ a|b
        let map: Vec<usize> = (0..r.algebra.atom_count())
            .map(|i| {
                let pair = vec![r.left.map()[i], r.right.map()[i]];
                t.coords.iter().position(|c| *c == pair).expect("tensor has every pair")
            })
            .collect();
        let ok = match ProbMorphism::new(r.algebra.clone(), t.algebra.clone(), map) {
            Ok(iso) => {
                iso.is_bijective()
                    && ProbMorphism::compose(&t.marginals[0], &iso).as_ref() == Ok(&r.left)
                    && ProbMorphism::compose(&t.marginals[1], &iso).as_ref() == Ok(&r.right)
            }
            Err(_) => false,
        };
        trivial.check(ok, || format!("{:?}", r.algebra.masses_named()));
    }

    let mut diagonal = LawReport::new("relative product of id_Y with itself is the diagonal ≅ Y");
    for _ in 0..50 {
        let k = rng.gen_range(1..=6);
        let y = gen::prob_algebra(&mut rng, "y", k);
        let id = ProbMorphism::identity(&y);
        let r = disint::rel_product(&id, &id).expect("same target");
        let diag = r.algebra.atoms().iter().zip(y.atoms()).all(|(d, a)| *d == crate::ident::pair_name(a, a));
        diagonal.check(
            diag && r.left.is_bijective() && r.right.is_bijective() && r.left.map() == r.right.map(),
            || format!("{:?}", r.algebra.masses_named()),
        );
    }
    vec![f1f2, square, generation, trivial, diagonal]
}

/// `∫ f·(g∘π) = ∫ E(f|Y)·g` on indicators, the tower property and
/// contractivity.
pub fn conditional_expectation(cfg: &SuiteConfig) -> Vec<LawReport> {
    let mut rng = gen::rng(cfg.seed, "conditional expectation");
    let mut fgm = LawReport::new(format!(
        "∫f·(g∘π) = ∫E(f|Y)·g on indicator pairs, all maps ≤ {} atoms and random ≤ {}",
        cfg.probe(),
        cfg.random_atoms
    ));
    let mut maps: Vec<ProbMorphism<Q>> = Vec::new();
    for row in prob_category(prob_objects::<Q>(cfg.probe())).hom_table() {
        maps.extend(row.into_iter().flatten());
    }
    maps.extend((0..100).map(|_| gen::prob_morphism(&mut rng, cfg.random_atoms)));
    for pi in &maps {
        let (lx, ly) = (funcalg::linfty(pi.source()), funcalg::linfty(pi.target()));
        let pull = funcalg::koopman(pi);
        for a in 0..lx.dim() {
            let f = lx.basis(a);
            let e = funcalg::cond_exp(pi, &f);
            for b in 0..ly.dim() {
                let g = ly.basis(b);
                let lhs = lx.trace(&f.mul(&pull.apply(&g)));
                let rhs = ly.trace(&e.mul(&g));
                fgm.check(lhs == rhs, || format!("{:?} at ({a}, {b})", pi.map_named()));
            }
        }
    }
    let mut tower = LawReport::new(format!("tower property, {} random composable pairs", cfg.tower_pairs));
    let mut contract = LawReport::new(format!("E(·|Y) is sup-norm contractive, {} random pairs", cfg.tower_pairs));
    for _ in 0..cfg.tower_pairs {
        let (first, second) = gen::composable_pair(&mut rng, cfg.random_atoms);
        let both = ProbMorphism::compose(&second, &first).expect("composable");
        let f = Func::real(gen::real_vector(&mut rng, first.source().atom_count()));
        let stepwise = funcalg::cond_exp(&second, &funcalg::cond_exp(&first, &f));
        tower.check(stepwise == funcalg::cond_exp(&both, &f), || format!("{:?}", f.0));
        contract.check(funcalg::cond_exp(&first, &f).sup_norm_sqr() <= f.sup_norm_sqr(), || format!("{:?}", f.0));
    }
    vec![fgm, tower, contract]
}

pub fn lp_norms(cfg: &SuiteConfig) -> Vec<LawReport> {
    let mut rng = gen::rng(cfg.seed, "lp");
    let mut l1 = LawReport::new(format!("level-set L¹ = direct L¹, {} random real vectors", cfg.l1_vectors));
    let mut order = LawReport::new(format!("‖f‖₁² ≤ ‖f‖₂² ≤ ‖f‖∞², {} random real vectors", cfg.l1_vectors));
    for _ in 0..cfg.l1_vectors {
        let n = rng.gen_range(1..=cfg.random_atoms);
        let x = gen::prob_algebra(&mut rng, "x", n);
        let a = funcalg::linfty(&x);
        let f = Func::real(gen::real_vector(&mut rng, n));
        let level = funcalg::l1_level_set(&a, &f).expect("real");
        let direct = funcalg::l1_direct(&a, &f).expect("real");
        l1.check(level == direct, || format!("{:?}", f.0));
        let two = funcalg::lp_norm(&a, &f, funcalg::Exponent::Two).expect("real").value;
        let inf = funcalg::lp_norm(&a, &f, funcalg::Exponent::Infinity).expect("real").value;
        order.check(direct.clone() * direct <= two && two <= inf, || format!("{:?}", f.0));
    }
    vec![l1, order]
}

pub fn ergodic(cfg: &SuiteConfig) -> Vec<LawReport> {
    let mut rng = gen::rng(cfg.seed, "ergodic");
    let title = |what: &str| format!("{what}, {} random actions ≤ {} atoms", cfg.actions, cfg.action_atoms);
    let mut fibers = LawReport::new(title("every ergodic component is ergodic (by enumeration)"));
    let mut agree = LawReport::new(title("orbit criterion agrees with enumeration"));
    let mut kernel = LawReport::new(title("components disintegrate X over Inv(X)"));
    for _ in 0..cfg.actions {
        let (x, gens) = gen::action(&mut rng, cfg.action_atoms);
        let d = disint::ergodic_components(&x, &gens).expect("automorphisms");
        let w = || format!("{:?}", gens.iter().map(|g| g.map().to_vec()).collect::<Vec<_>>());
        kernel.check(disint::verify_uniqueness(&d.invariant.factor, &d.components), w);
        for fiber in d.components.fibers() {
            let brute = disint::is_ergodic_by_enumeration(&x, &gens, fiber);
            fibers.check(brute, w);
            agree.check(disint::is_ergodic(&x, &gens, fiber).expect("automorphisms") == brute, w);
        }
        // the total measure is ergodic exactly when there is one orbit
        agree.check(
            disint::is_ergodic_by_enumeration(&x, &gens, x.measure()) == (d.invariant.orbits.len() == 1),
            w,
        );
    }
    vec![fibers, agree, kernel]
}

// ---------------------------------------------------------------- kolmogorov

fn sample_families() -> Vec<(String, Arc<dyn ConsistentFamily<Q>>)> {
    let q = |n, d| Q::from_ratio(n, d);
    let coin = ProbAlgebra::from_pairs([("h", q(1, 2)), ("t", q(1, 2))]).expect("coin");
    let skew = ProbAlgebra::from_pairs([("a", q(1, 3)), ("b", q(2, 3))]).expect("skew");
    let die = ProbAlgebra::from_pairs([("1", q(1, 6)), ("2", q(1, 3)), ("3", q(1, 2))]).expect("die");
    let two = FinBool::new(["0", "1"]).expect("states");
    let three = FinBool::new(["x", "y", "z"]).expect("states");
    let flip = kolmo::markov_family(
        two.clone(),
        vec![q(1, 1), q(0, 1)],
        vec![vec![q(1, 2), q(1, 2)], vec![q(1, 1), q(0, 1)]],
    )
    .expect("stochastic");
    let absorbing = kolmo::markov_family(
        two,
        vec![q(1, 2), q(1, 2)],
        vec![vec![q(2, 3), q(1, 3)], vec![q(0, 1), q(1, 1)]],
    )
    .expect("stochastic");
    let cycle = kolmo::markov_family(
        three,
        vec![q(1, 3), q(1, 3), q(1, 3)],
        vec![
            vec![q(0, 1), q(1, 2), q(1, 2)],
            vec![q(1, 4), q(1, 4), q(1, 2)],
            vec![q(1, 1), q(0, 1), q(0, 1)],
        ],
    )
    .expect("stochastic");
    vec![
        ("iid fair coin".into(), Arc::new(kolmo::iid_family(coin))),
        ("iid (1/3, 2/3)".into(), Arc::new(kolmo::iid_family(skew))),
        ("iid three-sided die".into(), Arc::new(kolmo::iid_family(die))),
        ("markov [[1/2,1/2],[1,0]]".into(), Arc::new(flip)),
        ("markov absorbing".into(), Arc::new(absorbing)),
        ("markov three states".into(), Arc::new(cycle)),
    ]
}

/// The family whose stated marginal over `{1}` disagrees with the projection
/// of its marginal over `{1, 2}`.
pub fn planted_inconsistent_family() -> kolmo::TableFamily<Q> {
    let q = |n, d| Q::from_ratio(n, d);
    let coin = FinBool::new(["h", "t"]).expect("coin");
    let factors = BTreeMap::from([(1, coin.clone()), (2, coin)]);
    let one = BTreeMap::from([("h".to_string(), q(1, 2)), ("t".to_string(), q(1, 2))]);
    let two = BTreeMap::from([
        ("h|h".to_string(), q(1, 6)),
        ("h|t".to_string(), q(1, 6)),
        ("t|h".to_string(), q(1, 3)),
        ("t|t".to_string(), q(1, 3)),
    ]);
    kolmo::TableFamily::new(factors, vec![(vec![1], one), (vec![1, 2], two)]).expect("well-formed table")
}

pub fn kolmogorov(cfg: &SuiteConfig) -> Vec<LawReport> {
    let families = sample_families();
    let pairs = kolmo::subset_pairs(&[1, 2, 3, 4, 5]);
    let mut consistency = LawReport::new("i.i.d. and Markov families are consistent for all F ⊆ F′ ⊆ {1..5}");
    for (name, family) in &families {
        let report = kolmo::check_consistency(family.as_ref(), &pairs).expect("indices in universe");
        consistency.checked += report.pairs_checked.saturating_sub(1);
        consistency.check(report.is_consistent(), || format!("{name}: {:?}", report.violations.first()));
    }

    let mut rng = gen::rng(cfg.seed, "kolmogorov");
    let engines: Vec<(String, kolmo::CylinderMeasure<Q>, Vec<String>)> = families
        .iter()
        .map(|(name, f)| {
            let atoms = f.factor(1).expect("index 1").atoms().to_vec();
            (name.clone(), kolmo::extend(Arc::clone(f)), atoms)
        })
        .collect();
    let mut independence = LawReport::new(format!(
        "cylinder queries are independent of the representing index set, {} random queries",
        cfg.kolmo_queries
    ));
    let mut additivity = LawReport::new(format!("queries are additive over complements, {} random queries", cfg.kolmo_queries));
    for _ in 0..cfg.kolmo_queries {
        let (name, mu, atoms) = &engines[rng.gen_range(0..engines.len())];
        let (cyl, extra) = gen::cylinder(&mut rng, atoms, 7);
        let direct = mu.query(&cyl).expect("valid cylinder");
        let lifted = mu.query_over(&cyl, &extra).expect("valid cylinder");
        independence.check(direct == lifted, || format!("{name}: {cyl:?} over +{extra:?}"));
        let all: Vec<Vec<String>> = (0..atoms.len().pow(cyl.indices.len() as u32))
            .map(|flat| {
                crate::enumerate::unflatten(flat, &vec![atoms.len(); cyl.indices.len()])
                    .into_iter()
                    .map(|a| atoms[a].clone())
                    .collect()
            })
            .collect();
        let complement = Cylinder {
            indices: cyl.indices.clone(),
            event: all.into_iter().filter(|t| !cyl.event.contains(t)).collect(),
        };
        let rest = mu.query(&complement).expect("valid cylinder");
        additivity.check(direct + rest == Q::from_ratio(1, 1), || format!("{name}: {cyl:?}"));
    }

    let mut planted = LawReport::new("planted inconsistent family raises InconsistentFamily on {1,2}");
    let mu = kolmo::extend::<Q>(Arc::new(planted_inconsistent_family()));
    let hh = Cylinder {
        indices: vec![1, 2],
        event: vec![vec!["h".into(), "h".into()]],
    };
    let err = mu.query(&hh);
    planted.check(
        matches!(&err, Err(crate::error::Error::InconsistentFamily { smaller, larger, .. }) if *smaller == [1] && *larger == [1, 2]),
        || format!("{err:?}"),
    );
    let report = kolmo::check_consistency(&planted_inconsistent_family(), &[(vec![1], vec![1, 2])]).expect("indices");
    planted.check(!report.is_consistent(), || "batch check found no violation".into());

    vec![consistency, independence, additivity, planted]
}

// ---------------------------------------------------------------- monoidal

pub fn monoidal(_cfg: &SuiteConfig) -> Vec<LawReport> {
    let mut out = check_monoidal_coherence(&prob_tensor_structure::<Q>(), &prob_category(small_prob_objects()));
    out.extend(check_monoidal_coherence(
        &bool_coproduct_structure(),
        &bool_category(small_bool_objects()),
    ));
    out
}
