//! Probability algebras and measure-preserving maps.
//!
//! A morphism `X → Y` of probability algebras is a σ-homomorphism
//! `Σ_Y → Σ_X` that preserves measure. We always store its Stone dual, a
//! point map `atoms(X) → atoms(Y)` whose pushforward of `μ_X` is `μ_Y`.

use std::collections::BTreeMap;

use crate::boolalg::{self, BoolHom, BoolIdeal, Element, FinBool};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::ident;
use crate::scalar::{self, Rational, Scalar};

fn check_total<S: Scalar>(algebra: &FinBool, measure: &[S], strict: bool) -> Result<()> {
    if measure.len() != algebra.atom_count() {
        return Err(Error::NotADistribution {
            reason: format!("{} masses for {} atoms", measure.len(), algebra.atom_count()),
        });
    }
    for (a, m) in algebra.atoms().iter().zip(measure) {
        if m.is_negative() || (strict && scalar::is_zero(m)) {
            return Err(Error::NotADistribution {
                reason: format!("mass of `{a}` is {}", m.to_text()),
            });
        }
    }
    if !scalar::is_unit_total(measure) {
        return Err(Error::NotADistribution {
            reason: format!("masses sum to {}", scalar::sum(measure).to_text()),
        });
    }
    Ok(())
}

fn named_masses<S: Scalar>(algebra: &FinBool, masses: &BTreeMap<String, S>) -> Result<Vec<S>> {
    let mut out = vec![None; algebra.atom_count()];
    for (name, m) in masses {
        out[algebra.require_index(name)?] = Some(m.clone());
    }
    out.into_iter()
        .zip(algebra.atoms())
        .map(|(m, a)| {
            m.ok_or_else(|| Error::NotADistribution {
                reason: format!("no mass given for `{a}`"),
            })
        })
        .collect()
}

/// Pushforward of `measure` along `map` onto `target_len` atoms.
pub fn pushforward<S: Scalar>(measure: &[S], map: &[usize], target_len: usize) -> Vec<S> {
    let mut out = vec![S::zero(); target_len];
    for (m, &t) in measure.iter().zip(map) {
        out[t] = out[t].clone() + m.clone();
    }
    out
}

fn mass_of<S: Scalar>(measure: &[S], e: &Element) -> S {
    e.atoms().fold(S::zero(), |acc, a| acc + measure[a].clone())
}

/// A finite algebra with a probability measure that may vanish on atoms.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasuredBool<S = Rational> {
    algebra: FinBool,
    measure: Vec<S>,
}

impl<S: Scalar> MeasuredBool<S> {
    pub fn new(algebra: FinBool, measure: Vec<S>) -> Result<Self> {
        check_total(&algebra, &measure, false)?;
        Ok(MeasuredBool { algebra, measure })
    }

    pub fn from_named(algebra: FinBool, masses: &BTreeMap<String, S>) -> Result<Self> {
        let measure = named_masses(&algebra, masses)?;
        Self::new(algebra, measure)
    }

    pub fn algebra(&self) -> &FinBool {
        &self.algebra
    }

    pub fn measure(&self) -> &[S] {
        &self.measure
    }

    pub fn mass(&self, e: &Element) -> S {
        mass_of(&self.measure, e)
    }

    /// The null ideal: everything below the zero-mass atoms.
    pub fn null_ideal(&self) -> BoolIdeal {
        let null = Element::from_indices(
            self.algebra.atom_count(),
            self.measure
                .iter()
                .enumerate()
                .filter(|(_, m)| scalar::is_zero(*m))
                .map(|(i, _)| i),
        );
        BoolIdeal::new(self.algebra.clone(), null)
    }
}

/// A finite probability algebra: every atom has positive mass.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbAlgebra<S = Rational> {
    algebra: FinBool,
    measure: Vec<S>,
}

impl<S: Scalar> ProbAlgebra<S> {
    pub fn new(algebra: FinBool, measure: Vec<S>) -> Result<Self> {
        check_total(&algebra, &measure, true)?;
        Ok(ProbAlgebra { algebra, measure })
    }

    pub fn from_named(algebra: FinBool, masses: &BTreeMap<String, S>) -> Result<Self> {
        let measure = named_masses(&algebra, masses)?;
        Self::new(algebra, measure)
    }

    /// Convenience constructor from `(name, mass)` pairs.
    pub fn from_pairs<N: Into<String>>(pairs: impl IntoIterator<Item = (N, S)>) -> Result<Self> {
        let masses: BTreeMap<String, S> = pairs.into_iter().map(|(n, m)| (n.into(), m)).collect();
        let algebra = FinBool::new(masses.keys().cloned())?;
        Self::from_named(algebra, &masses)
    }

    /// Uniform measure on `algebra`, which must not be degenerate.
    pub fn uniform(algebra: FinBool) -> Result<Self> {
        let n = algebra.atom_count() as i64;
        if n == 0 {
            return Err(Error::DegenerateFactor);
        }
        let measure = vec![S::from_ratio(1, n); n as usize];
        Self::new(algebra, measure)
    }

    /// The one-atom probability algebra (the tensor unit).
    pub fn point() -> Self {
        ProbAlgebra {
            algebra: FinBool::point(),
            measure: vec![S::one()],
        }
    }

    pub fn algebra(&self) -> &FinBool {
        &self.algebra
    }

    pub fn atoms(&self) -> &[String] {
        self.algebra.atoms()
    }

    pub fn atom_count(&self) -> usize {
        self.algebra.atom_count()
    }

    pub fn measure(&self) -> &[S] {
        &self.measure
    }

    pub fn mass(&self, e: &Element) -> S {
        mass_of(&self.measure, e)
    }

    pub fn masses_named(&self) -> BTreeMap<String, S> {
        self.atoms().iter().cloned().zip(self.measure.iter().cloned()).collect()
    }

    /// Forget strict positivity.
    pub fn inc(&self) -> MeasuredBool<S> {
        MeasuredBool {
            algebra: self.algebra.clone(),
            measure: self.measure.clone(),
        }
    }

    /// A measure-preserving atom bijection `self → other`, if any.
    pub fn isomorphism(&self, other: &ProbAlgebra<S>) -> Option<ProbMorphism<S>> {
        if self.atom_count() != other.atom_count() {
            return None;
        }
        let mut used = vec![false; other.atom_count()];
        let mut map = Vec::with_capacity(self.atom_count());
        for m in &self.measure {
            let j = (0..other.atom_count()).find(|&j| !used[j] && other.measure[j].same(m))?;
            used[j] = true;
            map.push(j);
        }
        Some(ProbMorphism {
            source: self.clone(),
            target: other.clone(),
            map,
        })
    }
}

/// Measure-preserving map of measured algebras (null atoms allowed).
#[derive(Clone, Debug, PartialEq)]
pub struct MeasuredMorphism<S = Rational> {
    source: MeasuredBool<S>,
    target: MeasuredBool<S>,
    map: Vec<usize>,
}

fn check_pushforward<S: Scalar>(
    source: &[S],
    target: &[S],
    target_atoms: &[String],
    map: &[usize],
) -> Result<()> {
    if map.len() != source.len() || map.iter().any(|&t| t >= target.len()) {
        return Err(Error::CompositionMismatch {
            reason: "point map is not total between the atom sets".into(),
        });
    }
    let pushed = pushforward(source, map, target.len());
    for ((want, got), name) in target.iter().zip(&pushed).zip(target_atoms) {
        if !want.same(got) {
            return Err(Error::NotMeasurePreserving {
                atom: name.clone(),
                expected: want.to_text(),
                actual: got.to_text(),
            });
        }
    }
    Ok(())
}

impl<S: Scalar> MeasuredMorphism<S> {
    pub fn new(source: MeasuredBool<S>, target: MeasuredBool<S>, map: Vec<usize>) -> Result<Self> {
        check_pushforward(&source.measure, &target.measure, target.algebra.atoms(), &map)?;
        Ok(MeasuredMorphism { source, target, map })
    }

    pub fn identity(m: &MeasuredBool<S>) -> Self {
        MeasuredMorphism {
            source: m.clone(),
            target: m.clone(),
            map: (0..m.algebra.atom_count()).collect(),
        }
    }

    pub fn source(&self) -> &MeasuredBool<S> {
        &self.source
    }

    pub fn target(&self) -> &MeasuredBool<S> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn compose(later: &Self, earlier: &Self) -> Result<Self> {
        if earlier.target != later.source {
            return Err(Error::CompositionMismatch {
                reason: "earlier.target differs from later.source".into(),
            });
        }
        Ok(MeasuredMorphism {
            source: earlier.source.clone(),
            target: later.target.clone(),
            map: earlier.map.iter().map(|&a| later.map[a]).collect(),
        })
    }

    pub fn enumerate(source: &MeasuredBool<S>, target: &MeasuredBool<S>) -> Vec<Self> {
        enumerate::functions(source.algebra.atom_count(), target.algebra.atom_count())
            .filter_map(|map| Self::new(source.clone(), target.clone(), map).ok())
            .collect()
    }

    /// Injective as a map of atoms.
    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.algebra.atom_count()];
        self.map.iter().all(|&t| !std::mem::replace(&mut hit[t], true))
    }
}

/// A morphism of probability algebras, stored as its atom map.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbMorphism<S = Rational> {
    source: ProbAlgebra<S>,
    target: ProbAlgebra<S>,
    map: Vec<usize>,
}

impl<S: Scalar> ProbMorphism<S> {
    /// Validates `μ_target(b) = Σ_{map(a) = b} μ_source(a)` for every `b`.
    pub fn new(source: ProbAlgebra<S>, target: ProbAlgebra<S>, map: Vec<usize>) -> Result<Self> {
        check_pushforward(&source.measure, &target.measure, target.algebra.atoms(), &map)?;
        Ok(ProbMorphism { source, target, map })
    }

    pub fn from_named(
        source: ProbAlgebra<S>,
        target: ProbAlgebra<S>,
        map: &BTreeMap<String, String>,
    ) -> Result<Self> {
        let mut idx = vec![None; source.atom_count()];
        for (a, b) in map {
            idx[source.algebra.require_index(a)?] = Some(target.algebra.require_index(b)?);
        }
        let idx = idx
            .into_iter()
            .zip(source.atoms())
            .map(|(t, a)| {
                t.ok_or_else(|| Error::UnknownAtom {
                    atom: format!("{a} (unmapped)"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, idx)
    }

    pub fn identity(x: &ProbAlgebra<S>) -> Self {
        ProbMorphism {
            source: x.clone(),
            target: x.clone(),
            map: (0..x.atom_count()).collect(),
        }
    }

    pub fn source(&self) -> &ProbAlgebra<S> {
        &self.source
    }

    pub fn target(&self) -> &ProbAlgebra<S> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn map_named(&self) -> BTreeMap<String, String> {
        self.map
            .iter()
            .enumerate()
            .map(|(a, &b)| (self.source.atoms()[a].clone(), self.target.atoms()[b].clone()))
            .collect()
    }

    /// `later ∘ earlier`.
    pub fn compose(later: &Self, earlier: &Self) -> Result<Self> {
        if earlier.target != later.source {
            return Err(Error::CompositionMismatch {
                reason: "earlier.target differs from later.source".into(),
            });
        }
        Ok(ProbMorphism {
            source: earlier.source.clone(),
            target: later.target.clone(),
            map: earlier.map.iter().map(|&a| later.map[a]).collect(),
        })
    }

    /// The underlying σ-homomorphism `Σ_target → Σ_source`.
    pub fn sigma_hom(&self) -> BoolHom {
        BoolHom::from_dual(self.target.algebra.clone(), self.source.algebra.clone(), self.map.clone())
            .expect("atom map is total")
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.atom_count()];
        for &t in &self.map {
            hit[t] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.atom_count() == self.target.atom_count() && self.is_surjective()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_bijective() {
            return None;
        }
        let mut map = vec![0; self.map.len()];
        for (a, &b) in self.map.iter().enumerate() {
            map[b] = a;
        }
        Some(ProbMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            map,
        })
    }

    /// All measure-preserving maps `source → target`.
    pub fn enumerate(source: &ProbAlgebra<S>, target: &ProbAlgebra<S>) -> Vec<Self> {
        enumerate::functions(source.atom_count(), target.atom_count())
            .filter_map(|map| Self::new(source.clone(), target.clone(), map).ok())
            .collect()
    }
}

/// Output of [`mes`].
#[derive(Clone, Debug, PartialEq)]
pub struct Mes<S = Rational> {
    pub algebra: ProbAlgebra<S>,
    /// Quotient map `Σ_M → Σ_M / null ideal`.
    pub quotient: BoolHom,
    /// The monomorphism `Inc(Mes(M)) → M` (inclusion of positive atoms).
    pub inclusion: MeasuredMorphism<S>,
}

/// Deletes the null atoms of a measured algebra.
pub fn mes<S: Scalar>(m: &MeasuredBool<S>) -> Mes<S> {
    let q = boolalg::quotient(&m.algebra, &m.null_ideal()).expect("null ideal of the same algebra");
    let measure: Vec<S> = q.map.dual().iter().map(|&a| m.measure[a].clone()).collect();
    assert!(!q.algebra.is_degenerate(), "a probability measure has a positive atom");
    let algebra = ProbAlgebra {
        algebra: q.algebra.clone(),
        measure,
    };
    let inclusion = MeasuredMorphism {
        source: algebra.inc(),
        target: m.clone(),
        map: q.map.dual().to_vec(),
    };
    Mes {
        algebra,
        quotient: q.map,
        inclusion,
    }
}

/// Mes on morphisms. Positive atoms land on positive atoms.
pub fn mes_morphism<S: Scalar>(t: &MeasuredMorphism<S>) -> ProbMorphism<S> {
    let src = mes(&t.source);
    let tgt = mes(&t.target);
    let map = src
        .inclusion
        .map
        .iter()
        .map(|&a| {
            let b = t.map[a];
            tgt.inclusion
                .map
                .iter()
                .position(|&s| s == b)
                .expect("positive mass pushes forward to a positive atom")
        })
        .collect();
    ProbMorphism {
        source: src.algebra,
        target: tgt.algebra,
        map,
    }
}

/// Inc on morphisms.
pub fn inc_morphism<S: Scalar>(t: &ProbMorphism<S>) -> MeasuredMorphism<S> {
    MeasuredMorphism {
        source: t.source.inc(),
        target: t.target.inc(),
        map: t.map.clone(),
    }
}

/// Tensor product with its marginal morphisms.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<S = Rational> {
    pub algebra: ProbAlgebra<S>,
    pub marginals: Vec<ProbMorphism<S>>,
    /// Factor coordinates of every atom.
    pub coords: Vec<Vec<usize>>,
}

/// Independent product: atoms are tuples, masses multiply.
pub fn tensor<S: Scalar>(factors: &[ProbAlgebra<S>]) -> Tensor<S> {
    let algebras: Vec<FinBool> = factors.iter().map(|f| f.algebra.clone()).collect();
    let co = boolalg::coproduct(&algebras);
    let measure = co
        .coords
        .iter()
        .map(|c| {
            c.iter()
                .zip(factors)
                .fold(S::one(), |acc, (&i, f)| acc * f.measure[i].clone())
        })
        .collect();
    let algebra = ProbAlgebra {
        algebra: co.algebra,
        measure,
    };
    let marginals = factors
        .iter()
        .enumerate()
        .map(|(i, f)| ProbMorphism {
            source: algebra.clone(),
            target: f.clone(),
            map: co.coords.iter().map(|c| c[i]).collect(),
        })
        .collect();
    Tensor {
        algebra,
        marginals,
        coords: co.coords,
    }
}

/// `f₁ ⊗ … ⊗ fₙ` acting coordinatewise on tensor atoms.
pub fn tensor_morphism<S: Scalar>(parts: &[ProbMorphism<S>]) -> ProbMorphism<S> {
    let sources: Vec<ProbAlgebra<S>> = parts.iter().map(|p| p.source.clone()).collect();
    let targets: Vec<ProbAlgebra<S>> = parts.iter().map(|p| p.target.clone()).collect();
    let src = tensor(&sources);
    let tgt = tensor(&targets);
    let map = src
        .coords
        .iter()
        .map(|c| {
            let image: Vec<usize> = c.iter().zip(parts).map(|(&i, p)| p.map[i]).collect();
            tgt.coords.iter().position(|d| *d == image).expect("tuple exists")
        })
        .collect();
    ProbMorphism {
        source: src.algebra,
        target: tgt.algebra,
        map,
    }
}

/// Output of [`invariant_factor`].
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantFactor<S = Rational> {
    pub algebra: ProbAlgebra<S>,
    /// The factor map `X → Inv(X)`, atom ↦ its orbit.
    pub factor: ProbMorphism<S>,
    /// Atoms of `X` in each orbit, ordered as the atoms of `algebra`.
    pub orbits: Vec<Vec<usize>>,
}

/// Atom-index permutations of the given automorphisms, or the first
/// offending generator.
fn generator_maps<S: Scalar>(x: &ProbAlgebra<S>, generators: &[ProbMorphism<S>]) -> Result<Vec<Vec<usize>>> {
    generators
        .iter()
        .enumerate()
        .map(|(i, g)| {
            if g.source != *x || g.target != *x || !g.is_bijective() {
                Err(Error::NotAnAutomorphism { index: i })
            } else {
                Ok(g.map.clone())
            }
        })
        .collect()
}

/// Orbits of the group generated by `generators`, never materializing it.
pub fn orbits<S: Scalar>(x: &ProbAlgebra<S>, generators: &[ProbMorphism<S>]) -> Result<Vec<Vec<usize>>> {
    let maps = generator_maps(x, generators)?;
    let n = x.atom_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for map in &maps {
        for (a, &b) in map.iter().enumerate() {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for a in 0..n {
        let r = find(&mut parent, a);
        groups.entry(r).or_default().push(a);
    }
    Ok(groups.into_values().collect())
}

/// The factor of `x` onto its invariant subalgebra `{E : T^γ E = E ∀γ}`,
/// whose atoms are the orbits.
pub fn invariant_factor<S: Scalar>(
    x: &ProbAlgebra<S>,
    generators: &[ProbMorphism<S>],
) -> Result<InvariantFactor<S>> {
    let groups = orbits(x, generators)?;
    let mut named: Vec<(String, Vec<usize>)> = groups
        .into_iter()
        .map(|g| {
            let parts: Vec<&str> = g.iter().map(|&a| x.atoms()[a].as_str()).collect();
            // Orbit names reuse the block convention of `from_generators`,
            // wrapping compound atom names.
            let name = parts
                .iter()
                .map(|p| if p.contains(['|', '&']) { format!("({p})") } else { p.to_string() })
                .collect::<Vec<_>>()
                .join("+");
            (name, g)
        })
        .collect();
    named.sort();
    let (names, orbits): (Vec<String>, Vec<Vec<usize>>) = named.into_iter().unzip();
    let measure: Vec<S> = orbits
        .iter()
        .map(|o| o.iter().fold(S::zero(), |acc, &a| acc + x.measure[a].clone()))
        .collect();
    let algebra = ProbAlgebra {
        algebra: FinBool::from_names(names)?,
        measure,
    };
    let mut map = vec![0; x.atom_count()];
    for (k, o) in orbits.iter().enumerate() {
        for &a in o {
            map[a] = k;
        }
    }
    let factor = ProbMorphism::new(x.clone(), algebra.clone(), map)?;
    Ok(InvariantFactor {
        algebra,
        factor,
        orbits,
    })
}

/// `{E : (T^γ)* E = E for every generator}`, by enumeration.
pub fn invariant_elements<S: Scalar>(x: &ProbAlgebra<S>, generators: &[ProbMorphism<S>]) -> Vec<Element> {
    x.algebra()
        .elements()
        .filter(|e| generators.iter().all(|g| g.sigma_hom().apply(e) == *e))
        .collect()
}

/// Name of a tuple of atoms in a tensor product.
pub fn tuple_atom<Sx: AsRef<str>>(parts: &[Sx]) -> String {
    ident::tuple_name(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn uniform(names: &[&str]) -> ProbAlgebra {
        ProbAlgebra::uniform(FinBool::new(names.iter().copied()).unwrap()).unwrap()
    }

    fn prob(pairs: &[(&str, Rational)]) -> ProbAlgebra {
        ProbAlgebra::from_pairs(pairs.iter().cloned()).unwrap()
    }

    #[test]
    fn measures_must_be_distributions() {
        let b = FinBool::new(["a", "b"]).unwrap();
        assert!(ProbAlgebra::new(b.clone(), vec![q(1, 2), q(1, 3)]).is_err());
        assert!(ProbAlgebra::new(b.clone(), vec![q(1, 1), q(0, 1)]).is_err());
        assert!(MeasuredBool::new(b.clone(), vec![q(1, 1), q(0, 1)]).is_ok());
        assert!(MeasuredBool::new(b, vec![q(3, 2), q(-1, 2)]).is_err());
    }

    #[test]
    fn mes_drops_null_atoms() {
        let b = FinBool::new(["a", "b", "c"]).unwrap();
        let m = MeasuredBool::new(b.clone(), vec![q(1, 2), q(1, 2), q(0, 1)]).unwrap();
        let out = mes(&m);
        assert_eq!(out.algebra, prob(&[("a", q(1, 2)), ("b", q(1, 2))]));
        for e in b.elements() {
            assert_eq!(out.quotient.apply(&e).is_zero(), e.is_below(&b.element(&["c"]).unwrap()));
        }
        assert!(out.inclusion.is_injective());

        let x = uniform(&["a", "b"]);
        let round = mes(&x.inc());
        assert_eq!(round.algebra, x);
        assert_eq!(round.quotient, BoolHom::identity(x.algebra()));
    }

    #[test]
    fn morphism_validation() {
        let x = uniform(&["a", "b", "c", "d"]);
        let y = uniform(&["u", "v"]);
        ProbMorphism::identity(&x);
        ProbMorphism::new(x.clone(), y.clone(), vec![0, 0, 1, 1]).unwrap();
        let err = ProbMorphism::new(x, y, vec![0, 0, 0, 1]).unwrap_err();
        assert_eq!(err.name(), "NotMeasurePreserving");

        let x = prob(&[("a", q(1, 3)), ("b", q(2, 3))]);
        let y = uniform(&["u", "v"]);
        match ProbMorphism::new(x, y, vec![0, 1]).unwrap_err() {
            Error::NotMeasurePreserving { atom, expected, actual } => {
                assert_eq!(atom, "u");
                assert_eq!(expected, "1/2");
                assert_eq!(actual, "1/3");
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn sigma_homs_of_morphisms_are_injective() {
        let x = prob(&[("a", q(1, 6)), ("b", q(1, 3)), ("c", q(1, 2))]);
        let y = prob(&[("u", q(1, 2)), ("v", q(1, 2))]);
        for t in ProbMorphism::enumerate(&x, &y) {
            assert!(t.sigma_hom().is_mono());
            assert!(t.is_surjective());
        }
    }

    #[test]
    fn tensor_masses() {
        let t = tensor(&[uniform(&["a", "b"]), uniform(&["c", "d"])]);
        assert_eq!(t.algebra, uniform(&["a|c", "a|d", "b|c", "b|d"]));

        let t = tensor(&[prob(&[("a", q(1, 3)), ("b", q(2, 3))]), prob(&[("c", q(1, 4)), ("d", q(3, 4))])]);
        assert_eq!(t.algebra.measure(), [q(1, 12), q(1, 4), q(1, 6), q(1, 2)]);
        assert!(scalar::is_unit_total(t.algebra.measure()));
        for m in &t.marginals {
            assert!(m.is_surjective());
        }

        let x = prob(&[("a", q(1, 3)), ("b", q(2, 3))]);
        let unit = tensor(&[x.clone(), ProbAlgebra::point()]);
        let iso = ProbMorphism::compose(&unit.marginals[0], &ProbMorphism::identity(&unit.algebra)).unwrap();
        assert!(iso.is_bijective());
        assert_eq!(iso.target(), &x);
    }

    #[test]
    fn invariant_factor_orbits() {
        let x = uniform(&["a", "b"]);
        let swap = ProbMorphism::new(x.clone(), x.clone(), vec![1, 0]).unwrap();
        let inv = invariant_factor(&x, &[swap]).unwrap();
        assert_eq!(inv.algebra.atom_count(), 1);

        let x = uniform(&["a", "b", "c", "d"]);
        let g = ProbMorphism::new(x.clone(), x.clone(), vec![1, 0, 3, 2]).unwrap();
        let inv = invariant_factor(&x, std::slice::from_ref(&g)).unwrap();
        assert_eq!(inv.algebra.atoms(), ["a+b", "c+d"]);
        assert_eq!(inv.algebra.measure(), [q(1, 2), q(1, 2)]);
        assert_eq!(ProbMorphism::compose(&inv.factor, &g).unwrap(), inv.factor);
        // invariant subalgebra = unions of orbits
        let invariant = invariant_elements(&x, &[g]);
        assert_eq!(invariant.len(), 4);
        for e in &invariant {
            for o in &inv.orbits {
                let inside = o.iter().filter(|&&a| e.contains(a)).count();
                assert!(inside == 0 || inside == o.len());
            }
        }

        let id = invariant_factor(&x, &[ProbMorphism::identity(&x)]).unwrap();
        assert_eq!(id.algebra.atom_count(), 4);
        assert_eq!(id.factor.map(), [0, 1, 2, 3]);

        let y = uniform(&["u", "v"]);
        let collapse = ProbMorphism::new(x.clone(), y, vec![0, 0, 1, 1]).unwrap();
        assert_eq!(invariant_factor(&x, &[collapse]).unwrap_err().name(), "NotAnAutomorphism");
    }
}
