//! Kolmogorov extension as a cylinder-query engine.
//!
//! A consistent family assigns to each finite index set `F` a probability
//! measure on `⨂_{α∈F} X_α`. The extension `μ_A` is never materialized: a
//! cylinder based on `F` is answered from the marginal over `F`, and every
//! marginal the engine relies on is audited against its neighbours before it
//! is cached.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Debug;
use std::sync::{Arc, RwLock};

use crate::boolalg::{self, FinBool};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::ident;
use crate::proba::{self, MeasuredBool, ProbAlgebra};
use crate::scalar::{self, Rational, Scalar};

/// The indices a family is defined on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexUniverse {
    /// An explicit finite list, kept sorted.
    Finite(Vec<u64>),
    /// `{1, 2, 3, …}`, enumerated lazily.
    Naturals,
}

impl IndexUniverse {
    pub fn finite(mut indices: Vec<u64>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        IndexUniverse::Finite(indices)
    }

    pub fn contains(&self, index: u64) -> bool {
        match self {
            IndexUniverse::Finite(list) => list.binary_search(&index).is_ok(),
            IndexUniverse::Naturals => index >= 1,
        }
    }

    /// The least index not in `taken`, if any.
    pub fn next_outside(&self, taken: &[u64]) -> Option<u64> {
        match self {
            IndexUniverse::Finite(list) => list.iter().copied().find(|i| !taken.contains(i)),
            IndexUniverse::Naturals => (1..).find(|i| !taken.contains(i)),
        }
    }

    /// The first `n` indices (all of them if fewer).
    pub fn first(&self, n: usize) -> Vec<u64> {
        match self {
            IndexUniverse::Finite(list) => list.iter().copied().take(n).collect(),
            IndexUniverse::Naturals => (1..=n as u64).collect(),
        }
    }
}

/// A measure on `⨂_{α∈F} X_α`, stored densely with the last index varying
/// fastest. Zero masses are allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct Marginal<S = Rational> {
    indices: Vec<u64>,
    factors: Vec<FinBool>,
    masses: Vec<S>,
}

impl<S: Scalar> Marginal<S> {
    fn new(indices: Vec<u64>, factors: Vec<FinBool>, masses: Vec<S>) -> Result<Self> {
        let expected: usize = factors.iter().map(FinBool::atom_count).product();
        if masses.len() != expected {
            return Err(Error::NotADistribution {
                reason: format!("{} masses for {} product atoms over {:?}", masses.len(), expected, indices),
            });
        }
        if let Some(m) = masses.iter().find(|m| m.is_negative()) {
            return Err(Error::NotADistribution {
                reason: format!("negative mass {} over {:?}", m.to_text(), indices),
            });
        }
        if !scalar::is_unit_total(&masses) {
            return Err(Error::NotADistribution {
                reason: format!("masses over {:?} sum to {}", indices, scalar::sum(&masses).to_text()),
            });
        }
        Ok(Marginal {
            indices,
            factors,
            masses,
        })
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    pub fn factors(&self) -> &[FinBool] {
        &self.factors
    }

    pub fn masses(&self) -> &[S] {
        &self.masses
    }

    fn radices(&self) -> Vec<usize> {
        self.factors.iter().map(FinBool::atom_count).collect()
    }

    pub fn coords(&self, flat: usize) -> Vec<usize> {
        enumerate::unflatten(flat, &self.radices())
    }

    /// Tuple name of a product atom, coordinates in index order.
    pub fn atom_name(&self, flat: usize) -> String {
        let parts: Vec<&str> = self
            .coords(flat)
            .iter()
            .zip(&self.factors)
            .map(|(&c, f)| f.atoms()[c].as_str())
            .collect();
        ident::tuple_name(&parts)
    }

    pub fn named(&self) -> BTreeMap<String, S> {
        (0..self.masses.len())
            .map(|i| (self.atom_name(i), self.masses[i].clone()))
            .collect()
    }

    /// Pushforward along the coordinate projection onto `onto ⊆ indices`.
    pub fn project(&self, onto: &[u64]) -> Marginal<S> {
        let positions: Vec<usize> = onto
            .iter()
            .map(|i| self.indices.iter().position(|j| j == i).expect("projection onto a subset"))
            .collect();
        let factors: Vec<FinBool> = positions.iter().map(|&p| self.factors[p].clone()).collect();
        let radices: Vec<usize> = factors.iter().map(FinBool::atom_count).collect();
        let map: Vec<usize> = (0..self.masses.len())
            .map(|flat| {
                let c = self.coords(flat);
                enumerate::flatten(&positions.iter().map(|&p| c[p]).collect::<Vec<_>>(), &radices)
            })
            .collect();
        let masses = proba::pushforward(&self.masses, &map, radices.iter().product());
        Marginal {
            indices: onto.to_vec(),
            factors,
            masses,
        }
    }

    /// The marginal as a measured algebra on the coproduct of the factors.
    pub fn to_measured(&self) -> MeasuredBool<S> {
        let co = boolalg::coproduct(&self.factors);
        let radices = self.radices();
        let measure = co
            .coords
            .iter()
            .map(|c| self.masses[enumerate::flatten(c, &radices)].clone())
            .collect();
        MeasuredBool::new(co.algebra, measure).expect("validated marginal")
    }

    /// Null tuples deleted; only on request, since marginals may be degenerate.
    pub fn to_prob_algebra(&self) -> ProbAlgebra<S> {
        proba::mes(&self.to_measured()).algebra
    }
}

/// A family of finite-dimensional marginals indexed by finite subsets of an
/// index universe.
pub trait ConsistentFamily<S: Scalar>: Debug + Send + Sync {
    fn universe(&self) -> &IndexUniverse;

    /// The algebra of coordinate `index`. Its measure is `marginal({index})`,
    /// which may have null atoms.
    fn factor_algebra(&self, index: u64) -> FinBool;

    /// Dense masses over sorted, distinct, in-universe `indices`.
    fn masses(&self, indices: &[u64]) -> Vec<S>;

    fn factor(&self, index: u64) -> Result<FinBool> {
        if !self.universe().contains(index) {
            return Err(Error::UnknownIndex { index });
        }
        Ok(self.factor_algebra(index))
    }

    /// `marginal(F)`; `F` is sorted and deduplicated first.
    fn marginal(&self, indices: &[u64]) -> Result<Marginal<S>> {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let factors = sorted.iter().map(|&i| self.factor(i)).collect::<Result<Vec<_>>>()?;
        let masses = self.masses(&sorted);
        Marginal::new(sorted, factors, masses)
    }
}

/// Independent copies of one factor.
#[derive(Clone, Debug)]
pub struct IidFamily<S = Rational> {
    factor: ProbAlgebra<S>,
    universe: IndexUniverse,
}

pub fn iid_family<S: Scalar>(factor: ProbAlgebra<S>) -> IidFamily<S> {
    IidFamily {
        factor,
        universe: IndexUniverse::Naturals,
    }
}

impl<S: Scalar> IidFamily<S> {
    pub fn over(factor: ProbAlgebra<S>, universe: IndexUniverse) -> Self {
        IidFamily { factor, universe }
    }

    pub fn base(&self) -> &ProbAlgebra<S> {
        &self.factor
    }
}

impl<S: Scalar> ConsistentFamily<S> for IidFamily<S> {
    fn universe(&self) -> &IndexUniverse {
        &self.universe
    }

    fn factor_algebra(&self, _index: u64) -> FinBool {
        self.factor.algebra().clone()
    }

    fn masses(&self, indices: &[u64]) -> Vec<S> {
        let n = self.factor.atom_count();
        let radices = vec![n; indices.len()];
        (0..n.pow(indices.len() as u32))
            .map(|flat| {
                enumerate::unflatten(flat, &radices)
                    .iter()
                    .fold(S::one(), |acc, &a| acc * self.factor.measure()[a].clone())
            })
            .collect()
    }
}

type Matrix<S> = Vec<Vec<S>>;

fn mat_mul<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).fold(S::zero(), |acc, (x, brow)| acc + x.clone() * brow[j].clone()))
                .collect()
        })
        .collect()
}

fn mat_pow<S: Scalar>(m: &Matrix<S>, mut e: u64) -> Matrix<S> {
    let n = m.len();
    let mut result: Matrix<S> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect())
        .collect();
    let mut base = m.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul(&result, &base);
        }
        base = mat_mul(&base, &base);
        e >>= 1;
    }
    result
}

/// A time-homogeneous Markov chain started at time 1.
#[derive(Clone, Debug)]
pub struct MarkovFamily<S = Rational> {
    states: FinBool,
    initial: Vec<S>,
    transition: Matrix<S>,
    universe: IndexUniverse,
}

/// `initial` is the law of `x₁`; `transition[s][t] = P(x_{n+1} = t | x_n = s)`.
pub fn markov_family<S: Scalar>(states: FinBool, initial: Vec<S>, transition: Matrix<S>) -> Result<MarkovFamily<S>> {
    let n = states.atom_count();
    if initial.len() != n || initial.iter().any(|m| m.is_negative()) || !scalar::is_unit_total(&initial) {
        return Err(Error::NotADistribution {
            reason: "initial law must be a probability vector over the states".into(),
        });
    }
    if transition.len() != n {
        return Err(Error::NotStochastic {
            reason: format!("{} rows for {} states", transition.len(), n),
        });
    }
    for (s, row) in states.atoms().iter().zip(&transition) {
        if row.len() != n {
            return Err(Error::NotStochastic {
                reason: format!("row `{s}` has {} entries for {} states", row.len(), n),
            });
        }
        if let Some(m) = row.iter().find(|m| m.is_negative()) {
            return Err(Error::NotStochastic {
                reason: format!("row `{s}` has negative entry {}", m.to_text()),
            });
        }
        if !scalar::is_unit_total(row) {
            return Err(Error::NotStochastic {
                reason: format!("row `{s}` sums to {}", scalar::sum(row).to_text()),
            });
        }
    }
    Ok(MarkovFamily {
        states,
        initial,
        transition,
        universe: IndexUniverse::Naturals,
    })
}

impl<S: Scalar> MarkovFamily<S> {
    pub fn states(&self) -> &FinBool {
        &self.states
    }

    pub fn initial(&self) -> &[S] {
        &self.initial
    }

    pub fn transition(&self) -> &Matrix<S> {
        &self.transition
    }
}

impl<S: Scalar> ConsistentFamily<S> for MarkovFamily<S> {
    fn universe(&self) -> &IndexUniverse {
        &self.universe
    }

    fn factor_algebra(&self, _index: u64) -> FinBool {
        self.states.clone()
    }

    /// Chain rule: `law(x_{t₁}) = initial·P^{t₁−1}`, then `P^{t_{i+1}−t_i}`.
    fn masses(&self, indices: &[u64]) -> Vec<S> {
        let n = self.states.atom_count();
        let Some((&first, rest)) = indices.split_first() else {
            return vec![S::one()];
        };
        let start = mat_pow(&self.transition, first - 1);
        let mut current: Vec<S> = (0..n)
            .map(|t| {
                self.initial
                    .iter()
                    .zip(&start)
                    .fold(S::zero(), |acc, (p, row)| acc + p.clone() * row[t].clone())
            })
            .collect();
        let mut previous = first;
        for &t in rest {
            let step = mat_pow(&self.transition, t - previous);
            current = current
                .iter()
                .enumerate()
                .flat_map(|(flat, m)| {
                    let last = flat % n;
                    step[last].iter().map(move |p| m.clone() * p.clone())
                })
                .collect();
            previous = t;
        }
        current
    }
}

/// Explicitly tabulated marginals over a finite universe. Marginals that are
/// not listed are the projections of the top one; listed ones are taken at
/// face value, so a table can be inconsistent.
#[derive(Clone, Debug)]
pub struct TableFamily<S = Rational> {
    factors: BTreeMap<u64, FinBool>,
    stated: BTreeMap<Vec<u64>, Marginal<S>>,
    universe: IndexUniverse,
}

impl<S: Scalar> TableFamily<S> {
    /// `marginals` pairs an index set with masses keyed by tuple names (in
    /// increasing index order); missing tuples have mass zero. The marginal
    /// over the whole universe is required.
    pub fn new(factors: BTreeMap<u64, FinBool>, marginals: Vec<(Vec<u64>, BTreeMap<String, S>)>) -> Result<Self> {
        let universe = IndexUniverse::finite(factors.keys().copied().collect());
        let mut stated = BTreeMap::new();
        for (mut indices, named) in marginals {
            indices.sort_unstable();
            indices.dedup();
            let algebras = indices
                .iter()
                .map(|i| factors.get(i).cloned().ok_or(Error::UnknownIndex { index: *i }))
                .collect::<Result<Vec<_>>>()?;
            let radices: Vec<usize> = algebras.iter().map(FinBool::atom_count).collect();
            let size: usize = radices.iter().product();
            let lookup: HashMap<String, usize> = (0..size)
                .map(|flat| {
                    let parts: Vec<&str> = enumerate::unflatten(flat, &radices)
                        .iter()
                        .zip(&algebras)
                        .map(|(&c, f)| f.atoms()[c].as_str())
                        .collect();
                    (ident::tuple_name(&parts), flat)
                })
                .collect();
            let mut masses = vec![S::zero(); size];
            for (name, m) in named {
                let flat = *lookup.get(&name).ok_or(Error::UnknownAtom { atom: name.clone() })?;
                masses[flat] = m;
            }
            let marginal = Marginal::new(indices.clone(), algebras, masses)?;
            stated.insert(indices, marginal);
        }
        let IndexUniverse::Finite(all) = &universe else { unreachable!() };
        if !stated.contains_key(all) {
            return Err(Error::NotADistribution {
                reason: format!("no marginal over the whole index set {all:?}"),
            });
        }
        Ok(TableFamily {
            factors,
            stated,
            universe,
        })
    }

    pub fn factors(&self) -> &BTreeMap<u64, FinBool> {
        &self.factors
    }

    pub fn stated(&self) -> &BTreeMap<Vec<u64>, Marginal<S>> {
        &self.stated
    }
}

impl<S: Scalar> ConsistentFamily<S> for TableFamily<S> {
    fn universe(&self) -> &IndexUniverse {
        &self.universe
    }

    fn factor_algebra(&self, index: u64) -> FinBool {
        self.factors[&index].clone()
    }

    fn masses(&self, indices: &[u64]) -> Vec<S> {
        if let Some(m) = self.stated.get(indices) {
            return m.masses.clone();
        }
        let IndexUniverse::Finite(all) = &self.universe else { unreachable!() };
        self.stated[all].project(indices).masses
    }
}

/// One failed comparison `π_*(marginal(F′)) ≠ marginal(F)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation<S = Rational> {
    pub smaller: Vec<u64>,
    pub larger: Vec<u64>,
    pub atom: String,
    pub projected: S,
    pub stated: S,
}

impl<S: Scalar> Violation<S> {
    pub fn into_error(self) -> Error {
        Error::InconsistentFamily {
            smaller: self.smaller,
            larger: self.larger,
            atom: self.atom,
            projected: self.projected.to_text(),
            stated: self.stated.to_text(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConsistencyReport<S = Rational> {
    pub pairs_checked: usize,
    pub violations: Vec<Violation<S>>,
}

impl<S: Scalar> ConsistencyReport<S> {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

fn compare<S: Scalar>(larger: &Marginal<S>, smaller: &Marginal<S>) -> Vec<Violation<S>> {
    let projected = larger.project(&smaller.indices);
    (0..smaller.masses.len())
        .filter(|&i| !projected.masses[i].same(&smaller.masses[i]))
        .map(|i| Violation {
            smaller: smaller.indices.clone(),
            larger: larger.indices.clone(),
            atom: smaller.atom_name(i),
            projected: projected.masses[i].clone(),
            stated: smaller.masses[i].clone(),
        })
        .collect()
}

/// Compares every pair atom by atom. Only malformed input is an error;
/// disagreements are report content.
pub fn check_consistency<S: Scalar>(
    family: &dyn ConsistentFamily<S>,
    pairs: &[(Vec<u64>, Vec<u64>)],
) -> Result<ConsistencyReport<S>> {
    let mut violations = Vec::new();
    for (small, large) in pairs {
        let smaller = family.marginal(small)?;
        let mut union = large.clone();
        union.extend(small);
        let larger = family.marginal(&union)?;
        violations.extend(compare(&larger, &smaller));
    }
    Ok(ConsistencyReport {
        pairs_checked: pairs.len(),
        violations,
    })
}

/// All `(F, F′)` with `∅ ≠ F ⊊ F′ ⊆ indices`.
pub fn subset_pairs(indices: &[u64]) -> Vec<(Vec<u64>, Vec<u64>)> {
    let pick = |mask: &[bool], from: &[u64]| -> Vec<u64> {
        from.iter().zip(mask).filter(|(_, &b)| b).map(|(&i, _)| i).collect()
    };
    let mut out = Vec::new();
    for outer in enumerate::subsets(indices.len()) {
        let large = pick(&outer, indices);
        for inner in enumerate::subsets(large.len()) {
            let small = pick(&inner, &large);
            if !small.is_empty() && small.len() < large.len() {
                out.push((small, large.clone()));
            }
        }
    }
    out
}

/// A cylinder `{x : (x_α)_{α∈F} ∈ E}`; tuples list atom names in the order
/// of `indices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cylinder {
    pub indices: Vec<u64>,
    pub event: Vec<Vec<String>>,
}

/// `μ_A`, answered lazily from audited marginals.
#[derive(Debug)]
pub struct CylinderMeasure<S = Rational> {
    family: Arc<dyn ConsistentFamily<S>>,
    cache: RwLock<HashMap<Vec<u64>, Arc<Marginal<S>>>>,
}

pub fn extend<S: Scalar>(family: Arc<dyn ConsistentFamily<S>>) -> CylinderMeasure<S> {
    CylinderMeasure {
        family,
        cache: RwLock::new(HashMap::new()),
    }
}

impl<S: Scalar> CylinderMeasure<S> {
    pub fn family(&self) -> &dyn ConsistentFamily<S> {
        self.family.as_ref()
    }

    pub fn cached_marginals(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }

    /// `marginal(F)`, audited against every `F ∖ {i}` and against
    /// `F ∪ {next index}` before it is cached. Concurrent callers may both
    /// compute an entry; they compute the same value, so the last write wins.
    pub fn marginal(&self, indices: &[u64]) -> Result<Arc<Marginal<S>>> {
        let mut key = indices.to_vec();
        key.sort_unstable();
        key.dedup();
        if let Some(m) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(Arc::clone(m));
        }
        let m = self.family.marginal(&key)?;
        if key.len() > 1 {
            for drop in &key {
                let sub: Vec<u64> = key.iter().copied().filter(|i| i != drop).collect();
                if let Some(v) = compare(&m, &self.family.marginal(&sub)?).into_iter().next() {
                    return Err(v.into_error());
                }
            }
        }
        if let Some(next) = self.family.universe().next_outside(&key) {
            let mut wider = key.clone();
            wider.push(next);
            if let Some(v) = compare(&self.family.marginal(&wider)?, &m).into_iter().next() {
                return Err(v.into_error());
            }
        }
        let m = Arc::new(m);
        self.cache.write().expect("cache lock").insert(key, Arc::clone(&m));
        Ok(m)
    }

    /// `μ_A(E)`, evaluated over the cylinder's own index set.
    pub fn query(&self, cylinder: &Cylinder) -> Result<S> {
        self.query_over(cylinder, &[])
    }

    /// `μ_A(E)` evaluated over `F ∪ extra`; the answer must not depend on
    /// `extra`.
    pub fn query_over(&self, cylinder: &Cylinder, extra: &[u64]) -> Result<S> {
        let mut base: Vec<u64> = cylinder.indices.clone();
        base.sort_unstable();
        base.dedup();
        for &i in cylinder.indices.iter().chain(extra) {
            if !self.family.universe().contains(i) {
                return Err(Error::UnknownIndex { index: i });
            }
        }
        let factors: Vec<FinBool> = base.iter().map(|&i| self.family.factor(i)).collect::<Result<_>>()?;
        // Each tuple becomes coordinates over the sorted base; a tuple that
        // assigns two atoms to one index describes the empty set.
        let mut event: HashSet<Vec<usize>> = HashSet::new();
        for tuple in &cylinder.event {
            if tuple.len() != cylinder.indices.len() {
                return Err(Error::UnknownAtom {
                    atom: format!("{tuple:?} (expected {} coordinates)", cylinder.indices.len()),
                });
            }
            let mut coords: Vec<Option<usize>> = vec![None; base.len()];
            let mut empty = false;
            for (name, index) in tuple.iter().zip(&cylinder.indices) {
                let pos = base.binary_search(index).expect("index in base");
                let atom = factors[pos].require_index(name)?;
                match coords[pos] {
                    Some(prev) if prev != atom => empty = true,
                    _ => coords[pos] = Some(atom),
                }
            }
            if !empty {
                event.insert(coords.into_iter().map(|c| c.expect("every index assigned")).collect());
            }
        }
        let mut over = base.clone();
        over.extend(extra);
        let marginal = self.marginal(&over)?;
        let positions: Vec<usize> = base
            .iter()
            .map(|i| marginal.indices.iter().position(|j| j == i).expect("base ⊆ over"))
            .collect();
        Ok((0..marginal.masses.len())
            .filter(|&flat| {
                let c = marginal.coords(flat);
                event.contains(&positions.iter().map(|&p| c[p]).collect::<Vec<_>>())
            })
            .fold(S::zero(), |acc, flat| acc + marginal.masses[flat].clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn coin() -> ProbAlgebra {
        ProbAlgebra::from_pairs([("h", q(1, 2)), ("t", q(1, 2))]).unwrap()
    }

    fn cyl(indices: &[u64], event: &[&[&str]]) -> Cylinder {
        Cylinder {
            indices: indices.to_vec(),
            event: event.iter().map(|t| t.iter().map(|s| s.to_string()).collect()).collect(),
        }
    }

    #[test]
    fn iid_marginals() {
        let fam = iid_family(coin());
        let m = fam.marginal(&[1, 2]).unwrap();
        assert_eq!(m.masses(), vec![q(1, 4); 4]);
        assert_eq!(m.atom_name(1), "h|t");

        let skew = iid_family(ProbAlgebra::from_pairs([("a", q(1, 3)), ("b", q(2, 3))]).unwrap());
        assert_eq!(skew.marginal(&[1, 2]).unwrap().masses(), [q(1, 9), q(2, 9), q(2, 9), q(4, 9)]);
        let report = check_consistency(&fam, &subset_pairs(&[1, 2, 3, 4])).unwrap();
        assert!(report.is_consistent());
        assert_eq!(report.pairs_checked, 3usize.pow(4) - 2usize.pow(4) - 15);
    }

    #[test]
    fn iid_query() {
        let mu = extend::<Rational>(Arc::new(iid_family(coin())));
        assert_eq!(mu.query(&cyl(&[1, 3], &[&["h", "h"]])).unwrap(), q(1, 4));
        assert_eq!(mu.query_over(&cyl(&[1, 3], &[&["h", "h"]]), &[2, 7]).unwrap(), q(1, 4));
        let full = cyl(&[2, 5], &[&["h", "h"], &["h", "t"], &["t", "h"], &["t", "t"]]);
        assert_eq!(mu.query(&full).unwrap(), q(1, 1));
        assert_eq!(mu.query(&cyl(&[0], &[&["h"]])).unwrap_err().name(), "UnknownIndex");
        assert_eq!(mu.query(&cyl(&[1], &[&["x"]])).unwrap_err().name(), "UnknownAtom");
        // x₁ = h and x₁ = t at once is empty
        assert_eq!(mu.query(&cyl(&[1, 1], &[&["h", "t"]])).unwrap(), q(0, 1));
        assert_eq!(mu.query(&cyl(&[], &[&[]])).unwrap(), q(1, 1));
        assert!(mu.cached_marginals() > 0);
    }

    #[test]
    fn markov_chain_rule() {
        let states = FinBool::new(["0", "1"]).unwrap();
        let p = vec![vec![q(1, 2), q(1, 2)], vec![q(1, 1), q(0, 1)]];
        let fam = markov_family(states, vec![q(1, 1), q(0, 1)], p).unwrap();
        let mu = extend::<Rational>(Arc::new(fam.clone()));
        assert_eq!(mu.query(&cyl(&[1, 2, 3], &[&["0", "1", "0"]])).unwrap(), q(1, 2));
        assert_eq!(mu.query(&cyl(&[3, 1], &[&["0", "0"]])).unwrap(), q(3, 4));
        assert_eq!(mu.query_over(&cyl(&[3, 1], &[&["0", "0"]]), &[2, 6]).unwrap(), q(3, 4));
        let report = check_consistency(&fam, &subset_pairs(&[1, 2, 3, 4, 5])).unwrap();
        assert!(report.is_consistent());
    }

    #[test]
    fn absorbing_state() {
        let states = FinBool::new(["alive", "dead"]).unwrap();
        let p = vec![vec![q(2, 3), q(1, 3)], vec![q(0, 1), q(1, 1)]];
        let fam = markov_family(states, vec![q(1, 1), q(0, 1)], p).unwrap();
        let m = fam.marginal(&[2, 4]).unwrap();
        assert_eq!(m.named()["dead|alive"], q(0, 1));
        assert_eq!(m.named()["alive|alive"], q(8, 27));
        assert_eq!(fam.marginal(&[1]).unwrap().to_prob_algebra().atoms(), ["alive"]);
    }

    #[test]
    fn bad_matrices() {
        let states = FinBool::new(["0", "1"]).unwrap();
        let err = markov_family(states.clone(), vec![q(1, 1), q(0, 1)], vec![vec![q(1, 2), q(1, 3)], vec![q(1, 1), q(0, 1)]]);
        assert_eq!(err.unwrap_err().name(), "NotStochastic");
        let err = markov_family(states, vec![q(1, 2), q(0, 1)], vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]]);
        assert_eq!(err.unwrap_err().name(), "NotADistribution");
    }

    fn inconsistent() -> TableFamily {
        let coin = FinBool::new(["h", "t"]).unwrap();
        let factors = BTreeMap::from([(1, coin.clone()), (2, coin)]);
        let one = BTreeMap::from([("h".to_string(), q(1, 2)), ("t".to_string(), q(1, 2))]);
        let two = BTreeMap::from([
            ("h|h".to_string(), q(1, 6)),
            ("h|t".to_string(), q(1, 6)),
            ("t|h".to_string(), q(1, 3)),
            ("t|t".to_string(), q(1, 3)),
        ]);
        TableFamily::new(factors, vec![(vec![1], one), (vec![1, 2], two)]).unwrap()
    }

    #[test]
    fn inconsistency_is_reported_and_raised() {
        let fam = inconsistent();
        let report = check_consistency(&fam, &[(vec![1], vec![1, 2])]).unwrap();
        assert_eq!(report.violations.len(), 2);
        assert_eq!(report.violations[0].atom, "h");
        assert_eq!(report.violations[0].projected, q(1, 3));
        assert_eq!(report.violations[0].stated, q(1, 2));
        let mu = extend::<Rational>(Arc::new(fam));
        let err = mu.query(&cyl(&[1, 2], &[&["h", "h"]])).unwrap_err();
        assert_eq!(
            err,
            Error::InconsistentFamily {
                smaller: vec![1],
                larger: vec![1, 2],
                atom: "h".into(),
                projected: "1/3".into(),
                stated: "1/2".into(),
            }
        );
        assert_eq!(mu.cached_marginals(), 0);
        // the unstated marginal over {2} is a projection, hence consistent
        assert_eq!(mu.query(&cyl(&[2], &[&["h"]])).unwrap(), q(1, 2));
    }

    #[test]
    fn finite_universe_top_marginal() {
        let sides = FinBool::new(["h", "t"]).unwrap();
        let factors = BTreeMap::from([(1, sides.clone()), (2, sides.clone()), (3, sides)]);
        let fam = iid_family(coin());
        let top = fam.marginal(&[1, 2, 3]).unwrap().named();
        let table = TableFamily::new(factors, vec![(vec![1, 2, 3], top.clone())]).unwrap();
        let mu = extend::<Rational>(Arc::new(table));
        assert_eq!(mu.marginal(&[1, 2, 3]).unwrap().named(), top);
        assert_eq!(mu.query(&cyl(&[4], &[&["h"]])).unwrap_err(), Error::UnknownIndex { index: 4 });
    }

    #[test]
    fn concurrent_queries_agree() {
        let mu = Arc::new(extend::<Rational>(Arc::new(iid_family(coin()))));
        let handles: Vec<_> = (0..8)
            .map(|k| {
                let mu = Arc::clone(&mu);
                std::thread::spawn(move || mu.query(&cyl(&[1, 2 + k % 3], &[&["h", "t"]])).unwrap())
            })
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), q(1, 4));
        }
    }
}
