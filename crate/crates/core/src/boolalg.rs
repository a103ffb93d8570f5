//! Finite Boolean algebras in canonical atom form.
//!
//! A finite Boolean algebra is the powerset of its atoms, so an algebra is
//! just a sorted list of atom names and an element is a set of atoms. A
//! homomorphism `Φ: B → C` is carried by its Stone dual, a function
//! `atoms(C) → atoms(B)`; the element map is `Φ(E) = { c : dual(c) ∈ E }`.
//! Finite joins are all joins here, so these are also the σ-homomorphisms.

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::enumerate;
use crate::error::{Error, Result};
use crate::ident;

/// An element of a [`FinBool`]: the set of atoms below it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(FixedBitSet);

impl Element {
    pub fn empty(width: usize) -> Self {
        Element(FixedBitSet::with_capacity(width))
    }

    pub fn full(width: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(width);
        bits.insert_range(..);
        Element(bits)
    }

    pub fn from_indices(width: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = FixedBitSet::with_capacity(width);
        for i in indices {
            bits.insert(i);
        }
        Element(bits)
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        Self::from_indices(mask.len(), mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, atom: usize) -> bool {
        self.0.contains(atom)
    }

    pub fn is_zero(&self) -> bool {
        self.0.count_ones(..) == 0
    }

    pub fn count(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn atoms(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn meet(&self, other: &Self) -> Self {
        Element(&self.0 & &other.0)
    }

    pub fn join(&self, other: &Self) -> Self {
        Element(&self.0 | &other.0)
    }

    pub fn complement(&self) -> Self {
        let mut bits = self.0.clone();
        bits.toggle_range(..);
        Element(bits)
    }

    pub fn is_below(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.ones()).finish()
    }
}

/// A finite Boolean algebra, identified with the powerset of its atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinBool {
    atoms: Vec<String>,
}

impl FinBool {
    /// Builds an algebra from atom names; order is canonicalized.
    pub fn new<I, S>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        for a in &atoms {
            ident::validate(a)?;
        }
        Self::from_names(atoms)
    }

    /// Like [`FinBool::new`] for names produced internally (tuples, blocks).
    pub(crate) fn from_names(mut atoms: Vec<String>) -> Result<Self> {
        atoms.sort();
        if let Some(w) = atoms.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidIdentifier {
                id: w[0].clone(),
                reason: "duplicate atom".into(),
            });
        }
        Ok(FinBool { atoms })
    }

    /// The algebra `{0, 1}` with a single atom `*`.
    pub fn point() -> Self {
        FinBool {
            atoms: vec!["*".to_string()],
        }
    }

    /// The 0-atom algebra in which `0 = 1`.
    pub fn degenerate() -> Self {
        FinBool { atoms: Vec::new() }
    }

    pub fn is_degenerate(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn index_of(&self, atom: &str) -> Option<usize> {
        self.atoms.binary_search_by(|a| a.as_str().cmp(atom)).ok()
    }

    pub fn require_index(&self, atom: &str) -> Result<usize> {
        self.index_of(atom).ok_or_else(|| Error::UnknownAtom {
            atom: atom.to_string(),
        })
    }

    pub fn zero(&self) -> Element {
        Element::empty(self.atom_count())
    }

    pub fn one(&self) -> Element {
        Element::full(self.atom_count())
    }

    pub fn atom(&self, index: usize) -> Element {
        Element::from_indices(self.atom_count(), [index])
    }

    pub fn element<S: AsRef<str>>(&self, atoms: &[S]) -> Result<Element> {
        let indices = atoms
            .iter()
            .map(|a| self.require_index(a.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Element::from_indices(self.atom_count(), indices))
    }

    pub fn element_names(&self, e: &Element) -> Vec<String> {
        e.atoms().map(|i| self.atoms[i].clone()).collect()
    }

    /// All `2^n` elements.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        enumerate::subsets(self.atom_count()).map(|m| Element::from_mask(&m))
    }

    /// Some isomorphism `self → other`, if one exists (any atom bijection).
    pub fn isomorphism(&self, other: &FinBool) -> Option<BoolHom> {
        (self.atom_count() == other.atom_count()).then(|| BoolHom {
            source: self.clone(),
            target: other.clone(),
            dual: (0..other.atom_count()).collect(),
        })
    }
}

/// Output of [`from_generators`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub algebra: FinBool,
    /// Point → name of the atom (block) containing it.
    pub block_of: BTreeMap<String, String>,
}

/// Block labels of the common refinement of `generators` over points
/// `0..n`: two points share a label iff no generator separates them.
pub fn refine(n: usize, generators: &[Element]) -> Vec<usize> {
    let mut seen: BTreeMap<Vec<bool>, usize> = BTreeMap::new();
    (0..n)
        .map(|p| {
            let signature: Vec<bool> = generators.iter().map(|g| g.contains(p)).collect();
            let next = seen.len();
            *seen.entry(signature).or_insert(next)
        })
        .collect()
}

/// The algebra of subsets of `universe` generated by `generators`.
///
/// Atoms are the blocks of the common refinement of the generators and their
/// complements. A block is named by its points joined with `+`.
pub fn from_generators<S: AsRef<str>>(universe: &[S], generators: &[Vec<S>]) -> Result<Generated> {
    let mut points: Vec<&str> = universe.iter().map(AsRef::as_ref).collect();
    for p in &points {
        ident::validate_plain(p)?;
    }
    points.sort_unstable();
    points.dedup();
    let index = |p: &str| points.binary_search(&p).ok();
    let gens = generators
        .iter()
        .map(|g| {
            let idx = g
                .iter()
                .map(|p| {
                    index(p.as_ref()).ok_or_else(|| Error::InvalidGenerator {
                        point: p.as_ref().to_string(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Element::from_indices(points.len(), idx))
        })
        .collect::<Result<Vec<_>>>()?;
    let labels = refine(points.len(), &gens);
    let block_count = labels.iter().max().map_or(0, |m| m + 1);
    let mut blocks: Vec<Vec<&str>> = vec![Vec::new(); block_count];
    for (p, &l) in points.iter().zip(&labels) {
        blocks[l].push(p);
    }
    let names: Vec<String> = blocks.iter().map(|b| b.join("+")).collect();
    let block_of = points
        .iter()
        .zip(&labels)
        .map(|(p, &l)| (p.to_string(), names[l].clone()))
        .collect();
    Ok(Generated {
        algebra: FinBool::from_names(names)?,
        block_of,
    })
}

/// A Boolean homomorphism `source → target`, stored as its dual point map
/// `atoms(target) → atoms(source)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoolHom {
    source: FinBool,
    target: FinBool,
    dual: Vec<usize>,
}

impl BoolHom {
    pub fn from_dual(source: FinBool, target: FinBool, dual: Vec<usize>) -> Result<Self> {
        if dual.len() != target.atom_count() {
            return Err(Error::NotAHomomorphism {
                reason: format!(
                    "dual map has {} entries for {} target atoms",
                    dual.len(),
                    target.atom_count()
                ),
            });
        }
        if let Some(&bad) = dual.iter().find(|&&s| s >= source.atom_count()) {
            return Err(Error::NotAHomomorphism {
                reason: format!("dual map points at source atom #{bad}, which does not exist"),
            });
        }
        Ok(BoolHom { source, target, dual })
    }

    /// Dual map given by names, `target atom → source atom`.
    pub fn from_named_dual(
        source: FinBool,
        target: FinBool,
        dual: &BTreeMap<String, String>,
    ) -> Result<Self> {
        if dual.len() != target.atom_count() {
            return Err(Error::NotAHomomorphism {
                reason: "dual map must be total on the target atoms".into(),
            });
        }
        let mut indices = vec![0; target.atom_count()];
        for (c, a) in dual {
            indices[target.require_index(c)?] = source.require_index(a)?;
        }
        Self::from_dual(source, target, indices)
    }

    pub fn identity(b: &FinBool) -> Self {
        BoolHom {
            source: b.clone(),
            target: b.clone(),
            dual: (0..b.atom_count()).collect(),
        }
    }

    /// Recovers the homomorphism from the images of the source atoms.
    ///
    /// The images must partition the target's unit: pairwise disjoint and
    /// jointly covering. Then `dual(c)` is the unique atom whose image holds `c`.
    pub fn from_atom_images(source: FinBool, target: FinBool, images: &[Element]) -> Result<Self> {
        if images.len() != source.atom_count() {
            return Err(Error::NotAHomomorphism {
                reason: "one image per source atom is required".into(),
            });
        }
        let mut dual: Vec<Option<usize>> = vec![None; target.atom_count()];
        for (a, img) in images.iter().enumerate() {
            if img.width() != target.atom_count() {
                return Err(Error::NotAHomomorphism {
                    reason: format!("image of `{}` is not a target element", source.atoms[a]),
                });
            }
            for c in img.atoms() {
                if let Some(prev) = dual[c] {
                    return Err(Error::NotAHomomorphism {
                        reason: format!(
                            "images of `{}` and `{}` overlap at `{}`",
                            source.atoms[prev], source.atoms[a], target.atoms[c]
                        ),
                    });
                }
                dual[c] = Some(a);
            }
        }
        let dual = dual
            .into_iter()
            .enumerate()
            .map(|(c, a)| {
                a.ok_or_else(|| Error::NotAHomomorphism {
                    reason: format!("images do not cover `{}`", target.atoms[c]),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BoolHom { source, target, dual })
    }

    pub fn source(&self) -> &FinBool {
        &self.source
    }

    pub fn target(&self) -> &FinBool {
        &self.target
    }

    pub fn dual(&self) -> &[usize] {
        &self.dual
    }

    pub fn dual_named(&self) -> BTreeMap<String, String> {
        self.dual
            .iter()
            .enumerate()
            .map(|(c, &a)| (self.target.atoms[c].clone(), self.source.atoms[a].clone()))
            .collect()
    }

    /// `Φ(E) = { c ∈ atoms(target) : dual(c) ∈ E }`.
    pub fn apply(&self, e: &Element) -> Element {
        Element::from_indices(
            self.target.atom_count(),
            self.dual
                .iter()
                .enumerate()
                .filter(|(_, &a)| e.contains(a))
                .map(|(c, _)| c),
        )
    }

    /// `later ∘ earlier`.
    pub fn compose(later: &BoolHom, earlier: &BoolHom) -> Result<BoolHom> {
        if earlier.target != later.source {
            return Err(Error::CompositionMismatch {
                reason: "earlier.target differs from later.source".into(),
            });
        }
        Ok(BoolHom {
            source: earlier.source.clone(),
            target: later.target.clone(),
            dual: later.dual.iter().map(|&b| earlier.dual[b]).collect(),
        })
    }

    /// Injective element map, read off the dual: the dual is onto.
    pub fn is_mono(&self) -> bool {
        let mut hit = vec![false; self.source.atom_count()];
        for &a in &self.dual {
            hit[a] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Surjective element map, read off the dual: the dual is one-to-one.
    pub fn is_epi(&self) -> bool {
        let mut hit = vec![false; self.source.atom_count()];
        self.dual.iter().all(|&a| !std::mem::replace(&mut hit[a], true))
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    /// Injectivity by enumerating every element (exponential).
    pub fn is_injective_by_enumeration(&self) -> bool {
        let mut images: Vec<Element> = self.source.elements().map(|e| self.apply(&e)).collect();
        let n = images.len();
        images.sort();
        images.dedup();
        images.len() == n
    }

    /// Surjectivity by enumerating every element (exponential).
    pub fn is_surjective_by_enumeration(&self) -> bool {
        let mut images: Vec<Element> = self.source.elements().map(|e| self.apply(&e)).collect();
        images.sort();
        images.dedup();
        images.len() == 1usize << self.target.atom_count()
    }

    pub fn inverse(&self) -> Option<BoolHom> {
        if !self.is_iso() {
            return None;
        }
        let mut dual = vec![0; self.source.atom_count()];
        for (c, &a) in self.dual.iter().enumerate() {
            dual[a] = c;
        }
        Some(BoolHom {
            source: self.target.clone(),
            target: self.source.clone(),
            dual,
        })
    }

    /// All `|atoms(source)|^|atoms(target)|` homomorphisms.
    pub fn enumerate(source: &FinBool, target: &FinBool) -> Vec<BoolHom> {
        enumerate::functions(target.atom_count(), source.atom_count())
            .map(|dual| BoolHom {
                source: source.clone(),
                target: target.clone(),
                dual,
            })
            .collect()
    }
}

/// An ideal of a finite algebra: every element below `null`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolIdeal {
    parent: FinBool,
    null: Element,
}

impl BoolIdeal {
    pub fn new(parent: FinBool, null: Element) -> Self {
        assert_eq!(null.width(), parent.atom_count(), "null set belongs to another algebra");
        BoolIdeal { parent, null }
    }

    pub fn trivial(parent: &FinBool) -> Self {
        BoolIdeal::new(parent.clone(), parent.zero())
    }

    pub fn parent(&self) -> &FinBool {
        &self.parent
    }

    pub fn null_atoms(&self) -> &Element {
        &self.null
    }

    pub fn contains(&self, e: &Element) -> bool {
        e.is_below(&self.null)
    }
}

/// `B / I` and the quotient map `B → B / I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub algebra: FinBool,
    pub map: BoolHom,
}

impl Quotient {
    pub fn is_degenerate(&self) -> bool {
        self.algebra.is_degenerate()
    }
}

/// Drops the null atoms; the quotient map's dual is the inclusion of the
/// surviving atoms. Killing every atom yields the degenerate algebra.
pub fn quotient(b: &FinBool, ideal: &BoolIdeal) -> Result<Quotient> {
    if ideal.parent() != b {
        return Err(Error::CompositionMismatch {
            reason: "ideal belongs to a different algebra".into(),
        });
    }
    let survivors: Vec<usize> = (0..b.atom_count()).filter(|&a| !ideal.null.contains(a)).collect();
    let algebra = FinBool {
        atoms: survivors.iter().map(|&a| b.atoms[a].clone()).collect(),
    };
    Ok(Quotient {
        map: BoolHom {
            source: b.clone(),
            target: algebra.clone(),
            dual: survivors,
        },
        algebra,
    })
}

/// Coproduct with its injections and the coordinates of every atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coproduct {
    pub algebra: FinBool,
    pub injections: Vec<BoolHom>,
    /// For each atom of `algebra`, the factor atoms it is the tuple of.
    pub coords: Vec<Vec<usize>>,
}

/// Coproduct of finitely many algebras: atoms are tuples of factor atoms and
/// injection `i` has the `i`-th coordinate projection as its dual. A
/// degenerate factor makes the whole coproduct degenerate.
pub fn coproduct(factors: &[FinBool]) -> Coproduct {
    let radices: Vec<usize> = factors.iter().map(FinBool::atom_count).collect();
    let total: usize = radices.iter().product();
    let mut named: Vec<(String, Vec<usize>)> = (0..total)
        .map(|flat| {
            let coords = enumerate::unflatten(flat, &radices);
            let parts: Vec<&str> = coords
                .iter()
                .zip(factors)
                .map(|(&c, f)| f.atoms[c].as_str())
                .collect();
            (ident::tuple_name(&parts), coords)
        })
        .collect();
    named.sort();
    let (atoms, coords): (Vec<String>, Vec<Vec<usize>>) = named.into_iter().unzip();
    let algebra = FinBool { atoms };
    let injections = factors
        .iter()
        .enumerate()
        .map(|(i, f)| BoolHom {
            source: f.clone(),
            target: algebra.clone(),
            dual: coords.iter().map(|c| c[i]).collect(),
        })
        .collect();
    Coproduct {
        algebra,
        injections,
        coords,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(names: &[&str]) -> FinBool {
        FinBool::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn canonical_order_and_duplicates() {
        let b = alg(&["c", "a", "b"]);
        assert_eq!(b.atoms(), ["a", "b", "c"]);
        assert!(FinBool::new(["a", "a"]).is_err());
        assert!(FinBool::new(["a)"]).is_err());
        assert!(FinBool::degenerate().is_degenerate());
    }

    #[test]
    fn boolean_laws_hold_on_elements() {
        let b = alg(&["a", "b", "c"]);
        let elems: Vec<Element> = b.elements().collect();
        for x in &elems {
            assert_eq!(x.join(&x.complement()), b.one());
            assert_eq!(x.meet(&x.complement()), b.zero());
            for y in &elems {
                assert_eq!(x.meet(y).complement(), x.complement().join(&y.complement()));
                for z in &elems {
                    assert_eq!(x.meet(&y.join(z)), x.meet(y).join(&x.meet(z)));
                }
            }
        }
    }

    #[test]
    fn generators_refine() {
        let g = from_generators(&["1", "2", "3", "4"], &[vec!["1", "2"], vec!["3"]]).unwrap();
        assert_eq!(g.algebra.atoms(), ["1+2", "3", "4"]);
        assert_eq!(g.block_of["2"], "1+2");

        let g = from_generators(&["1", "2", "3"], &[vec!["1", "2"], vec!["2", "3"]]).unwrap();
        assert_eq!(g.algebra.atoms(), ["1", "2", "3"]);

        let g = from_generators::<&str>(&["1"], &[]).unwrap();
        assert_eq!(g.algebra.atoms(), ["1"]);

        let err = from_generators(&["1", "2"], &[vec!["5"]]).unwrap_err();
        assert_eq!(err.name(), "InvalidGenerator");
    }

    /// Brute-force refinement: atoms are the minimal nonempty sets among all
    /// intersections of generators and complements.
    #[test]
    fn generators_match_brute_force_refinement() {
        let n = 3;
        let gens = [Element::from_indices(n, [0, 1]), Element::from_indices(n, [1, 2])];
        let mut cells = Vec::new();
        for choice in enumerate::subsets(gens.len()) {
            let mut cell = Element::full(n);
            for (g, take) in gens.iter().zip(choice) {
                cell = cell.meet(&if take { g.clone() } else { g.complement() });
            }
            if !cell.is_zero() {
                cells.push(cell);
            }
        }
        assert_eq!(cells.len(), 3);
        assert!(cells.iter().all(|c| c.count() == 1));
        let labels = refine(n, &gens);
        let mut distinct = labels.clone();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), cells.len());
    }

    #[test]
    fn atom_images_recover_dual() {
        let s = alg(&["a", "b"]);
        let t = alg(&["x", "y", "z"]);
        let h = BoolHom::from_atom_images(
            s.clone(),
            t.clone(),
            &[t.element(&["x", "y"]).unwrap(), t.element(&["z"]).unwrap()],
        )
        .unwrap();
        assert_eq!(h.dual(), [0, 0, 1]);
        // the images partition 1, checked by enumeration
        assert_eq!(h.apply(&s.one()), t.one());
        assert_eq!(h.apply(&s.zero()), t.zero());

        let err = BoolHom::from_atom_images(
            s.clone(),
            t.clone(),
            &[t.element(&["x"]).unwrap(), t.element(&["x", "y", "z"]).unwrap()],
        )
        .unwrap_err();
        assert_eq!(err.name(), "NotAHomomorphism");
        let err = BoolHom::from_atom_images(
            s,
            t.clone(),
            &[t.element(&["x"]).unwrap(), t.element(&["y"]).unwrap()],
        )
        .unwrap_err();
        assert_eq!(err.name(), "NotAHomomorphism");
    }

    #[test]
    fn homs_preserve_operations() {
        let s = alg(&["a", "b", "c"]);
        let t = alg(&["x", "y"]);
        for h in BoolHom::enumerate(&s, &t) {
            for x in s.elements() {
                assert_eq!(h.apply(&x.complement()), h.apply(&x).complement());
                for y in s.elements() {
                    assert_eq!(h.apply(&x.join(&y)), h.apply(&x).join(&h.apply(&y)));
                    assert_eq!(h.apply(&x.meet(&y)), h.apply(&x).meet(&h.apply(&y)));
                }
            }
        }
    }

    #[test]
    fn composition_matches_element_maps() {
        let a = alg(&["a", "b"]);
        let b = alg(&["p", "q", "r"]);
        let c = alg(&["x", "y"]);
        for f in BoolHom::enumerate(&a, &b) {
            for g in BoolHom::enumerate(&b, &c) {
                let gf = BoolHom::compose(&g, &f).unwrap();
                for e in a.elements() {
                    assert_eq!(gf.apply(&e), g.apply(&f.apply(&e)));
                }
            }
        }
        let id = BoolHom::identity(&b);
        let f = &BoolHom::enumerate(&a, &b)[3];
        assert_eq!(&BoolHom::compose(&id, f).unwrap(), f);
        let err = BoolHom::compose(f, f).unwrap_err();
        assert_eq!(err.name(), "CompositionMismatch");
    }

    #[test]
    fn constant_duals_compose_to_constant() {
        let a = alg(&["a", "b"]);
        let b = alg(&["p", "q"]);
        let c = alg(&["x", "y", "z"]);
        let f = BoolHom::from_dual(a.clone(), b.clone(), vec![1, 1]).unwrap();
        let g = BoolHom::from_dual(b, c, vec![0, 0, 0]).unwrap();
        assert_eq!(BoolHom::compose(&g, &f).unwrap().dual(), [1, 1, 1]);
    }

    #[test]
    fn mono_epi_structural_vs_enumeration() {
        let id = BoolHom::identity(&alg(&["a", "b"]));
        assert!(id.is_mono() && id.is_epi());

        let s = alg(&["a", "b"]);
        let t = alg(&["w", "x", "y", "z"]);
        let constant = BoolHom::from_dual(s.clone(), t.clone(), vec![0; 4]).unwrap();
        assert!(!constant.is_mono());
        assert!(!constant.is_epi());
        assert!(constant.apply(&s.element(&["b"]).unwrap()).is_zero());

        for n in 1..=3 {
            for m in 1..=3 {
                let s = FinBool::new((0..n).map(|i| format!("s{i}"))).unwrap();
                let t = FinBool::new((0..m).map(|i| format!("t{i}"))).unwrap();
                for h in BoolHom::enumerate(&s, &t) {
                    assert_eq!(h.is_mono(), h.is_injective_by_enumeration());
                    assert_eq!(h.is_epi(), h.is_surjective_by_enumeration());
                    if h.is_iso() {
                        let inv = h.inverse().unwrap();
                        assert_eq!(BoolHom::compose(&inv, &h).unwrap(), BoolHom::identity(&s));
                        assert_eq!(BoolHom::compose(&h, &inv).unwrap(), BoolHom::identity(&t));
                    } else {
                        assert!(h.inverse().is_none());
                    }
                }
            }
        }
    }

    #[test]
    fn coproduct_shapes() {
        let two = alg(&["a", "b"]);
        let three = alg(&["x", "y", "z"]);
        let c = coproduct(&[two.clone(), three.clone()]);
        assert_eq!(c.algebra.atom_count(), 6);
        assert!(c.injections.iter().all(BoolHom::is_mono));
        assert_eq!(c.algebra.atoms()[0], "a|x");

        let unit = coproduct(&[two.clone(), FinBool::point()]);
        assert!(unit.algebra.isomorphism(&two).is_some());

        let degenerate = coproduct(&[two, FinBool::degenerate()]);
        assert!(degenerate.algebra.is_degenerate());
    }

    #[test]
    fn quotient_drops_null_atoms() {
        let b = alg(&["a", "b", "c"]);
        let q = quotient(&b, &BoolIdeal::trivial(&b)).unwrap();
        assert_eq!(q.algebra, b);
        assert_eq!(q.map, BoolHom::identity(&b));

        let ideal = BoolIdeal::new(b.clone(), b.element(&["c"]).unwrap());
        let q = quotient(&b, &ideal).unwrap();
        assert_eq!(q.algebra.atoms(), ["a", "b"]);
        assert!(q.map.is_epi());
        for e in b.elements() {
            assert_eq!(q.map.apply(&e).is_zero(), ideal.contains(&e));
        }

        let all = BoolIdeal::new(b.clone(), b.one());
        assert!(quotient(&b, &all).unwrap().is_degenerate());
    }

    #[test]
    fn ideal_is_downward_and_join_closed() {
        let b = alg(&["a", "b", "c", "d"]);
        let ideal = BoolIdeal::new(b.clone(), b.element(&["a", "c"]).unwrap());
        let members: Vec<Element> = b.elements().filter(|e| ideal.contains(e)).collect();
        assert_eq!(members.len(), 4);
        for x in &members {
            for y in &members {
                assert!(ideal.contains(&x.join(y)));
            }
            for y in b.elements() {
                assert!(ideal.contains(&x.meet(&y)));
            }
        }
    }

    #[test]
    fn quotient_section_is_identity_on_quotient() {
        let b = alg(&["a", "b", "c", "d"]);
        let ideal = BoolIdeal::new(b.clone(), b.element(&["b", "d"]).unwrap());
        let q = quotient(&b, &ideal).unwrap();
        for e in q.algebra.elements() {
            // any preimage: here the one that additionally contains all nulls
            let pre = Element::from_indices(b.atom_count(), e.atoms().map(|i| q.map.dual()[i]))
                .join(ideal.null_atoms());
            assert_eq!(q.map.apply(&pre), e);
        }
    }
}
