//! Stone duality for finite algebras, delete spaces and the Loomis–Sikorski
//! representation.
//!
//! A finite Stone space is a finite discrete space: every function is
//! continuous and every subset is clopen, so no topology is stored. The
//! characters of a finite algebra are the principal ultrafilters of its
//! atoms, hence `stone(B)` has the atoms of `B` as points.

use crate::boolalg::{self, BoolHom, BoolIdeal, Element, FinBool, Quotient};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::ident;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StoneSpace {
    points: Vec<String>,
}

impl StoneSpace {
    pub fn new<I, S>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        // Same identifier rules and canonical order as algebra atoms.
        let b = FinBool::new(points)?;
        Ok(StoneSpace {
            points: b.atoms().to_vec(),
        })
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, point: &str) -> Option<usize> {
        self.points.binary_search_by(|p| p.as_str().cmp(point)).ok()
    }
}

/// A (continuous) map between finite Stone spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointMap {
    source: StoneSpace,
    target: StoneSpace,
    map: Vec<usize>,
}

impl PointMap {
    pub fn new(source: StoneSpace, target: StoneSpace, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() || map.iter().any(|&t| t >= target.len()) {
            return Err(Error::CompositionMismatch {
                reason: "point map is not a total function between the spaces".into(),
            });
        }
        Ok(PointMap { source, target, map })
    }

    pub fn identity(s: &StoneSpace) -> Self {
        PointMap {
            source: s.clone(),
            target: s.clone(),
            map: (0..s.len()).collect(),
        }
    }

    pub fn source(&self) -> &StoneSpace {
        &self.source
    }

    pub fn target(&self) -> &StoneSpace {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `later ∘ earlier`.
    pub fn compose(later: &PointMap, earlier: &PointMap) -> Result<PointMap> {
        if earlier.target != later.source {
            return Err(Error::CompositionMismatch {
                reason: "earlier.target differs from later.source".into(),
            });
        }
        Ok(PointMap {
            source: earlier.source.clone(),
            target: later.target.clone(),
            map: earlier.map.iter().map(|&p| later.map[p]).collect(),
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &t in &self.map {
            hit[t] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn enumerate(source: &StoneSpace, target: &StoneSpace) -> Vec<PointMap> {
        enumerate::functions(source.len(), target.len())
            .map(|map| PointMap {
                source: source.clone(),
                target: target.clone(),
                map,
            })
            .collect()
    }
}

/// The space of characters of `b`.
pub fn stone(b: &FinBool) -> StoneSpace {
    StoneSpace {
        points: b.atoms().to_vec(),
    }
}

/// `Stone(Φ)(α) = α ∘ Φ`: for `Φ: B → C`, a map `stone(C) → stone(B)`.
pub fn stone_map(h: &BoolHom) -> PointMap {
    PointMap {
        source: stone(h.target()),
        target: stone(h.source()),
        map: h.dual().to_vec(),
    }
}

/// The algebra of clopen subsets.
pub fn clopen(s: &StoneSpace) -> FinBool {
    FinBool::from_names(s.points.clone()).expect("stone space points are distinct")
}

/// Pullback of clopens along `f: S → T`, a homomorphism `clopen(T) → clopen(S)`.
pub fn clopen_map(f: &PointMap) -> BoolHom {
    BoolHom::from_dual(clopen(&f.target), clopen(&f.source), f.map.clone())
        .expect("point maps are total")
}

/// A finite space with a null ideal (all subsets of `null`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeleteSpace {
    space: StoneSpace,
    null: Element,
}

impl DeleteSpace {
    pub fn new(space: StoneSpace, null: Element) -> Self {
        assert_eq!(null.width(), space.len(), "null set belongs to another space");
        DeleteSpace { space, null }
    }

    pub fn from_names<S: AsRef<str>>(space: StoneSpace, null: &[S]) -> Result<Self> {
        let idx = null
            .iter()
            .map(|p| {
                space.index_of(p.as_ref()).ok_or_else(|| Error::UnknownAtom {
                    atom: p.as_ref().to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let null = Element::from_indices(space.len(), idx);
        Ok(DeleteSpace { space, null })
    }

    pub fn space(&self) -> &StoneSpace {
        &self.space
    }

    pub fn null(&self) -> &Element {
        &self.null
    }

    pub fn null_names(&self) -> Vec<String> {
        self.null.atoms().map(|i| self.space.points[i].clone()).collect()
    }

    pub fn is_null(&self, subset: &Element) -> bool {
        subset.is_below(&self.null)
    }
}

/// A map of delete spaces: preimages of null sets are null.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeleteMap {
    source: DeleteSpace,
    target: DeleteSpace,
    map: Vec<usize>,
}

impl DeleteMap {
    /// Checked eagerly: every point sent to a null point must itself be null.
    pub fn new(source: DeleteSpace, target: DeleteSpace, map: Vec<usize>) -> Result<Self> {
        PointMap::new(source.space.clone(), target.space.clone(), map.clone())?;
        for (p, &t) in map.iter().enumerate() {
            if target.null.contains(t) && !source.null.contains(p) {
                return Err(Error::NullsNotPreserved {
                    point: source.space.points[p].clone(),
                });
            }
        }
        Ok(DeleteMap { source, target, map })
    }

    pub fn source(&self) -> &DeleteSpace {
        &self.source
    }

    pub fn target(&self) -> &DeleteSpace {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn point_map(&self) -> PointMap {
        PointMap {
            source: self.source.space.clone(),
            target: self.target.space.clone(),
            map: self.map.clone(),
        }
    }
}

/// Λ(B): the Stone space of `B` with its Baire-meager ideal.
///
/// A nonempty open subset of a compact Hausdorff space is never meager (Baire
/// category theorem) and every subset of a finite discrete space is open, so
/// the only meager set is ∅.
pub fn loomis(b: &FinBool) -> DeleteSpace {
    let space = stone(b);
    let null = Element::empty(space.len());
    DeleteSpace { space, null }
}

/// Λ on morphisms: for `Φ: B → C`, the map `Λ(C) → Λ(B)`.
pub fn loomis_map(h: &BoolHom) -> DeleteMap {
    DeleteMap::new(loomis(h.target()), loomis(h.source()), h.dual().to_vec())
        .expect("no null points to preserve")
}

/// ⊖(D) = clopen(D) / null ideal, with the quotient map.
pub fn delete_quotient(d: &DeleteSpace) -> Quotient {
    let algebra = clopen(&d.space);
    let ideal = BoolIdeal::new(algebra.clone(), d.null.clone());
    boolalg::quotient(&algebra, &ideal).expect("ideal lives on the clopen algebra")
}

/// ⊖ on morphisms: a delete map `f: D → E` induces `⊖(E) → ⊖(D)`.
pub fn delete_quotient_map(f: &DeleteMap) -> BoolHom {
    let qs = delete_quotient(&f.source);
    let qt = delete_quotient(&f.target);
    // A surviving source point lands on a surviving target point.
    let dual = qs
        .map
        .dual()
        .iter()
        .map(|&p| {
            let t = f.map[p];
            qt.map
                .dual()
                .iter()
                .position(|&s| s == t)
                .expect("non-null points map to non-null points")
        })
        .collect();
    BoolHom::from_dual(qt.algebra, qs.algebra, dual).expect("indices in range")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeleteProduct {
    pub space: DeleteSpace,
    pub projections: Vec<DeleteMap>,
}

/// Product of delete spaces: a tuple is null iff some coordinate is null,
/// i.e. the ideal generated by the pullbacks of the factors' null ideals.
pub fn delete_product(factors: &[DeleteSpace]) -> Result<DeleteProduct> {
    if factors.iter().any(|f| f.space.is_empty()) {
        return Err(Error::DegenerateFactor);
    }
    let radices: Vec<usize> = factors.iter().map(|f| f.space.len()).collect();
    let total: usize = radices.iter().product();
    let mut named: Vec<(String, Vec<usize>)> = (0..total)
        .map(|flat| {
            let coords = enumerate::unflatten(flat, &radices);
            let parts: Vec<&str> = coords
                .iter()
                .zip(factors)
                .map(|(&c, f)| f.space.points[c].as_str())
                .collect();
            (ident::tuple_name(&parts), coords)
        })
        .collect();
    named.sort();
    let null = Element::from_indices(
        total,
        named
            .iter()
            .enumerate()
            .filter(|(_, (_, coords))| coords.iter().zip(factors).any(|(&c, f)| f.null.contains(c)))
            .map(|(i, _)| i),
    );
    let (points, coords): (Vec<String>, Vec<Vec<usize>>) = named.into_iter().unzip();
    let space = DeleteSpace {
        space: StoneSpace { points },
        null,
    };
    let projections = factors
        .iter()
        .enumerate()
        .map(|(i, f)| DeleteMap::new(space.clone(), f.clone(), coords.iter().map(|c| c[i]).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(DeleteProduct { space, projections })
}

/// Product in the category of abstract measurable spaces, read as algebras.
///
/// `projections[i]` is the σ-homomorphism `factors[i] → algebra` dual to the
/// i-th projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsMesProduct {
    pub algebra: FinBool,
    pub projections: Vec<BoolHom>,
}

/// ⊖( ∏ Λ(factor) ) with its projections.
pub fn absmes_product(factors: &[FinBool]) -> Result<AbsMesProduct> {
    if factors.iter().any(FinBool::is_degenerate) {
        return Err(Error::DegenerateFactor);
    }
    let spaces: Vec<DeleteSpace> = factors.iter().map(loomis).collect();
    let product = delete_product(&spaces)?;
    let quotient = delete_quotient(&product.space);
    let projections = product
        .projections
        .iter()
        .map(|p| BoolHom::compose(&quotient.map, &clopen_map(&p.point_map())))
        .collect::<Result<Vec<_>>>()?;
    Ok(AbsMesProduct {
        algebra: quotient.algebra,
        projections,
    })
}
