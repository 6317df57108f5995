//! Least factoring subobjects, subobject diagrams, and split intersection
//! squares.
//!
//! The module covers three constructions on top of the category instances
//! and the functor engine:
//!
//! * [`least_fp_subobject`]: the smallest subobject of a carrier through
//!   which a given element of a functor value factors, computed either by
//!   grade descent (sound when the functor preserves intersection squares)
//!   or by a brute-force subset scan.
//! * [`canonical_subobject_diagram`]: the directed diagram of all subobjects
//!   of an object, with fill-in monomorphisms, together with a literal check
//!   of the colimit universal property of the inclusion cocone.
//! * [`IntersectionSquare`] and [`compute_splittings`]: pullback squares of
//!   two subobjects equipped with retractions that make the square absolute,
//!   verified by [`verify_absolute_pullback`] against engine functors and
//!   hom functors.

use std::fmt;

use thiserror::Error;

use crate::cat::{
    classify_morphism, pullback_of_monos, CatError, CatId, CatMorphism, CatObject,
};
use crate::finset::{FinMap, FinSetError};
use crate::functor::FunctorError;
use crate::gf::{extend_basis, GfMatrix};
use crate::label::Label;

mod absolute;
mod diagram;
mod least;

pub use absolute::{verify_absolute_pullback, AbsolutePullbackReport, SquareFunctor};
pub use diagram::{canonical_subobject_diagram, verify_colimit_property, ColimitReport, SubobjectDiagram};
pub use least::{least_fp_subobject, LeastFactorQuery, LeastFactorResult, SearchMode};

/// Errors from the subobject and splitting machinery.
#[derive(Debug, Error)]
pub enum AdjointError {
    /// Grade descent was requested for a functor that does not preserve
    /// some intersection square at the relevant sizes.
    #[error("grade descent is not sound here: {0}; use brute-force mode instead")]
    ModeNotSound(String),
    /// No subobject is below every subobject admitting the element.
    #[error("no least factoring subobject: {{{}}} and {{{}}} both admit the element and neither contains the other", display_labels(.first), display_labels(.second))]
    NoLeastSubobject { first: Vec<Label>, second: Vec<Label> },
    /// The square has no splitting in the supported regimes.
    #[error("no splitting: {0}")]
    NoSplitting(String),
    /// An operation was invoked outside its stated precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A verified invariant of the descent or splitting construction broke;
    /// this contradicts the supporting theory and is fatal in tests.
    #[error("invariant broke: {0}")]
    InvariantBroken(String),
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error(transparent)]
    FinSet(#[from] FinSetError),
}

fn display_labels(labels: &[Label]) -> String {
    labels
        .iter()
        .map(Label::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// A pullback square of two subobjects of a shared ambient object:
///
/// ```text
///        i
///   C ------> B
///   |         |
/// i'|         | m
///   v         v
///   B' -----> A
///        m'
/// ```
///
/// `m` and `m'` are monomorphisms and `C` with `i`, `i'` is their pullback.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionSquare {
    first: CatMorphism,
    second: CatMorphism,
    apex: CatObject,
    into_first: CatMorphism,
    into_second: CatMorphism,
}

impl IntersectionSquare {
    /// Builds the square over two monomorphisms with a common target by
    /// computing their pullback.
    pub fn from_monos(
        first: CatMorphism,
        second: CatMorphism,
    ) -> Result<IntersectionSquare, AdjointError> {
        let pullback = pullback_of_monos(&first, &second)?;
        Ok(IntersectionSquare {
            first,
            second,
            apex: pullback.apex,
            into_first: pullback.to_first,
            into_second: pullback.to_second,
        })
    }

    /// The ambient object `A`.
    pub fn ambient(&self) -> &CatObject {
        self.first.dst()
    }

    /// The first mono `m: B -> A`.
    pub fn first(&self) -> &CatMorphism {
        &self.first
    }

    /// The second mono `m': B' -> A`.
    pub fn second(&self) -> &CatMorphism {
        &self.second
    }

    /// The pullback apex `C`.
    pub fn apex(&self) -> &CatObject {
        &self.apex
    }

    /// The projection `i: C -> B`.
    pub fn into_first(&self) -> &CatMorphism {
        &self.into_first
    }

    /// The projection `i': C -> B'`.
    pub fn into_second(&self) -> &CatMorphism {
        &self.into_second
    }

    /// Whether the square commutes; true by construction, exposed so tests
    /// can assert it independently.
    pub fn commutes(&self) -> bool {
        let via_first = self.first.compose(&self.into_first);
        let via_second = self.second.compose(&self.into_second);
        matches!((via_first, via_second), (Ok(a), Ok(b)) if a == b)
    }
}

impl fmt::Display for IntersectionSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "intersection square over {} with subobjects of sizes {} and {}, apex size {}",
            self.ambient().carrier(),
            self.first.src().carrier().len(),
            self.second.src().carrier().len(),
            self.apex.carrier().len()
        )
    }
}

/// Retractions splitting an intersection square: `e: A -> B` and
/// `e': B' -> C` with `e . m = id_B`, `e' . i' = id_C`, and `e . m' = i . e'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingPair {
    onto_first: CatMorphism,
    onto_second: CatMorphism,
}

impl SplittingPair {
    /// The retraction `e: A -> B`.
    pub fn onto_first(&self) -> &CatMorphism {
        &self.onto_first
    }

    /// The retraction `e': B' -> C`.
    pub fn onto_second(&self) -> &CatMorphism {
        &self.onto_second
    }

    /// Checks the three splitting equations against a square.
    pub fn verify(&self, sq: &IntersectionSquare) -> Result<(), AdjointError> {
        let e = &self.onto_first;
        let e2 = &self.onto_second;
        if !e.compose(sq.first())?.is_identity() {
            return Err(AdjointError::InvariantBroken(
                "e . m is not the identity on the first subobject".into(),
            ));
        }
        if !e2.compose(sq.into_second())?.is_identity() {
            return Err(AdjointError::InvariantBroken(
                "e' . i' is not the identity on the apex".into(),
            ));
        }
        if e.compose(sq.second())? != sq.into_first().compose(e2)? {
            return Err(AdjointError::InvariantBroken(
                "e . m' and i . e' disagree".into(),
            ));
        }
        Ok(())
    }
}

/// Builds the splitting retractions of an intersection square.
///
/// Supported regimes, each with a deterministic canonical choice:
///
/// * pointed sets: elements outside a subobject retract to the base point;
/// * plain sets with nonempty apex: elements outside retract to the image
///   of the least apex element in canonical order;
/// * linear spaces: complements are chosen by Gaussian basis extension in
///   canonical coordinate order, and the retractions are the corresponding
///   block projections.
///
/// The plain-set construction needs a point of the intersection to absorb
/// the elements outside the subobjects, so a square with empty apex over a
/// nonempty ambient object is reported as [`AdjointError::NoSplitting`].
/// That regime is exactly where almost-constant functors break the square.
pub fn compute_splittings(sq: &IntersectionSquare) -> Result<SplittingPair, AdjointError> {
    match sq.ambient().cat() {
        CatId::SetP => split_tables(sq, PointFallback::BasePoint),
        CatId::Set => {
            if sq.apex().carrier().is_empty() && !sq.ambient().carrier().is_empty() {
                return Err(AdjointError::NoSplitting(
                    "the intersection is empty while the ambient object is not, and the retraction construction needs an intersection point to absorb outside elements".into(),
                ));
            }
            split_tables(sq, PointFallback::LeastApexElement)
        }
        CatId::VecGf { .. } => split_linear(sq),
        other => Err(AdjointError::Precondition(format!(
            "splittings are constructed for pointed sets, plain sets, and linear spaces, not {}",
            other.short_name()
        ))),
    }
}

enum PointFallback {
    BasePoint,
    LeastApexElement,
}

fn split_tables(
    sq: &IntersectionSquare,
    fallback: PointFallback,
) -> Result<SplittingPair, AdjointError> {
    let ambient = sq.ambient();
    let b = sq.first().src();
    let b2 = sq.second().src();
    let c = sq.apex();
    let m = sq.first().underlying();
    let m2 = sq.second().underlying();
    let i = sq.into_first().underlying();
    let i2 = sq.into_second().underlying();

    // Fallback targets. An empty plain-set square (everything empty) never
    // consults them, hence the lazy error below.
    let fallback_b: Option<usize> = match fallback {
        PointFallback::BasePoint => b.base_index(),
        PointFallback::LeastApexElement => {
            if c.carrier().is_empty() {
                None
            } else {
                Some(i.apply_idx(0))
            }
        }
    };
    let fallback_c: Option<usize> = match fallback {
        PointFallback::BasePoint => c.base_index(),
        PointFallback::LeastApexElement => {
            if c.carrier().is_empty() {
                None
            } else {
                Some(0)
            }
        }
    };
    let need = |slot: Option<usize>| {
        slot.ok_or_else(|| {
            AdjointError::InvariantBroken("missing retraction target".into())
        })
    };

    let mut e_table = Vec::with_capacity(ambient.carrier().len());
    for a_idx in 0..ambient.carrier().len() {
        let preimage = (0..b.carrier().len()).find(|&j| m.apply_idx(j) == a_idx);
        e_table.push(match preimage {
            Some(j) => j,
            None => need(fallback_b)?,
        });
    }
    let mut e2_table = Vec::with_capacity(b2.carrier().len());
    for b2_idx in 0..b2.carrier().len() {
        let preimage = (0..c.carrier().len()).find(|&j| i2.apply_idx(j) == b2_idx);
        e2_table.push(match preimage {
            Some(j) => j,
            None => need(fallback_c)?,
        });
    }
    let _ = m2;

    let onto_first = CatMorphism::from_map(
        ambient,
        b,
        FinMap::new(ambient.carrier().clone(), b.carrier().clone(), e_table)?,
    )?;
    let onto_second = CatMorphism::from_map(
        b2,
        c,
        FinMap::new(b2.carrier().clone(), c.carrier().clone(), e2_table)?,
    )?;
    let pair = SplittingPair {
        onto_first,
        onto_second,
    };
    pair.verify(sq)?;
    Ok(pair)
}

fn invert(p: &GfMatrix) -> Option<GfMatrix> {
    let n = p.rows();
    let field = p.field();
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let mut unit = vec![0u64; n];
        unit[k] = 1;
        cols.push(p.solve(&unit)?);
    }
    Some(GfMatrix::from_columns(field, n, &cols))
}

fn split_linear(sq: &IntersectionSquare) -> Result<SplittingPair, AdjointError> {
    let ambient = sq.ambient();
    let field = match ambient.cat() {
        CatId::VecGf { p } => crate::gf::Gf::new(*p),
        _ => unreachable!("split_linear is only called on linear squares"),
    };
    let broke =
        |what: &str| AdjointError::InvariantBroken(format!("linear splitting failed: {what}"));
    let m = sq.first().matrix().ok_or_else(|| broke("missing matrix"))?;
    let m2 = sq.second().matrix().ok_or_else(|| broke("missing matrix"))?;
    let i = sq.into_first().matrix().ok_or_else(|| broke("missing matrix"))?;
    let dim_a = m.rows();
    let dim_b = m.cols();
    let dim_c = i.cols();

    // Assemble a basis of the ambient space adapted to the square: first a
    // basis of the apex image, extended inside the first subobject's image,
    // then inside the second's, then arbitrarily.
    let c_cols = m.mul(i).columns();
    let b0_cols = extend_basis(field, dim_a, &c_cols, &m.columns());
    let mut span = c_cols.clone();
    span.extend(b0_cols.iter().cloned());
    let b0p_cols = extend_basis(field, dim_a, &span, &m2.columns());
    span.extend(b0p_cols.iter().cloned());
    let a0_cols = extend_basis(field, dim_a, &span, &GfMatrix::identity(field, dim_a).columns());
    span.extend(a0_cols.iter().cloned());
    if span.len() != dim_a {
        return Err(broke("adapted basis does not span the ambient space"));
    }
    let p = GfMatrix::from_columns(field, dim_a, &span);
    let p_inv = invert(&p).ok_or_else(|| broke("adapted basis is singular"))?;

    // e: A -> B sends the apex block through i, the first complement block
    // through its preimage under m, and the remaining blocks to zero.
    let mut e_cols_in_b: Vec<Vec<u64>> = Vec::with_capacity(dim_a);
    for col in i.columns() {
        e_cols_in_b.push(col);
    }
    for col in &b0_cols {
        e_cols_in_b.push(m.solve(col).ok_or_else(|| broke("complement outside the subobject"))?);
    }
    for _ in 0..(b0p_cols.len() + a0_cols.len()) {
        e_cols_in_b.push(vec![0u64; dim_b]);
    }
    let e_matrix = GfMatrix::from_columns(field, dim_b, &e_cols_in_b).mul(&p_inv);

    // e': B' -> C reads off the apex coordinates of a vector of the second
    // subobject, embedded in the ambient space.
    let coords = p_inv.mul(m2);
    let e2_cols: Vec<Vec<u64>> = coords
        .columns()
        .into_iter()
        .map(|col| col[..dim_c].to_vec())
        .collect();
    let e2_matrix = GfMatrix::from_columns(field, dim_c, &e2_cols);

    let pair = SplittingPair {
        onto_first: CatMorphism::from_matrix(ambient, sq.first().src(), e_matrix)?,
        onto_second: CatMorphism::from_matrix(sq.second().src(), sq.apex(), e2_matrix)?,
    };
    pair.verify(sq)?;
    Ok(pair)
}

/// Convenience constructor: the intersection square of two subobject monos
/// listed by `cat::subobjects`, checked to be monos.
pub fn square_of_subobjects(
    first: &CatMorphism,
    second: &CatMorphism,
) -> Result<IntersectionSquare, AdjointError> {
    if !classify_morphism(first).mono || !classify_morphism(second).mono {
        return Err(AdjointError::Precondition(
            "intersection squares are built from monomorphisms".into(),
        ));
    }
    IntersectionSquare::from_monos(first.clone(), second.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::subobjects;
    use crate::finset::FinSet;

    fn set_square(ambient: usize, first: &[usize], second: &[usize]) -> IntersectionSquare {
        let a = CatObject::set(FinSet::indexed("a", ambient));
        let pick = |keep: &[usize]| {
            let sub = a
                .carrier()
                .filter(|l| keep.iter().any(|&k| a.carrier().label(k) == l));
            let incl = sub.inclusion_into(a.carrier()).unwrap();
            let src = CatObject::set(sub);
            CatMorphism::from_map(&src, &a, incl).unwrap()
        };
        IntersectionSquare::from_monos(pick(first), pick(second)).unwrap()
    }

    #[test]
    fn set_square_splits_when_the_apex_is_nonempty() {
        let sq = set_square(4, &[0, 1, 2], &[1, 2, 3]);
        assert!(sq.commutes());
        let pair = compute_splittings(&sq).unwrap();
        pair.verify(&sq).unwrap();
        // Outside elements retract to the image of the least apex element.
        let e = pair.onto_first().underlying();
        assert_eq!(e.apply_idx(3), 1);
    }

    #[test]
    fn set_square_with_empty_apex_has_no_splitting() {
        let sq = set_square(3, &[0], &[2]);
        assert!(matches!(
            compute_splittings(&sq),
            Err(AdjointError::NoSplitting(_))
        ));
    }

    #[test]
    fn empty_subobjects_of_a_nonempty_ambient_do_not_split() {
        // No retraction from the two-point ambient onto the empty subobject
        // can exist.
        let sq = set_square(2, &[], &[]);
        assert!(matches!(
            compute_splittings(&sq),
            Err(AdjointError::NoSplitting(_))
        ));
    }

    #[test]
    fn the_square_on_the_empty_ambient_splits_trivially() {
        let sq = set_square(0, &[], &[]);
        let pair = compute_splittings(&sq).unwrap();
        pair.verify(&sq).unwrap();
    }

    #[test]
    fn pointed_square_retracts_outside_elements_to_the_base_point() {
        // Ambient {c, x, y} pointed at c; subobjects {c, x} and {c, y}
        // intersect in {c}.
        let a =
            CatObject::pointed(FinSet::atoms(["c", "x", "y"]).unwrap(), &Label::atom("c")).unwrap();
        let monos = subobjects(&a).unwrap();
        let pick = |labels: &[&str]| {
            monos
                .iter()
                .find(|m| {
                    let names: Vec<String> =
                        m.src().carrier().iter().map(|l| l.to_string()).collect();
                    names == labels
                })
                .cloned()
                .unwrap()
        };
        let sq =
            IntersectionSquare::from_monos(pick(&["c", "x"]), pick(&["c", "y"])).unwrap();
        let pair = compute_splittings(&sq).unwrap();
        pair.verify(&sq).unwrap();
        let e = pair.onto_first().underlying();
        // y retracts to the base point c.
        let y = a.carrier().index_of(&Label::atom("y")).unwrap();
        assert_eq!(
            e.cod().label(e.apply_idx(y)),
            sq.first().src().base_label().unwrap()
        );
    }

    #[test]
    fn linear_square_splits_via_block_projections() {
        // Ambient GF(2)^2, subobjects the two coordinate axes, apex 0.
        let a = CatObject::space(2, 2);
        let axis = |v: Vec<u64>| {
            let src = CatObject::space(2, 1);
            let field = crate::gf::Gf::new(2);
            CatMorphism::from_matrix(&src, &a, GfMatrix::from_columns(field, 2, &[v])).unwrap()
        };
        let sq = IntersectionSquare::from_monos(axis(vec![1, 0]), axis(vec![0, 1])).unwrap();
        let pair = compute_splittings(&sq).unwrap();
        pair.verify(&sq).unwrap();
        // e is the first-coordinate projection and e' the zero map.
        let e = pair.onto_first().matrix().unwrap();
        assert_eq!(e.mul_vec(&[1, 0]), vec![1]);
        assert_eq!(e.mul_vec(&[0, 1]), vec![0]);
        assert_eq!(pair.onto_second().matrix().unwrap().cols(), 1);
    }

    #[test]
    fn linear_splittings_cover_all_subspace_pairs_in_dimension_two() {
        let a = CatObject::space(2, 2);
        let monos = subobjects(&a).unwrap();
        for m1 in &monos {
            for m2 in &monos {
                let sq = IntersectionSquare::from_monos(m1.clone(), m2.clone()).unwrap();
                let pair = compute_splittings(&sq).unwrap();
                pair.verify(&sq).unwrap();
            }
        }
    }

    #[test]
    fn unsupported_instances_are_rejected() {
        let carrier = FinSet::indexed("p", 2);
        let pair = (carrier.label(0).clone(), carrier.label(1).clone());
        let a = CatObject::poset(carrier, &[pair]).unwrap();
        let monos = subobjects(&a).unwrap();
        let sq = IntersectionSquare::from_monos(monos[0].clone(), monos[0].clone()).unwrap();
        assert!(matches!(
            compute_splittings(&sq),
            Err(AdjointError::Precondition(_))
        ));
    }
}
