//! Morphisms of the concrete instances: structure-preserving maps, stored
//! either as a carrier-level table or, for vector spaces, as a matrix.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::finset::FinMap;
use crate::gf::GfMatrix;
use crate::label::Label;

use super::{CatError, CatId, CatObject, Structure};

/// Underlying data of a morphism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MorphismData {
    /// A map of carriers (all instances except `VecGf`).
    Table(FinMap),
    /// A matrix acting on coordinate columns (`VecGf` only).
    Matrix(GfMatrix),
}

/// A morphism between two objects of the same instance.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CatMorphism {
    src: CatObject,
    dst: CatObject,
    data: MorphismData,
}

/// Result of classifying a morphism.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct MorphismFlags {
    pub mono: bool,
    pub strong_epi: bool,
    pub iso: bool,
}

impl CatMorphism {
    /// Builds a morphism from a carrier map, validating that it preserves
    /// the instance structure. For `VecGf` the map must be linear; it is
    /// converted to a matrix internally.
    pub fn from_map(src: &CatObject, dst: &CatObject, map: FinMap) -> Result<Self, CatError> {
        if src.cat() != dst.cat() {
            return Err(CatError::InstanceMismatch(
                src.cat().short_name(),
                dst.cat().short_name(),
            ));
        }
        if map.dom() != src.carrier() || map.cod() != dst.carrier() {
            return Err(CatError::CarrierMismatch(
                "map endpoints do not match the object carriers".into(),
            ));
        }
        if let CatId::VecGf { .. } = src.cat() {
            let matrix = linear_map_to_matrix(src, dst, &map)?;
            return Ok(CatMorphism {
                src: src.clone(),
                dst: dst.clone(),
                data: MorphismData::Matrix(matrix),
            });
        }
        validate_table(src, dst, &map)?;
        Ok(CatMorphism {
            src: src.clone(),
            dst: dst.clone(),
            data: MorphismData::Table(map),
        })
    }

    /// Builds a morphism from label pairs `(x, f(x))`.
    pub fn from_pairs(
        src: &CatObject,
        dst: &CatObject,
        pairs: &[(Label, Label)],
    ) -> Result<Self, CatError> {
        let map = FinMap::from_pairs(src.carrier().clone(), dst.carrier().clone(), pairs)?;
        CatMorphism::from_map(src, dst, map)
    }

    /// Builds a `VecGf` morphism from a matrix with `dst.dim()` rows and
    /// `src.dim()` columns.
    pub fn from_matrix(src: &CatObject, dst: &CatObject, matrix: GfMatrix) -> Result<Self, CatError> {
        let (Some(sd), Some(dd)) = (src.dim(), dst.dim()) else {
            return Err(CatError::Unsupported {
                op: "matrix morphism",
                cat: src.cat().short_name(),
            });
        };
        if src.cat() != dst.cat() {
            return Err(CatError::InstanceMismatch(
                src.cat().short_name(),
                dst.cat().short_name(),
            ));
        }
        if matrix.rows() != dd || matrix.cols() != sd {
            return Err(CatError::CarrierMismatch(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                dd,
                sd
            )));
        }
        if matrix.field() != src.field().expect("vector object has a field") {
            return Err(CatError::CarrierMismatch(
                "matrix field does not match the objects".into(),
            ));
        }
        Ok(CatMorphism {
            src: src.clone(),
            dst: dst.clone(),
            data: MorphismData::Matrix(matrix),
        })
    }

    /// Trusted constructor for internally generated tables that are known to
    /// preserve structure. Debug builds re-validate.
    pub(crate) fn trusted_table(src: &CatObject, dst: &CatObject, map: FinMap) -> Self {
        debug_assert!(validate_table(src, dst, &map).is_ok());
        CatMorphism {
            src: src.clone(),
            dst: dst.clone(),
            data: MorphismData::Table(map),
        }
    }

    pub(crate) fn trusted_matrix(src: &CatObject, dst: &CatObject, matrix: GfMatrix) -> Self {
        debug_assert_eq!(matrix.cols(), src.dim().unwrap());
        debug_assert_eq!(matrix.rows(), dst.dim().unwrap());
        CatMorphism {
            src: src.clone(),
            dst: dst.clone(),
            data: MorphismData::Matrix(matrix),
        }
    }

    pub fn identity(obj: &CatObject) -> Self {
        match obj.cat() {
            CatId::VecGf { .. } => {
                let field = obj.field().unwrap();
                let dim = obj.dim().unwrap();
                CatMorphism::trusted_matrix(obj, obj, GfMatrix::identity(field, dim))
            }
            _ => CatMorphism::trusted_table(obj, obj, FinMap::identity(obj.carrier())),
        }
    }

    pub fn src(&self) -> &CatObject {
        &self.src
    }

    pub fn dst(&self) -> &CatObject {
        &self.dst
    }

    pub fn data(&self) -> &MorphismData {
        &self.data
    }

    pub fn matrix(&self) -> Option<&GfMatrix> {
        match &self.data {
            MorphismData::Matrix(m) => Some(m),
            MorphismData::Table(_) => None,
        }
    }

    /// The action on carriers as a plain map between the carrier sets. For
    /// matrices this evaluates the matrix on every coordinate vector.
    pub fn underlying(&self) -> FinMap {
        match &self.data {
            MorphismData::Table(map) => map.clone(),
            MorphismData::Matrix(m) => {
                let table = self
                    .src
                    .carrier()
                    .iter()
                    .map(|l| {
                        let v = crate::gf::label_to_vector(l).expect("carrier label is a vector");
                        let image = crate::gf::vector_label(&m.mul_vec(&v));
                        self.dst
                            .carrier()
                            .index_of(&image)
                            .expect("matrix image is a coordinate vector")
                    })
                    .collect();
                FinMap::new(self.src.carrier().clone(), self.dst.carrier().clone(), table)
                    .expect("matrix action is a total map of carriers")
            }
        }
    }

    pub fn apply(&self, label: &Label) -> Option<Label> {
        match &self.data {
            MorphismData::Table(map) => {
                let i = self.src.carrier().index_of(label)?;
                Some(map.cod().label(map.apply_idx(i)).clone())
            }
            MorphismData::Matrix(m) => {
                self.src.carrier().index_of(label)?;
                let v = crate::gf::label_to_vector(label)?;
                Some(crate::gf::vector_label(&m.mul_vec(&v)))
            }
        }
    }

    /// `self ∘ other`, requiring `other.dst == self.src`.
    pub fn compose(&self, other: &CatMorphism) -> Result<CatMorphism, CatError> {
        if other.dst != self.src {
            return Err(CatError::CarrierMismatch(
                "composition endpoints do not match".into(),
            ));
        }
        let data = match (&self.data, &other.data) {
            (MorphismData::Table(g), MorphismData::Table(f)) => {
                MorphismData::Table(g.compose(f).expect("endpoints were checked"))
            }
            (MorphismData::Matrix(g), MorphismData::Matrix(f)) => MorphismData::Matrix(g.mul(f)),
            _ => unreachable!("matching instances store matching data"),
        };
        Ok(CatMorphism {
            src: other.src.clone(),
            dst: self.dst.clone(),
            data,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.dst
            && match &self.data {
                MorphismData::Table(m) => m.is_identity(),
                MorphismData::Matrix(m) => *m == GfMatrix::identity(m.field(), m.rows()),
            }
    }
}

/// Converts a carrier-level map between vector spaces to a matrix, failing
/// if the map is not additive (over a prime field additivity implies
/// linearity, since every scalar is a sum of ones).
fn linear_map_to_matrix(
    src: &CatObject,
    dst: &CatObject,
    map: &FinMap,
) -> Result<GfMatrix, CatError> {
    let field = src.field().expect("vector object has a field");
    let n = src.carrier().len();
    let to_vec = |i: usize, obj: &CatObject| {
        crate::gf::label_to_vector(obj.carrier().label(i)).expect("carrier label is a vector")
    };
    let image = |i: usize| to_vec(map.apply_idx(i), dst);
    for i in 0..n {
        for j in 0..n {
            let u = to_vec(i, src);
            let v = to_vec(j, src);
            let sum: Vec<u64> = u.iter().zip(&v).map(|(&a, &b)| field.add(a, b)).collect();
            let sum_idx = src
                .carrier()
                .index_of(&crate::gf::vector_label(&sum))
                .expect("sum of coordinate vectors is a coordinate vector");
            let lhs = image(sum_idx);
            let rhs: Vec<u64> = image(i)
                .iter()
                .zip(&image(j))
                .map(|(&a, &b)| field.add(a, b))
                .collect();
            if lhs != rhs {
                return Err(CatError::NotAMorphism(format!(
                    "map is not additive at {} + {}",
                    src.carrier().label(i),
                    src.carrier().label(j)
                )));
            }
        }
    }
    let dim = src.dim().unwrap();
    let cols: Vec<Vec<u64>> = (0..dim)
        .map(|k| {
            let mut e = vec![0u64; dim];
            e[k] = 1;
            let idx = src
                .carrier()
                .index_of(&crate::gf::vector_label(&e))
                .expect("basis vector is in the carrier");
            image(idx)
        })
        .collect();
    Ok(GfMatrix::from_columns(field, dst.dim().unwrap(), &cols))
}

/// Checks that a carrier map preserves the structure of its instance.
pub(super) fn validate_table(src: &CatObject, dst: &CatObject, map: &FinMap) -> Result<(), CatError> {
    match (src.structure(), dst.structure()) {
        (Structure::Plain, Structure::Plain) => Ok(()),
        (Structure::Pointed { base: b1 }, Structure::Pointed { base: b2 }) => {
            if map.apply_idx(*b1) != *b2 {
                return Err(CatError::NotAMorphism(
                    "map does not preserve the base point".into(),
                ));
            }
            Ok(())
        }
        (Structure::Order { .. }, Structure::Order { .. }) => {
            let n = src.size();
            for i in 0..n {
                for j in 0..n {
                    if src.le(i, j) && !dst.le(map.apply_idx(i), map.apply_idx(j)) {
                        return Err(CatError::NotAMorphism(format!(
                            "map is not monotone at {} <= {}",
                            src.carrier().label(i),
                            src.carrier().label(j)
                        )));
                    }
                }
            }
            Ok(())
        }
        (Structure::PowerSet { .. }, Structure::PowerSet { .. }) => {
            validate_boolean_hom(src, dst, map)
        }
        (Structure::Action { act: a1 }, Structure::Action { act: a2 }) => {
            for (m, row) in a1.iter().enumerate() {
                for (x, &mx) in row.iter().enumerate() {
                    if map.apply_idx(mx) != a2[m][map.apply_idx(x)] {
                        return Err(CatError::NotAMorphism(format!(
                            "map is not equivariant at monoid element {m} on {}",
                            src.carrier().label(x)
                        )));
                    }
                }
            }
            Ok(())
        }
        (Structure::Relations { rels: r1 }, Structure::Relations { rels: r2 }) => {
            for (s, tuples) in r1.iter().enumerate() {
                for t in tuples {
                    let image: Vec<usize> = t.iter().map(|&x| map.apply_idx(x)).collect();
                    if !r2[s].contains(&image) {
                        return Err(CatError::NotAMorphism(format!(
                            "map does not preserve relation symbol {s}"
                        )));
                    }
                }
            }
            Ok(())
        }
        (Structure::Space { .. }, Structure::Space { .. }) => {
            unreachable!("vector maps are validated via linear_map_to_matrix")
        }
        _ => Err(CatError::InstanceMismatch(
            src.cat().short_name(),
            dst.cat().short_name(),
        )),
    }
}

/// Checks that a map of powerset carriers is a homomorphism of Boolean
/// algebras: it must preserve the empty set, the full set, binary unions,
/// and complements (meets then follow by De Morgan).
fn validate_boolean_hom(src: &CatObject, dst: &CatObject, map: &FinMap) -> Result<(), CatError> {
    let src_masks = src.subset_masks().expect("boolean object");
    let dst_masks = dst.subset_masks().expect("boolean object");
    let n_dst_atoms = dst.atoms().unwrap().len();
    let full_dst: u32 = if n_dst_atoms == 32 { u32::MAX } else { (1 << n_dst_atoms) - 1 };
    let f = |mask: u32| -> u32 {
        let i = src_masks.iter().position(|&m| m == mask).expect("mask in carrier");
        dst_masks[map.apply_idx(i)]
    };
    let full_src: u32 = if src.atoms().unwrap().len() == 32 {
        u32::MAX
    } else {
        (1 << src.atoms().unwrap().len()) - 1
    };
    if f(0) != 0 {
        return Err(CatError::NotAMorphism("map does not preserve bottom".into()));
    }
    if f(full_src) != full_dst {
        return Err(CatError::NotAMorphism("map does not preserve top".into()));
    }
    let n = src.size();
    for i in 0..n {
        let u = src_masks[i];
        if f(full_src & !u) != full_dst & !f(u) {
            return Err(CatError::NotAMorphism(
                "map does not preserve complements".into(),
            ));
        }
        for j in 0..n {
            let v = src_masks[j];
            if f(u | v) != f(u) | f(v) {
                return Err(CatError::NotAMorphism("map does not preserve joins".into()));
            }
        }
    }
    Ok(())
}

/// Classifies a morphism as mono, strong epi, or iso in its instance.
///
/// Characterizations used, one per instance:
/// * monos are the morphisms whose carrier map is injective (for matrices:
///   full column rank);
/// * strong epis have surjective carrier maps, and additionally must be
///   structure-reflecting where quotients carry induced structure: in the
///   poset instance the target order must be the reflexive-transitive
///   closure of the image of the source order, and in the relational
///   instance every target tuple must be the image of a source tuple;
/// * isos are exactly the morphisms that are both mono and strong epi.
///
/// Integration tests check these against first-principles definitions
/// (cancellation, diagonal fill-ins, explicit two-sided inverses).
pub fn classify_morphism(f: &CatMorphism) -> MorphismFlags {
    let (mono, strong_epi) = match f.data() {
        MorphismData::Matrix(m) => {
            let r = m.rank();
            (r == m.cols(), r == m.rows())
        }
        MorphismData::Table(map) => {
            let mono = map.is_injective();
            let epi = map.is_surjective();
            let strong_epi = epi
                && match (f.src().structure(), f.dst().structure()) {
                    (Structure::Order { .. }, Structure::Order { .. }) => {
                        dst_order_is_image_closure(f.src(), f.dst(), map)
                    }
                    (Structure::Relations { rels: r1 }, Structure::Relations { rels: r2 }) => {
                        r1.iter().zip(r2).all(|(src_tuples, dst_tuples)| {
                            let image: std::collections::BTreeSet<Vec<usize>> = src_tuples
                                .iter()
                                .map(|t| t.iter().map(|&x| map.apply_idx(x)).collect())
                                .collect();
                            image == *dst_tuples
                        })
                    }
                    _ => true,
                };
            (mono, strong_epi)
        }
    };
    MorphismFlags {
        mono,
        strong_epi,
        iso: mono && strong_epi,
    }
}

fn dst_order_is_image_closure(src: &CatObject, dst: &CatObject, map: &FinMap) -> bool {
    let n = dst.size();
    let mut closure = vec![false; n * n];
    for i in 0..n {
        closure[i * n + i] = true;
    }
    let m = src.size();
    for i in 0..m {
        for j in 0..m {
            if src.le(i, j) {
                closure[map.apply_idx(i) * n + map.apply_idx(j)] = true;
            }
        }
    }
    super::transitive_close(&mut closure, n);
    (0..n * n).all(|k| closure[k] == dst.le(k / n, k % n))
}

/// A canonical label for a morphism, usable as an element of a hom-set
/// carrier: the tuple of image labels in source-carrier order (for matrices,
/// the tuple of column vectors).
pub fn morphism_label(f: &CatMorphism) -> Label {
    match f.data() {
        MorphismData::Table(map) => Label::Tuple(
            (0..map.dom().len())
                .map(|i| map.cod().label(map.apply_idx(i)).clone())
                .collect(),
        ),
        MorphismData::Matrix(m) => Label::Tuple(
            m.columns()
                .iter()
                .map(|c| crate::gf::vector_label(c))
                .collect(),
        ),
    }
}

impl fmt::Display for CatMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?}", self.src, self.dst)
    }
}

impl Serialize for CatMorphism {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("CatMorphism", 3)?;
        st.serialize_field("src", &self.src)?;
        st.serialize_field("dst", &self.dst)?;
        match &self.data {
            MorphismData::Table(map) => {
                let pairs: Vec<(&Label, &Label)> = (0..map.dom().len())
                    .map(|i| (map.dom().label(i), map.cod().label(map.apply_idx(i))))
                    .collect();
                st.serialize_field("map", &pairs)?;
            }
            MorphismData::Matrix(m) => {
                let rows: Vec<Vec<u64>> = (0..m.rows())
                    .map(|r| (0..m.cols()).map(|c| m[(r, c)]).collect())
                    .collect();
                st.serialize_field("matrix", &rows)?;
            }
        }
        st.end()
    }
}

#[derive(Deserialize)]
struct MorphismRepr {
    src: CatObject,
    dst: CatObject,
    #[serde(default)]
    map: Option<Vec<(Label, Label)>>,
    #[serde(default)]
    matrix: Option<Vec<Vec<u64>>>,
}

impl<'de> Deserialize<'de> for CatMorphism {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = MorphismRepr::deserialize(de)?;
        match (repr.map, repr.matrix) {
            (Some(pairs), None) => CatMorphism::from_pairs(&repr.src, &repr.dst, &pairs)
                .map_err(D::Error::custom),
            (None, Some(rows)) => {
                let field = repr
                    .src
                    .field()
                    .ok_or_else(|| D::Error::custom("\"matrix\" requires vector-space objects"))?;
                let dd = repr.dst.dim().unwrap_or(0);
                if rows.len() != dd || rows.iter().any(|r| r.len() != rows.first().map_or(0, Vec::len))
                {
                    return Err(D::Error::custom("matrix rows are ragged or miscounted"));
                }
                let cols = rows.first().map_or(repr.src.dim().unwrap_or(0), Vec::len);
                let data: Vec<u64> = rows.into_iter().flatten().collect();
                if data.iter().any(|&x| x >= field.modulus()) {
                    return Err(D::Error::custom("matrix entry out of field range"));
                }
                let m = GfMatrix::new(field, dd, cols, data);
                CatMorphism::from_matrix(&repr.src, &repr.dst, m).map_err(D::Error::custom)
            }
            _ => Err(D::Error::custom(
                "morphism spec needs exactly one of \"map\" or \"matrix\"",
            )),
        }
    }
}
