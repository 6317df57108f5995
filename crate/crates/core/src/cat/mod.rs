//! Seven concrete categories of finite structures, with grades.
//!
//! Each instance is identified by a [`CatId`] and assigns every object a
//! natural-number grade:
//!
//! | instance   | objects                         | grade                     |
//! |------------|---------------------------------|---------------------------|
//! | `Set`      | finite sets                     | cardinality               |
//! | `SetP`     | pointed finite sets             | cardinality               |
//! | `Pos`      | finite posets                   | comparable pairs, reflexive pairs included |
//! | `Bool`     | finite powerset algebras        | cardinality (2^atoms)     |
//! | `VecGf(p)` | GF(p) vector spaces             | dimension                 |
//! | `MSet(M)`  | finite actions of a finite monoid | cardinality             |
//! | `OmegaRel` | finite relational structures    | carrier + total relation tuples |
//!
//! The grade is monotone along subobjects and strong quotients and strictly
//! monotone along proper ones; [`axioms::verify_grade_axioms`] checks this
//! exhaustively for a given object, and the `grades` suite sweeps all objects
//! of bounded size.
//!
//! Counting reflexive pairs in the `Pos` grade is deliberate: with strict
//! pairs only, the one-point poset and the two-point discrete poset would
//! both have grade 0, and the proper mono between them would break strict
//! monotonicity (there is a unit test demonstrating this).

mod axioms;
mod enumerate;
mod factor;
mod hom;
mod morphism;
mod subquot;

pub use axioms::{verify_grade_axioms, GradeAxiomReport, GradeViolation, ViolationKind};
pub use enumerate::{builtin_monoids, enumerate_objects, instance_roster};
pub use factor::factorize_in_cat;
pub use hom::hom_set;
pub use morphism::{classify_morphism, morphism_label, CatMorphism, MorphismData, MorphismFlags};
pub use subquot::{pullback_of_monos, strong_quotients, subobjects};

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::finset::{FinSet, FinSetError};
use crate::gf::{self, Gf};
use crate::label::Label;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatError {
    #[error("objects live in different instances: {0} vs {1}")]
    InstanceMismatch(String, String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("not a morphism: {0}")]
    NotAMorphism(String),
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),
    #[error("{op} is not supported for the {cat} instance")]
    Unsupported { op: &'static str, cat: String },
    #[error(transparent)]
    FinSet(#[from] FinSetError),
}

/// A finite monoid given by its multiplication table.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Monoid {
    table: Vec<Vec<usize>>,
    unit: usize,
}

impl Monoid {
    /// Validates closure, associativity, and a two-sided unit.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, CatError> {
        let n = table.len();
        if table.iter().any(|row| row.len() != n) {
            return Err(CatError::InvalidStructure(
                "monoid table is not square".into(),
            ));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(CatError::InvalidStructure(
                "monoid table entry out of range".into(),
            ));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(CatError::InvalidStructure(format!(
                            "monoid table is not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| CatError::InvalidStructure("monoid table has no unit".into()))?;
        Ok(Monoid { table, unit })
    }

    /// The cyclic group of order `n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Monoid::new(table).expect("cyclic table is a monoid")
    }

    /// The two-element monoid {1, e} with e·e = e.
    pub fn idempotent_pair() -> Self {
        Monoid::new(vec![vec![0, 1], vec![1, 1]]).expect("idempotent pair is a monoid")
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

impl<'de> Deserialize<'de> for Monoid {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            table: Vec<Vec<usize>>,
        }
        let repr = Repr::deserialize(de)?;
        Monoid::new(repr.table).map_err(serde::de::Error::custom)
    }
}

/// Identifies one of the seven concrete instances, including its parameters.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum CatId {
    #[serde(rename = "set")]
    Set,
    #[serde(rename = "setp")]
    SetP,
    #[serde(rename = "pos")]
    Pos,
    #[serde(rename = "bool")]
    Bool,
    #[serde(rename = "vecgf")]
    VecGf { p: u64 },
    #[serde(rename = "mset")]
    MSet { monoid: Monoid },
    #[serde(rename = "omegarel")]
    OmegaRel { arities: Vec<usize> },
}

impl CatId {
    pub fn short_name(&self) -> String {
        match self {
            CatId::Set => "Set".into(),
            CatId::SetP => "SetP".into(),
            CatId::Pos => "Pos".into(),
            CatId::Bool => "Bool".into(),
            CatId::VecGf { p } => format!("VecGF({p})"),
            CatId::MSet { monoid } => format!("MSet(|M|={})", monoid.size()),
            CatId::OmegaRel { arities } => format!("OmegaRel({arities:?})"),
        }
    }
}

impl fmt::Display for CatId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.short_name())
    }
}

/// A natural-number grade together with the instance it was measured in.
/// Grades of different instances are incomparable.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GradeValue {
    value: u64,
    cat: CatId,
}

impl GradeValue {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn cat(&self) -> &CatId {
        &self.cat
    }
}

impl PartialOrd for GradeValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        (self.cat == other.cat).then(|| self.value.cmp(&other.value))
    }
}

impl fmt::Display for GradeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Instance-specific payload carried by an object next to its carrier.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Structure {
    /// `Set`: nothing beyond the carrier.
    Plain,
    /// `SetP`: index of the base point.
    Pointed { base: usize },
    /// `Pos`: row-major `n x n` incidence of the order relation.
    Order { le: Vec<bool> },
    /// `Bool`: the atom set; the carrier is its powerset.
    PowerSet { atoms: FinSet },
    /// `VecGf`: the dimension; the carrier enumerates all coordinate vectors.
    Space { dim: usize },
    /// `MSet`: `act[m][x]` is the action of monoid element `m` on carrier
    /// element `x`.
    Action { act: Vec<Vec<usize>> },
    /// `OmegaRel`: one tuple set per signature symbol, tuples as carrier
    /// indices.
    Relations { rels: Vec<BTreeSet<Vec<usize>>> },
}

#[derive(PartialEq, Eq, Hash, Debug)]
struct ObjectData {
    cat: CatId,
    carrier: FinSet,
    structure: Structure,
}

/// An object of one of the concrete instances. Cheap to clone; immutable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CatObject {
    inner: Arc<ObjectData>,
}

impl CatObject {
    fn from_data(cat: CatId, carrier: FinSet, structure: Structure) -> Self {
        CatObject {
            inner: Arc::new(ObjectData {
                cat,
                carrier,
                structure,
            }),
        }
    }

    pub fn set(carrier: FinSet) -> CatObject {
        CatObject::from_data(CatId::Set, carrier, Structure::Plain)
    }

    pub fn pointed(carrier: FinSet, base: &Label) -> Result<CatObject, CatError> {
        let base = carrier.index_of(base).ok_or_else(|| {
            CatError::InvalidStructure(format!("base point {base} is not in the carrier"))
        })?;
        Ok(CatObject::from_data(
            CatId::SetP,
            carrier,
            Structure::Pointed { base },
        ))
    }

    /// Builds a poset from generating pairs: reflexive pairs are added and
    /// the transitive closure is taken, then antisymmetry is checked.
    pub fn poset(carrier: FinSet, le_pairs: &[(Label, Label)]) -> Result<CatObject, CatError> {
        let n = carrier.len();
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for (a, b) in le_pairs {
            let i = carrier.index_of(a).ok_or_else(|| {
                CatError::InvalidStructure(format!("order pair mentions unknown element {a}"))
            })?;
            let j = carrier.index_of(b).ok_or_else(|| {
                CatError::InvalidStructure(format!("order pair mentions unknown element {b}"))
            })?;
            le[i * n + j] = true;
        }
        transitive_close(&mut le, n);
        for i in 0..n {
            for j in 0..n {
                if i != j && le[i * n + j] && le[j * n + i] {
                    return Err(CatError::InvalidStructure(format!(
                        "order is not antisymmetric: {} and {} are equivalent",
                        carrier.label(i),
                        carrier.label(j)
                    )));
                }
            }
        }
        Ok(CatObject::from_data(
            CatId::Pos,
            carrier,
            Structure::Order { le },
        ))
    }

    /// Builds a poset directly from a full incidence matrix, which must
    /// already be reflexive, transitive, and antisymmetric.
    pub(crate) fn poset_from_incidence(carrier: FinSet, le: Vec<bool>) -> CatObject {
        let n = carrier.len();
        debug_assert_eq!(le.len(), n * n);
        debug_assert!((0..n).all(|i| le[i * n + i]), "order must be reflexive");
        CatObject::from_data(CatId::Pos, carrier, Structure::Order { le })
    }

    /// The powerset algebra on the given atoms. Carrier elements are the
    /// subsets of the atom set, labeled as sorted tuples of member labels.
    pub fn boolean(atoms: FinSet) -> Result<CatObject, CatError> {
        let n = atoms.len();
        if n >= 16 {
            return Err(CatError::InvalidStructure(format!(
                "powerset carrier for {n} atoms is too large"
            )));
        }
        let carrier = FinSet::new((0u32..1 << n).map(|mask| subset_label(&atoms, mask)))?;
        Ok(CatObject::from_data(
            CatId::Bool,
            carrier,
            Structure::PowerSet { atoms },
        ))
    }

    /// The coordinate space GF(p)^dim with all vectors enumerated.
    pub fn space(p: u64, dim: usize) -> CatObject {
        let field = Gf::new(p);
        CatObject::from_data(
            CatId::VecGf { p },
            gf::vector_carrier(field, dim),
            Structure::Space { dim },
        )
    }

    /// A finite action of `monoid` on `carrier`; `images[m]` lists the image
    /// of each carrier element (in carrier order) under monoid element `m`.
    pub fn mset(
        monoid: Monoid,
        carrier: FinSet,
        images: &[Vec<Label>],
    ) -> Result<CatObject, CatError> {
        let n = carrier.len();
        if images.len() != monoid.size() {
            return Err(CatError::InvalidStructure(format!(
                "action has {} rows, monoid has {} elements",
                images.len(),
                monoid.size()
            )));
        }
        let mut act = Vec::with_capacity(images.len());
        for row in images {
            if row.len() != n {
                return Err(CatError::InvalidStructure(
                    "action row length does not match the carrier".into(),
                ));
            }
            let row = row
                .iter()
                .map(|l| {
                    carrier.index_of(l).ok_or_else(|| {
                        CatError::InvalidStructure(format!("action image {l} is not in the carrier"))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            act.push(row);
        }
        validate_action(&monoid, &act)?;
        Ok(CatObject::from_data(
            CatId::MSet { monoid },
            carrier,
            Structure::Action { act },
        ))
    }

    pub(crate) fn mset_from_tables(
        monoid: Monoid,
        carrier: FinSet,
        act: Vec<Vec<usize>>,
    ) -> Result<CatObject, CatError> {
        validate_action(&monoid, &act)?;
        Ok(CatObject::from_data(
            CatId::MSet { monoid },
            carrier,
            Structure::Action { act },
        ))
    }

    /// A relational structure over the signature given by `arities`;
    /// `tuples[s]` lists the tuples of relation symbol `s` by element label.
    pub fn relational(
        arities: Vec<usize>,
        carrier: FinSet,
        tuples: &[Vec<Vec<Label>>],
    ) -> Result<CatObject, CatError> {
        if tuples.len() != arities.len() {
            return Err(CatError::InvalidStructure(format!(
                "{} relation blocks for {} symbols",
                tuples.len(),
                arities.len()
            )));
        }
        let mut rels = Vec::with_capacity(arities.len());
        for (s, block) in tuples.iter().enumerate() {
            let mut set = BTreeSet::new();
            for tuple in block {
                if tuple.len() != arities[s] {
                    return Err(CatError::InvalidStructure(format!(
                        "tuple of length {} under symbol of arity {}",
                        tuple.len(),
                        arities[s]
                    )));
                }
                let idx_tuple = tuple
                    .iter()
                    .map(|l| {
                        carrier.index_of(l).ok_or_else(|| {
                            CatError::InvalidStructure(format!(
                                "relation tuple mentions unknown element {l}"
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                set.insert(idx_tuple);
            }
            rels.push(set);
        }
        Ok(CatObject::from_data(
            CatId::OmegaRel { arities },
            carrier,
            Structure::Relations { rels },
        ))
    }

    pub(crate) fn relational_from_indices(
        arities: Vec<usize>,
        carrier: FinSet,
        rels: Vec<BTreeSet<Vec<usize>>>,
    ) -> CatObject {
        debug_assert_eq!(arities.len(), rels.len());
        CatObject::from_data(CatId::OmegaRel { arities }, carrier, Structure::Relations { rels })
    }

    pub fn cat(&self) -> &CatId {
        &self.inner.cat
    }

    pub fn carrier(&self) -> &FinSet {
        &self.inner.carrier
    }

    pub fn size(&self) -> usize {
        self.inner.carrier.len()
    }

    pub fn structure(&self) -> &Structure {
        &self.inner.structure
    }

    /// Base point index (`SetP` only).
    pub fn base_index(&self) -> Option<usize> {
        match &self.inner.structure {
            Structure::Pointed { base } => Some(*base),
            _ => None,
        }
    }

    pub fn base_label(&self) -> Option<&Label> {
        self.base_index().map(|i| self.carrier().label(i))
    }

    /// Order incidence (`Pos` only).
    pub fn le(&self, i: usize, j: usize) -> bool {
        match &self.inner.structure {
            Structure::Order { le } => le[i * self.size() + j],
            _ => panic!("le() called on a non-poset object"),
        }
    }

    pub fn order_matrix(&self) -> Option<&[bool]> {
        match &self.inner.structure {
            Structure::Order { le } => Some(le),
            _ => None,
        }
    }

    pub fn atoms(&self) -> Option<&FinSet> {
        match &self.inner.structure {
            Structure::PowerSet { atoms } => Some(atoms),
            _ => None,
        }
    }

    pub fn dim(&self) -> Option<usize> {
        match &self.inner.structure {
            Structure::Space { dim } => Some(*dim),
            _ => None,
        }
    }

    pub fn field(&self) -> Option<Gf> {
        match self.cat() {
            CatId::VecGf { p } => Some(Gf::new(*p)),
            _ => None,
        }
    }

    pub fn action_tables(&self) -> Option<&[Vec<usize>]> {
        match &self.inner.structure {
            Structure::Action { act } => Some(act),
            _ => None,
        }
    }

    pub fn relation_sets(&self) -> Option<&[BTreeSet<Vec<usize>>]> {
        match &self.inner.structure {
            Structure::Relations { rels } => Some(rels),
            _ => None,
        }
    }

    /// Bitmask of each carrier element over the atom set (`Bool` only).
    /// Entry `i` is the membership mask of carrier element `i`.
    pub fn subset_masks(&self) -> Option<Vec<u32>> {
        let atoms = self.atoms()?;
        Some(
            self.carrier()
                .iter()
                .map(|l| subset_mask(atoms, l))
                .collect(),
        )
    }

    /// The grade of this object in its instance.
    pub fn grade(&self) -> GradeValue {
        let value = match (&self.inner.cat, &self.inner.structure) {
            (CatId::Set, _) | (CatId::SetP, _) | (CatId::MSet { .. }, _) | (CatId::Bool, _) => {
                self.size() as u64
            }
            (CatId::Pos, Structure::Order { le }) => le.iter().filter(|&&b| b).count() as u64,
            (CatId::VecGf { .. }, Structure::Space { dim }) => *dim as u64,
            (CatId::OmegaRel { .. }, Structure::Relations { rels }) => {
                self.size() as u64 + rels.iter().map(|r| r.len() as u64).sum::<u64>()
            }
            _ => unreachable!("structure does not match instance"),
        };
        GradeValue {
            value,
            cat: self.inner.cat.clone(),
        }
    }
}

fn validate_action(monoid: &Monoid, act: &[Vec<usize>]) -> Result<(), CatError> {
    let n = act.first().map_or(0, Vec::len);
    if act.len() != monoid.size() {
        return Err(CatError::InvalidStructure(
            "action table height does not match the monoid".into(),
        ));
    }
    if act.iter().flatten().any(|&x| x >= n) {
        return Err(CatError::InvalidStructure(
            "action image out of carrier range".into(),
        ));
    }
    let e = monoid.unit();
    if (0..n).any(|x| act[e][x] != x) {
        return Err(CatError::InvalidStructure(
            "monoid unit does not act as the identity".into(),
        ));
    }
    for a in 0..monoid.size() {
        for b in 0..monoid.size() {
            for x in 0..n {
                if act[a][act[b][x]] != act[monoid.mul(a, b)][x] {
                    return Err(CatError::InvalidStructure(format!(
                        "action violates (a·b)·x = a·(b·x) at ({a},{b},{x})"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn transitive_close(le: &mut [bool], n: usize) {
    for k in 0..n {
        for i in 0..n {
            if le[i * n + k] {
                for j in 0..n {
                    if le[k * n + j] {
                        le[i * n + j] = true;
                    }
                }
            }
        }
    }
}

/// Label of the subset of `atoms` selected by `mask`: a sorted tuple of the
/// member labels.
pub(crate) fn subset_label(atoms: &FinSet, mask: u32) -> Label {
    Label::Tuple(
        atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, l)| l.clone())
            .collect(),
    )
}

/// Recovers the membership mask of a powerset carrier label.
pub(crate) fn subset_mask(atoms: &FinSet, label: &Label) -> u32 {
    let Label::Tuple(members) = label else {
        panic!("powerset carrier label is not a tuple")
    };
    let mut mask = 0;
    for m in members {
        let i = atoms.index_of(m).expect("member is an atom");
        mask |= 1 << i;
    }
    mask
}

impl fmt::Debug for CatObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⟨{}⟩", self.cat().short_name(), self.carrier())
    }
}

impl Serialize for CatObject {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("CatObject", 3)?;
        st.serialize_field("cat", self.cat())?;
        match self.structure() {
            Structure::Plain => {
                st.serialize_field("carrier", self.carrier())?;
                st.skip_field("extra")?;
            }
            Structure::Pointed { base } => {
                st.serialize_field("carrier", self.carrier())?;
                st.serialize_field("base", self.carrier().label(*base))?;
            }
            Structure::Order { le } => {
                st.serialize_field("carrier", self.carrier())?;
                let n = self.size();
                let pairs: Vec<(&Label, &Label)> = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| le[i * n + j])
                    .map(|(i, j)| (self.carrier().label(i), self.carrier().label(j)))
                    .collect();
                st.serialize_field("le", &pairs)?;
            }
            Structure::PowerSet { atoms } => {
                st.serialize_field("atoms", atoms)?;
                st.skip_field("carrier")?;
            }
            Structure::Space { dim } => {
                st.serialize_field("dim", dim)?;
                st.skip_field("carrier")?;
            }
            Structure::Action { act } => {
                st.serialize_field("carrier", self.carrier())?;
                let rows: Vec<Vec<&Label>> = act
                    .iter()
                    .map(|row| row.iter().map(|&x| self.carrier().label(x)).collect())
                    .collect();
                st.serialize_field("action", &rows)?;
            }
            Structure::Relations { rels } => {
                st.serialize_field("carrier", self.carrier())?;
                let blocks: Vec<Vec<Vec<&Label>>> = rels
                    .iter()
                    .map(|set| {
                        set.iter()
                            .map(|t| t.iter().map(|&x| self.carrier().label(x)).collect())
                            .collect()
                    })
                    .collect();
                st.serialize_field("relations", &blocks)?;
            }
        }
        st.end()
    }
}

#[derive(Deserialize)]
struct ObjectRepr {
    cat: CatId,
    #[serde(default)]
    carrier: Option<FinSet>,
    #[serde(default)]
    base: Option<Label>,
    #[serde(default)]
    le: Option<Vec<(Label, Label)>>,
    #[serde(default)]
    atoms: Option<FinSet>,
    #[serde(default)]
    dim: Option<usize>,
    #[serde(default)]
    action: Option<Vec<Vec<Label>>>,
    #[serde(default)]
    relations: Option<Vec<Vec<Vec<Label>>>>,
}

impl<'de> Deserialize<'de> for CatObject {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = ObjectRepr::deserialize(de)?;
        let need_carrier = |r: &ObjectRepr| {
            r.carrier
                .clone()
                .ok_or_else(|| D::Error::custom("object spec is missing \"carrier\""))
        };
        let built = match repr.cat.clone() {
            CatId::Set => Ok(CatObject::set(need_carrier(&repr)?)),
            CatId::SetP => {
                let base = repr
                    .base
                    .clone()
                    .ok_or_else(|| D::Error::custom("pointed object spec is missing \"base\""))?;
                CatObject::pointed(need_carrier(&repr)?, &base)
            }
            CatId::Pos => CatObject::poset(need_carrier(&repr)?, &repr.le.clone().unwrap_or_default()),
            CatId::Bool => {
                let atoms = repr
                    .atoms
                    .clone()
                    .ok_or_else(|| D::Error::custom("boolean object spec is missing \"atoms\""))?;
                CatObject::boolean(atoms)
            }
            CatId::VecGf { p } => {
                let dim = repr
                    .dim
                    .ok_or_else(|| D::Error::custom("vector object spec is missing \"dim\""))?;
                Ok(CatObject::space(p, dim))
            }
            CatId::MSet { monoid } => {
                let action = repr
                    .action
                    .clone()
                    .ok_or_else(|| D::Error::custom("action object spec is missing \"action\""))?;
                CatObject::mset(monoid, need_carrier(&repr)?, &action)
            }
            CatId::OmegaRel { arities } => {
                let relations = repr.relations.clone().ok_or_else(|| {
                    D::Error::custom("relational object spec is missing \"relations\"")
                })?;
                CatObject::relational(arities, need_carrier(&repr)?, &relations)
            }
        };
        built.map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atoms(names: &[&str]) -> FinSet {
        FinSet::atoms(names.iter().copied()).unwrap()
    }

    #[test]
    fn monoid_validation() {
        assert!(Monoid::new(vec![vec![0, 1], vec![1, 0]]).is_ok());
        // No unit: constant table.
        let err = Monoid::new(vec![vec![0, 0], vec![0, 0]]).unwrap_err();
        assert!(matches!(err, CatError::InvalidStructure(_)));
    }

    #[test]
    fn grade_set_is_cardinality() {
        let a = CatObject::set(atoms(&["1", "2"]));
        assert_eq!(a.grade().value(), 2);
    }

    #[test]
    fn grade_pos_counts_reflexive_pairs() {
        // Frozen: the two-element chain has grade 3 (two reflexive pairs and
        // one strict pair).
        let chain = CatObject::poset(atoms(&["a", "b"]), &[("a".into(), "b".into())]).unwrap();
        assert_eq!(chain.grade().value(), 3);
        let discrete = CatObject::poset(atoms(&["a", "b"]), &[]).unwrap();
        assert_eq!(discrete.grade().value(), 2);
    }

    #[test]
    fn grade_omegarel_counts_carrier_plus_tuples() {
        // Frozen: X = {x,y} with one binary tuple (x,y) has grade 3.
        let a = CatObject::relational(
            vec![2],
            atoms(&["x", "y"]),
            &[vec![vec!["x".into(), "y".into()]]],
        )
        .unwrap();
        assert_eq!(a.grade().value(), 3);
    }

    #[test]
    fn grade_bool_is_carrier_size() {
        let b = CatObject::boolean(atoms(&["s", "t"])).unwrap();
        assert_eq!(b.size(), 4);
        assert_eq!(b.grade().value(), 4);
    }

    #[test]
    fn grade_vec_is_dimension() {
        let v = CatObject::space(2, 3);
        assert_eq!(v.size(), 8);
        assert_eq!(v.grade().value(), 3);
    }

    #[test]
    fn grades_of_different_instances_do_not_compare() {
        let s = CatObject::set(atoms(&["1", "2"])).grade();
        let v = CatObject::space(2, 2).grade();
        assert_eq!(s.partial_cmp(&v), None);
    }

    #[test]
    fn poset_closure_and_antisymmetry() {
        let c = CatObject::poset(
            atoms(&["a", "b", "c"]),
            &[("a".into(), "b".into()), ("b".into(), "c".into())],
        )
        .unwrap();
        // Transitive closure fills in a <= c.
        assert!(c.le(0, 2));
        let err = CatObject::poset(
            atoms(&["a", "b"]),
            &[("a".into(), "b".into()), ("b".into(), "a".into())],
        )
        .unwrap_err();
        assert!(matches!(err, CatError::InvalidStructure(_)));
    }

    #[test]
    fn action_laws_are_enforced() {
        let m = Monoid::cyclic(2);
        // Swap is a valid involution.
        assert!(CatObject::mset(
            m.clone(),
            atoms(&["x", "y"]),
            &[
                vec!["x".into(), "y".into()],
                vec!["y".into(), "x".into()]
            ],
        )
        .is_ok());
        // A non-involution fails a·(a·x) = (a·a)·x = x.
        let err = CatObject::mset(
            m,
            atoms(&["x", "y"]),
            &[
                vec!["x".into(), "y".into()],
                vec!["x".into(), "x".into()]
            ],
        )
        .unwrap_err();
        assert!(matches!(err, CatError::InvalidStructure(_)));
    }

    #[test]
    fn object_json_round_trip() {
        let obj = CatObject::poset(atoms(&["a", "b"]), &[("a".into(), "b".into())]).unwrap();
        let text = serde_json::to_string(&obj).unwrap();
        let back: CatObject = serde_json::from_str(&text).unwrap();
        assert_eq!(back, obj);
        let v = CatObject::space(2, 2);
        let back: CatObject = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(back, v);
    }
}
