//! Finite sets and total functions with canonical element labels.
//!
//! [`FinSet`] is an immutable, sorted, duplicate-free sequence of [`Label`]s;
//! [`FinMap`] stores a function as an index table against the (fixed) orders
//! of its endpoints. Both are cheap to clone (the carrier is shared), safe to
//! use from several threads, and compare by value, so two runs of the same
//! construction produce identical data.
//!
//! The limit/colimit constructions here ([`product`], [`coproduct`],
//! [`equalizer`], [`pullback`], [`factorize`]) all emit canonical labels:
//! tuples for products and pullbacks, tagged labels for coproducts, subsets
//! of the ambient carrier for equalizers and images.

use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::label::Label;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FinSetError {
    #[error("duplicate label {0} in carrier")]
    DuplicateLabel(Label),
    #[error("label {0} is not in the domain")]
    NotInDomain(Label),
    #[error("image label {0} is not in the codomain")]
    NotInCodomain(Label),
    #[error("table length {got} does not match domain size {want}")]
    TableSize { got: usize, want: usize },
    #[error("table entry {0} is out of range for the codomain")]
    TableRange(usize),
    #[error("maps are not parallel (domains or codomains differ)")]
    NotParallel,
    #[error("maps are not composable (codomain/domain mismatch)")]
    NotComposable,
    #[error("cospan legs have different codomains")]
    NotCospan,
}

/// An immutable finite set: sorted, duplicate-free labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinSet {
    elems: Arc<[Label]>,
}

impl FinSet {
    /// Builds a set from labels in any order. Fails on duplicates.
    pub fn new(labels: impl IntoIterator<Item = Label>) -> Result<Self, FinSetError> {
        let mut elems: Vec<Label> = labels.into_iter().collect();
        elems.sort();
        for w in elems.windows(2) {
            if w[0] == w[1] {
                return Err(FinSetError::DuplicateLabel(w[0].clone()));
            }
        }
        Ok(FinSet {
            elems: elems.into(),
        })
    }

    pub fn empty() -> Self {
        FinSet { elems: Arc::new([]) }
    }

    pub fn singleton(l: Label) -> Self {
        FinSet {
            elems: Arc::new([l]),
        }
    }

    /// Set of named atoms.
    pub fn atoms<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, FinSetError> {
        FinSet::new(names.into_iter().map(|s| Label::Atom(s.into())))
    }

    /// Canonical `n`-element test set `{prefix0, …, prefix(n-1)}`.
    ///
    /// Indices are zero-padded so that label order agrees with numeric order
    /// regardless of `n`.
    pub fn indexed(prefix: &str, n: usize) -> Self {
        let width = if n <= 1 { 1 } else { (n - 1).to_string().len() };
        let elems: Vec<Label> = (0..n)
            .map(|i| Label::Atom(format!("{prefix}{i:0width$}")))
            .collect();
        // Zero-padded decimal strings of equal width sort numerically.
        FinSet {
            elems: elems.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Label> {
        self.elems.iter()
    }

    pub fn label(&self, idx: usize) -> &Label {
        &self.elems[idx]
    }

    pub fn labels(&self) -> &[Label] {
        &self.elems
    }

    pub fn index_of(&self, l: &Label) -> Option<usize> {
        self.elems.binary_search(l).ok()
    }

    pub fn contains(&self, l: &Label) -> bool {
        self.index_of(l).is_some()
    }

    pub fn is_subset_of(&self, other: &FinSet) -> bool {
        self.iter().all(|l| other.contains(l))
    }

    /// Subset of `self` selected by a predicate on labels.
    pub fn filter(&self, mut keep: impl FnMut(&Label) -> bool) -> FinSet {
        let elems: Vec<Label> = self.iter().filter(|l| keep(l)).cloned().collect();
        // A subset of a sorted duplicate-free slice stays sorted and free of
        // duplicates.
        FinSet {
            elems: elems.into(),
        }
    }

    pub fn intersection(&self, other: &FinSet) -> FinSet {
        self.filter(|l| other.contains(l))
    }

    pub fn union(&self, other: &FinSet) -> FinSet {
        let mut elems: Vec<Label> = self.iter().chain(other.iter()).cloned().collect();
        elems.sort();
        elems.dedup();
        FinSet {
            elems: elems.into(),
        }
    }

    /// All subsets, in a deterministic order (by size pattern of the
    /// membership mask; each subset is itself canonical).
    pub fn subsets(&self) -> Vec<FinSet> {
        let n = self.len();
        assert!(n < usize::BITS as usize, "subset enumeration overflow");
        (0u64..(1u64 << n))
            .map(|mask| self.filter_indexed(|i| mask & (1 << i) != 0))
            .collect()
    }

    fn filter_indexed(&self, mut keep: impl FnMut(usize) -> bool) -> FinSet {
        let elems: Vec<Label> = self
            .iter()
            .enumerate()
            .filter(|(i, _)| keep(*i))
            .map(|(_, l)| l.clone())
            .collect();
        FinSet {
            elems: elems.into(),
        }
    }

    /// The inclusion map of `self` into `ambient`.
    pub fn inclusion_into(&self, ambient: &FinSet) -> Result<FinMap, FinSetError> {
        FinMap::from_fn(self.clone(), ambient.clone(), |l| l.clone())
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for FinSet {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.labels().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FinSet {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let labels = Vec::<Label>::deserialize(de)?;
        FinSet::new(labels).map_err(serde::de::Error::custom)
    }
}

/// A total function between finite sets, stored as an index table.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FinMap {
    dom: FinSet,
    cod: FinSet,
    table: Vec<usize>,
}

impl FinMap {
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Result<Self, FinSetError> {
        if table.len() != dom.len() {
            return Err(FinSetError::TableSize {
                got: table.len(),
                want: dom.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&i| i >= cod.len()) {
            return Err(FinSetError::TableRange(bad));
        }
        Ok(FinMap { dom, cod, table })
    }

    pub fn from_fn(
        dom: FinSet,
        cod: FinSet,
        mut f: impl FnMut(&Label) -> Label,
    ) -> Result<Self, FinSetError> {
        let table = dom
            .iter()
            .map(|l| {
                let img = f(l);
                cod.index_of(&img).ok_or(FinSetError::NotInCodomain(img))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FinMap { dom, cod, table })
    }

    /// Builds a map from explicit (source, image) label pairs. Every domain
    /// element must be covered exactly once.
    pub fn from_pairs(
        dom: FinSet,
        cod: FinSet,
        pairs: &[(Label, Label)],
    ) -> Result<Self, FinSetError> {
        let mut table = vec![usize::MAX; dom.len()];
        for (src, img) in pairs {
            let i = dom
                .index_of(src)
                .ok_or_else(|| FinSetError::NotInDomain(src.clone()))?;
            let j = cod
                .index_of(img)
                .ok_or_else(|| FinSetError::NotInCodomain(img.clone()))?;
            table[i] = j;
        }
        if let Some(i) = table.iter().position(|&j| j == usize::MAX) {
            return Err(FinSetError::NotInDomain(dom.label(i).clone()));
        }
        FinMap::new(dom, cod, table)
    }

    pub fn identity(set: &FinSet) -> Self {
        FinMap {
            dom: set.clone(),
            cod: set.clone(),
            table: (0..set.len()).collect(),
        }
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply_idx(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn apply(&self, l: &Label) -> Result<&Label, FinSetError> {
        let i = self
            .dom
            .index_of(l)
            .ok_or_else(|| FinSetError::NotInDomain(l.clone()))?;
        Ok(self.cod.label(self.table[i]))
    }

    /// `g.compose(f)` is `g ∘ f` ("f then g").
    pub fn compose(&self, f: &FinMap) -> Result<FinMap, FinSetError> {
        if f.cod != self.dom {
            return Err(FinSetError::NotComposable);
        }
        let table = f.table.iter().map(|&i| self.table[i]).collect();
        Ok(FinMap {
            dom: f.dom.clone(),
            cod: self.cod.clone(),
            table,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.table.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        self.table.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        for &j in &self.table {
            seen[j] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn inverse(&self) -> Option<FinMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut table = vec![0; self.cod.len()];
        for (i, &j) in self.table.iter().enumerate() {
            table[j] = i;
        }
        Some(FinMap {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            table,
        })
    }

    /// The image as a subset of the codomain.
    pub fn image(&self) -> FinSet {
        let mut hit = vec![false; self.cod.len()];
        for &j in &self.table {
            hit[j] = true;
        }
        self.cod.filter_indexed(|i| hit[i])
    }

    /// Two domain elements identified by this map, if any.
    pub fn merged_pair(&self) -> Option<(Label, Label)> {
        let mut first = vec![usize::MAX; self.cod.len()];
        for (i, &j) in self.table.iter().enumerate() {
            if first[j] != usize::MAX {
                return Some((self.dom.label(first[j]).clone(), self.dom.label(i).clone()));
            }
            first[j] = i;
        }
        None
    }
}

impl fmt::Display for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, &j) in self.table.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}↦{}", self.dom.label(i), self.cod.label(j))?;
        }
        write!(f, "]")
    }
}

impl Serialize for FinMap {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("FinMap", 3)?;
        st.serialize_field("dom", &self.dom)?;
        st.serialize_field("cod", &self.cod)?;
        let images: Vec<&Label> = self.table.iter().map(|&j| self.cod.label(j)).collect();
        st.serialize_field("images", &images)?;
        st.end()
    }
}

/// Enumerates every map `dom -> cod` in lexicographic table order.
pub fn all_maps(dom: &FinSet, cod: &FinSet) -> Vec<FinMap> {
    let n = dom.len();
    let m = cod.len();
    if n == 0 {
        return vec![FinMap {
            dom: dom.clone(),
            cod: cod.clone(),
            table: vec![],
        }];
    }
    if m == 0 {
        return vec![];
    }
    let mut out = Vec::with_capacity(m.pow(n as u32));
    let mut table = vec![0usize; n];
    loop {
        out.push(FinMap {
            dom: dom.clone(),
            cod: cod.clone(),
            table: table.clone(),
        });
        // Odometer step.
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            table[k] += 1;
            if table[k] < m {
                break;
            }
            table[k] = 0;
        }
    }
}

/// A (surjection, injection) factorization through the image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub epi: FinMap,
    pub mono: FinMap,
}

/// Product of a finite list of sets.
///
/// Elements are tuple labels in lexicographic order. The empty product is the
/// canonical one-point set `{()}`; a one-set product returns that set itself
/// with the identity projection.
pub fn product(factors: &[FinSet]) -> (FinSet, Vec<FinMap>) {
    if factors.len() == 1 {
        return (factors[0].clone(), vec![FinMap::identity(&factors[0])]);
    }
    let sizes: Vec<usize> = factors.iter().map(FinSet::len).collect();
    let total: usize = sizes.iter().product();
    let mut labels = Vec::with_capacity(total);
    let mut proj_tables: Vec<Vec<usize>> = vec![Vec::with_capacity(total); factors.len()];
    let mut idx = vec![0usize; factors.len()];
    for _ in 0..total {
        labels.push(Label::Tuple(
            idx.iter()
                .zip(factors)
                .map(|(&i, s)| s.label(i).clone())
                .collect(),
        ));
        for (k, &i) in idx.iter().enumerate() {
            proj_tables[k].push(i);
        }
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] < sizes[k] {
                break;
            }
            idx[k] = 0;
        }
    }
    // Row-major enumeration of tuples over sorted factors is already sorted.
    let carrier = FinSet {
        elems: labels.into(),
    };
    let projections = proj_tables
        .into_iter()
        .zip(factors)
        .map(|(table, s)| FinMap {
            dom: carrier.clone(),
            cod: s.clone(),
            table,
        })
        .collect();
    (carrier, projections)
}

/// Coproduct of a finite list of sets.
///
/// Elements are tagged with their summand position, so overlapping labels in
/// different summands stay distinct.
pub fn coproduct(summands: &[FinSet]) -> (FinSet, Vec<FinMap>) {
    let mut labels = Vec::new();
    for (tag, s) in summands.iter().enumerate() {
        for l in s.iter() {
            labels.push(Label::tagged(tag, l.clone()));
        }
    }
    // Tagged labels sort first by tag, then by the (sorted) summand order.
    let carrier = FinSet {
        elems: labels.into(),
    };
    let mut offset = 0;
    let injections = summands
        .iter()
        .map(|s| {
            let table = (offset..offset + s.len()).collect();
            offset += s.len();
            FinMap {
                dom: s.clone(),
                cod: carrier.clone(),
                table,
            }
        })
        .collect();
    (carrier, injections)
}

/// Equalizer of a parallel pair: the subset where both maps agree, with its
/// inclusion.
pub fn equalizer(f: &FinMap, g: &FinMap) -> Result<(FinSet, FinMap), FinSetError> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(FinSetError::NotParallel);
    }
    let sub = f
        .dom()
        .filter_indexed(|i| f.apply_idx(i) == g.apply_idx(i));
    let incl = sub.inclusion_into(f.dom())?;
    Ok((sub, incl))
}

/// Pullback of a cospan `f: X -> Z <- Y :g`: pairs agreeing in `Z`, with the
/// two projections.
pub fn pullback(f: &FinMap, g: &FinMap) -> Result<(FinSet, FinMap, FinMap), FinSetError> {
    if f.cod() != g.cod() {
        return Err(FinSetError::NotCospan);
    }
    let mut labels = Vec::new();
    let mut p_table = Vec::new();
    let mut q_table = Vec::new();
    for i in 0..f.dom().len() {
        for j in 0..g.dom().len() {
            if f.apply_idx(i) == g.apply_idx(j) {
                labels.push(Label::pair(
                    f.dom().label(i).clone(),
                    g.dom().label(j).clone(),
                ));
                p_table.push(i);
                q_table.push(j);
            }
        }
    }
    let carrier = FinSet {
        elems: labels.into(),
    };
    let p = FinMap {
        dom: carrier.clone(),
        cod: f.dom().clone(),
        table: p_table,
    };
    let q = FinMap {
        dom: carrier.clone(),
        cod: g.dom().clone(),
        table: q_table,
    };
    Ok((carrier, p, q))
}

/// Factors a map as a surjection onto its image followed by the inclusion.
pub fn factorize(f: &FinMap) -> Factorization {
    let image = f.image();
    let epi = FinMap::from_fn(f.dom().clone(), image.clone(), |l| {
        f.apply(l).expect("domain element").clone()
    })
    .expect("image contains every value");
    let mono = image
        .inclusion_into(f.cod())
        .expect("image is a subset of the codomain");
    Factorization { epi, mono }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(names: &[&str]) -> FinSet {
        FinSet::atoms(names.iter().copied()).unwrap()
    }

    #[test]
    fn rejects_duplicate_labels() {
        let err = FinSet::atoms(["a", "a"]).unwrap_err();
        assert_eq!(err, FinSetError::DuplicateLabel(Label::atom("a")));
    }

    #[test]
    fn empty_product_is_a_point() {
        let (p, projs) = product(&[]);
        assert_eq!(p.len(), 1);
        assert_eq!(p.label(0), &Label::Tuple(vec![]));
        assert!(projs.is_empty());
    }

    #[test]
    fn unary_product_is_identity() {
        let a = set(&["a"]);
        let (p, projs) = product(&[a.clone()]);
        assert_eq!(p, a);
        assert!(projs[0].is_identity());
    }

    #[test]
    fn binary_product_counts_and_projects() {
        let a = set(&["a", "b"]);
        let b = set(&["x", "y", "z"]);
        let (p, projs) = product(&[a.clone(), b.clone()]);
        assert_eq!(p.len(), 6);
        for l in p.iter() {
            let Label::Tuple(parts) = l else { panic!("tuple label expected") };
            assert_eq!(projs[0].apply(l).unwrap(), &parts[0]);
            assert_eq!(projs[1].apply(l).unwrap(), &parts[1]);
        }
    }

    #[test]
    fn coproduct_keeps_copies_apart() {
        let (c, injs) = coproduct(&[set(&["a", "b"]), set(&["a"])]);
        assert_eq!(c.len(), 3);
        assert!(injs[0].is_injective() && injs[1].is_injective());
        let im0 = injs[0].image();
        let im1 = injs[1].image();
        assert!(im0.intersection(&im1).is_empty());
    }

    #[test]
    fn coproduct_with_empty_summand() {
        let (c, injs) = coproduct(&[FinSet::empty(), set(&["a"])]);
        assert_eq!(c.len(), 1);
        assert_eq!(injs[0].dom().len(), 0);
        assert!(injs[1].is_bijective());
    }

    #[test]
    fn two_point_coproduct_of_points() {
        let (c, injs) = coproduct(&[set(&["s"]), set(&["s"])]);
        assert_eq!(c.len(), 2);
        assert_ne!(injs[0].apply_idx(0), injs[1].apply_idx(0));
    }

    #[test]
    fn equalizer_of_identity_and_swap() {
        // Frozen expectation: id vs the 3-cycle-breaking swap on {1,2,3}
        // fixing 1 and 3 agrees exactly on {1,3}.
        let x = set(&["1", "2", "3"]);
        let id = FinMap::identity(&x);
        let swap = FinMap::from_pairs(
            x.clone(),
            x.clone(),
            &[
                ("1".into(), "1".into()),
                ("2".into(), "3".into()),
                ("3".into(), "3".into()),
            ],
        )
        .unwrap();
        let (e, incl) = equalizer(&id, &swap).unwrap();
        assert_eq!(e, set(&["1", "3"]));
        assert!(incl.is_injective());
    }

    #[test]
    fn equalizer_rejects_non_parallel() {
        let f = FinMap::identity(&set(&["a"]));
        let g = FinMap::identity(&set(&["b"]));
        assert_eq!(equalizer(&f, &g).unwrap_err(), FinSetError::NotParallel);
    }

    #[test]
    fn pullback_of_monos_is_intersection() {
        // Two subset inclusions into {1,2,3,4}: {1,2,3} and {2,3,4}.
        let ambient = set(&["1", "2", "3", "4"]);
        let b1 = set(&["1", "2", "3"]);
        let b2 = set(&["2", "3", "4"]);
        let (pb, p, q) = pullback(
            &b1.inclusion_into(&ambient).unwrap(),
            &b2.inclusion_into(&ambient).unwrap(),
        )
        .unwrap();
        assert_eq!(pb.len(), 2);
        assert_eq!(p.image(), set(&["2", "3"]));
        assert_eq!(q.image(), set(&["2", "3"]));
    }

    #[test]
    fn factorize_splits_into_epi_mono() {
        let dom = set(&["a", "b", "c"]);
        let cod = set(&["x", "y", "z"]);
        let f = FinMap::from_pairs(
            dom.clone(),
            cod.clone(),
            &[
                ("a".into(), "x".into()),
                ("b".into(), "x".into()),
                ("c".into(), "z".into()),
            ],
        )
        .unwrap();
        let fac = factorize(&f);
        assert!(fac.epi.is_surjective());
        assert!(fac.mono.is_injective());
        assert_eq!(fac.mono.compose(&fac.epi).unwrap(), f);
        assert_eq!(fac.epi.cod(), &set(&["x", "z"]));
    }

    #[test]
    fn all_maps_enumerates_exactly() {
        let maps = all_maps(&set(&["a", "b"]), &set(&["x", "y", "z"]));
        assert_eq!(maps.len(), 9);
        let mut seen = maps.clone();
        seen.dedup();
        assert_eq!(seen.len(), 9);
    }

    #[test]
    fn shared_carriers_are_thread_safe() {
        let x = set(&["a", "b", "c"]);
        let f = FinMap::identity(&x);
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let f = f.clone();
                std::thread::spawn(move || f.compose(&f).unwrap().is_identity())
            })
            .collect();
        for h in handles {
            assert!(h.join().unwrap());
        }
    }
}
