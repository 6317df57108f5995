//! Truncated codirected chains and cones over them.
//!
//! A [`ChainSegment`] is a finite stretch `L_0, ..., L_N` of a chain with
//! connecting morphisms `d_k: L_{k+1} -> L_k`; a [`ConeFamily`] is an apex
//! with compatible legs `q_k: apex -> L_k` (`q_k = d_k ∘ q_{k+1}`).
//!
//! [`mono_index`] finds the least level whose leg is monic. Monicity is
//! upward closed along a compatible cone: `q_k = d_k ∘ q_{k+1}`, and a
//! first factor of a mono is mono, so once some leg is monic all later legs
//! are. [`find_independence_index`] is the vector-space refinement: the
//! least level where chosen apex vectors stay linearly independent,
//! computed by exact rank over GF(p) and scanned in the order "first n-1
//! vectors, then extend".
//!
//! Two built-in chain families with rule-based carriers are provided whose
//! legs are never monic at any depth: cyclic groups of order 2^k with
//! reduction maps (under their additive structure), and cycles of length
//! 2^k as unary algebras with the collapsing maps. Their carriers grow
//! exponentially, so they are checked arithmetically on `u64` values
//! instead of materialized object tables.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cat::{classify_morphism, CatError, CatId, CatMorphism, CatObject, MorphismData};
use crate::gf::GfMatrix;
use crate::label::Label;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("a chain needs at least one object")]
    Empty,
    #[error("connecting map {0} does not go from level {1} to level {2}")]
    BadConnecting(usize, usize, usize),
    #[error("chain has {objects} objects but {maps} connecting maps")]
    CountMismatch { objects: usize, maps: usize },
    #[error("cone has {legs} legs for a chain of depth {depth}")]
    LegCount { legs: usize, depth: usize },
    #[error("cone leg {0} does not start at the apex or end at level {0}")]
    BadLeg(usize),
    #[error("cone is incompatible at level {0}: the leg differs from the connecting map composed with the next leg")]
    Incompatible(usize),
    #[error("operation requires a vector-space chain, got {0}")]
    NotVector(String),
    #[error("input vectors are linearly dependent in the apex")]
    DependentInput,
    #[error("vector has {got} coordinates, apex dimension is {want}")]
    VectorShape { got: usize, want: usize },
    #[error(transparent)]
    Cat(#[from] CatError),
}

/// A finite stretch `L_0..L_N` of an inverse chain with connecting maps
/// `d_k: L_{k+1} -> L_k`.
#[derive(Clone, Debug, Serialize)]
pub struct ChainSegment {
    objects: Vec<CatObject>,
    connecting: Vec<CatMorphism>,
}

impl ChainSegment {
    pub fn new(objects: Vec<CatObject>, connecting: Vec<CatMorphism>) -> Result<Self, ChainError> {
        if objects.is_empty() {
            return Err(ChainError::Empty);
        }
        if connecting.len() + 1 != objects.len() {
            return Err(ChainError::CountMismatch {
                objects: objects.len(),
                maps: connecting.len(),
            });
        }
        for (k, d) in connecting.iter().enumerate() {
            if d.src() != &objects[k + 1] || d.dst() != &objects[k] {
                return Err(ChainError::BadConnecting(k, k + 1, k));
            }
        }
        Ok(ChainSegment {
            objects,
            connecting,
        })
    }

    /// The constant chain at one object with identity connecting maps.
    pub fn constant(obj: &CatObject, depth: usize) -> Self {
        ChainSegment {
            objects: vec![obj.clone(); depth + 1],
            connecting: vec![CatMorphism::identity(obj); depth],
        }
    }

    /// Depth `N`: the largest level index.
    pub fn depth(&self) -> usize {
        self.objects.len() - 1
    }

    pub fn cat(&self) -> &CatId {
        self.objects[0].cat()
    }

    pub fn object(&self, k: usize) -> &CatObject {
        &self.objects[k]
    }

    pub fn objects(&self) -> &[CatObject] {
        &self.objects
    }

    /// `d_k: L_{k+1} -> L_k`.
    pub fn connecting(&self, k: usize) -> &CatMorphism {
        &self.connecting[k]
    }

    /// Restricts the segment to levels `0..=depth`.
    pub fn truncate(&self, depth: usize) -> ChainSegment {
        assert!(depth <= self.depth());
        ChainSegment {
            objects: self.objects[..=depth].to_vec(),
            connecting: self.connecting[..depth.min(self.connecting.len())].to_vec(),
        }
    }
}

/// An apex with compatible legs into every level of a chain segment.
#[derive(Clone, Debug, Serialize)]
pub struct ConeFamily {
    apex: CatObject,
    legs: Vec<CatMorphism>,
}

impl ConeFamily {
    /// Validates endpoints and the compatibility `q_k = d_k ∘ q_{k+1}`.
    pub fn new(
        chain: &ChainSegment,
        apex: CatObject,
        legs: Vec<CatMorphism>,
    ) -> Result<Self, ChainError> {
        if legs.len() != chain.depth() + 1 {
            return Err(ChainError::LegCount {
                legs: legs.len(),
                depth: chain.depth(),
            });
        }
        for (k, q) in legs.iter().enumerate() {
            if q.src() != &apex || q.dst() != chain.object(k) {
                return Err(ChainError::BadLeg(k));
            }
        }
        for k in 0..chain.depth() {
            let composed = chain.connecting(k).compose(&legs[k + 1])?;
            if composed != legs[k] {
                return Err(ChainError::Incompatible(k));
            }
        }
        Ok(ConeFamily { apex, legs })
    }

    pub fn apex(&self) -> &CatObject {
        &self.apex
    }

    pub fn legs(&self) -> &[CatMorphism] {
        &self.legs
    }

    pub fn leg(&self, k: usize) -> &CatMorphism {
        &self.legs[k]
    }

    pub fn depth(&self) -> usize {
        self.legs.len() - 1
    }

    /// Restricts the cone to legs `0..=depth`; the result is compatible
    /// with the equally truncated chain.
    pub fn truncate(&self, depth: usize) -> ConeFamily {
        assert!(depth <= self.depth());
        ConeFamily {
            apex: self.apex.clone(),
            legs: self.legs[..=depth].to_vec(),
        }
    }
}

/// Outcome of the least-monic-leg search.
#[derive(Clone, Debug, Serialize)]
pub enum MonoSearch {
    /// The least level whose leg is a mono.
    Found { index: usize },
    /// No leg is monic up to the cone's depth; for each level, a pair of
    /// distinct apex elements merged by that leg.
    NoneUpToDepth {
        depth: usize,
        merged: Vec<(Label, Label)>,
    },
}

/// Finds the least `k` such that `q_k` is a monomorphism, scanning upward
/// from 0 (monicity is upward closed, so the first hit is the least).
pub fn mono_index(cone: &ConeFamily) -> MonoSearch {
    let mut merged = Vec::with_capacity(cone.depth() + 1);
    for (k, q) in cone.legs().iter().enumerate() {
        if classify_morphism(q).mono {
            return MonoSearch::Found { index: k };
        }
        merged.push(merged_pair_of(q));
    }
    MonoSearch::NoneUpToDepth {
        depth: cone.depth(),
        merged,
    }
}

/// Two distinct source elements with a common image under a non-mono.
fn merged_pair_of(f: &CatMorphism) -> (Label, Label) {
    match f.data() {
        MorphismData::Table(map) => map
            .merged_pair()
            .expect("a non-injective map merges some pair"),
        MorphismData::Matrix(m) => {
            let kernel = m.kernel_basis();
            let v = kernel.first().expect("a rank-deficient matrix has kernel");
            (
                crate::gf::vector_label(v),
                crate::gf::vector_label(&vec![0; v.len()]),
            )
        }
    }
}

/// Outcome of the independence-index search.
#[derive(Clone, Debug, Serialize)]
pub enum IndependenceSearch {
    Found {
        index: usize,
        /// `stages[m]` is the least level where the first `m+1` vectors
        /// already have independent images; the scan extends from each
        /// stage to the next instead of restarting.
        stages: Vec<usize>,
    },
    NoneUpToDepth { depth: usize },
}

/// Finds the least level `k` where the images `q_k(x_1), ..., q_k(x_n)` of
/// the given apex vectors are linearly independent (exact rank over GF(p)).
///
/// The scan settles the first `n-1` vectors first and extends upward from
/// that level; this is sound because a set with independent images at level
/// `k` has independent images at every level >= k (the images at level k
/// factor through level k+1), so the stage indices are nondecreasing and
/// the final stage is the global least index.
pub fn find_independence_index(
    cone: &ConeFamily,
    vectors: &[Vec<u64>],
) -> Result<IndependenceSearch, ChainError> {
    let CatId::VecGf { p } = cone.apex().cat() else {
        return Err(ChainError::NotVector(cone.apex().cat().short_name()));
    };
    let field = crate::gf::Gf::new(*p);
    let apex_dim = cone.apex().dim().unwrap();
    for v in vectors {
        if v.len() != apex_dim {
            return Err(ChainError::VectorShape {
                got: v.len(),
                want: apex_dim,
            });
        }
    }
    if GfMatrix::from_columns(field, apex_dim, vectors).rank() != vectors.len() {
        return Err(ChainError::DependentInput);
    }
    let images_independent = |k: usize, upto: usize| -> bool {
        let q = cone
            .leg(k)
            .matrix()
            .expect("vector-space legs are matrices");
        let cols: Vec<Vec<u64>> = vectors[..upto].iter().map(|v| q.mul_vec(v)).collect();
        GfMatrix::from_columns(field, q.rows(), &cols).rank() == upto
    };
    let mut stages = Vec::with_capacity(vectors.len());
    let mut k = 0usize;
    for m in 1..=vectors.len() {
        loop {
            if k > cone.depth() {
                return Ok(IndependenceSearch::NoneUpToDepth {
                    depth: cone.depth(),
                });
            }
            if images_independent(k, m) {
                stages.push(k);
                break;
            }
            k += 1;
        }
    }
    Ok(IndependenceSearch::Found {
        index: stages.last().copied().unwrap_or(0),
        stages,
    })
}

/// The built-in chain families whose cone legs are never monic.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum BuiltinChain {
    /// Cyclic groups of order 2^k with reduction maps, apex the integers
    /// with legs `x mod 2^k`.
    #[serde(rename = "ab-mod2k")]
    AbMod2k,
    /// Cycles of length 2^k as unary algebras (one successor operation)
    /// with the collapsing maps, apex the integers under successor.
    #[serde(rename = "un-cycles")]
    UnCycles,
}

impl BuiltinChain {
    pub fn parse(name: &str) -> Option<BuiltinChain> {
        match name {
            "ab-mod2k" => Some(BuiltinChain::AbMod2k),
            "un-cycles" => Some(BuiltinChain::UnCycles),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BuiltinChain::AbMod2k => "ab-mod2k",
            BuiltinChain::UnCycles => "un-cycles",
        }
    }
}

/// One level of a built-in counterexample chain: a witness pair of distinct
/// apex integers merged by the leg at that level.
#[derive(Clone, Debug, Serialize)]
pub struct MergedWitness {
    pub level: usize,
    pub first: u64,
    pub second: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub name: String,
    pub depth: usize,
    /// Every connecting map satisfies its structure law (verified
    /// pointwise on one full period).
    pub connecting_maps_valid: bool,
    /// Every leg agrees with the connecting map composed with the next leg
    /// (verified pointwise on one full period).
    pub cone_compatible: bool,
    /// One merged pair per level; nonempty at every level means no leg is
    /// monic up to the stated depth.
    pub witnesses: Vec<MergedWitness>,
}

impl CounterexampleReport {
    pub fn no_leg_monic(&self) -> bool {
        self.connecting_maps_valid
            && self.cone_compatible
            && self.witnesses.len() == self.depth + 1
            && self
                .witnesses
                .iter()
                .enumerate()
                .all(|(k, w)| w.level == k && w.first != w.second)
    }
}

/// Builds a counterexample chain to the given depth and certifies that no
/// cone leg is monic: level `k` is the structure on `{0, ..., 2^k - 1}`
/// and the leg sends an integer to its residue, so `(0, 2^k)` is a merged
/// pair at level `k`.
///
/// Connecting maps are validated against the defining law of the instance:
/// additivity for the group chain (a map from a finite cyclic group is
/// additive exactly when it is multiplication by the image of 1 and the
/// group order annihilates that image), successor-equivariance for the
/// unary-algebra chain. Both are checked pointwise over the whole source
/// carrier.
pub fn verify_counterexample_chain(which: BuiltinChain, depth: usize) -> CounterexampleReport {
    assert!(depth >= 1, "counterexample chains need depth at least 1");
    assert!(depth <= 32, "2^depth carriers get impractically large past depth 32");
    let modulus = |k: usize| 1u64 << k;
    // The connecting map at level k reduces modulo 2^k.
    let connect = |k: usize, x: u64| x % modulus(k);
    let mut connecting_maps_valid = true;
    for k in 0..depth {
        let m_src = modulus(k + 1);
        let m_dst = modulus(k);
        match which {
            BuiltinChain::AbMod2k => {
                // f is additive iff f(x) = x·f(1) (mod 2^k) for all x and
                // the source order kills f(1); both checked directly.
                let f1 = connect(k, 1);
                let mul_mod =
                    |x: u64, y: u64, m: u64| ((x as u128 * y as u128) % m as u128) as u64;
                let pointwise = (0..m_src).all(|x| connect(k, x) == mul_mod(x, f1, m_dst));
                let order_kills = (m_src % m_dst == 0) && mul_mod(m_src, f1, m_dst) == 0;
                if !(pointwise && order_kills) {
                    connecting_maps_valid = false;
                }
            }
            BuiltinChain::UnCycles => {
                let equivariant = (0..m_src)
                    .all(|x| connect(k, (x + 1) % m_src) == (connect(k, x) + 1) % m_dst);
                if !equivariant {
                    connecting_maps_valid = false;
                }
            }
        }
    }
    // Leg compatibility q_k = d_k ∘ q_{k+1} over one period of the larger
    // level (residues are periodic, so this covers all integers).
    let mut cone_compatible = true;
    for k in 0..depth {
        let m_src = modulus(k + 1);
        if !(0..m_src).all(|x| connect(k, connect(k + 1, x)) == connect(k, x)) {
            cone_compatible = false;
        }
    }
    let witnesses = (0..=depth)
        .map(|k| {
            let (first, second) = (0u64, modulus(k));
            debug_assert_eq!(connect(k, first), connect(k, second));
            MergedWitness {
                level: k,
                first,
                second,
            }
        })
        .collect();
    CounterexampleReport {
        name: which.name().to_string(),
        depth,
        connecting_maps_valid,
        cone_compatible,
        witnesses,
    }
}

/// The Set chain `L_k = {0, ..., k}` where the connecting map collapses the
/// top element, together with a two-element cone whose legs send `a` to 0
/// and `b` to `min(2, k)`. Used in tests and as a worked example.
pub fn collapsing_set_chain(depth: usize) -> (ChainSegment, ConeFamily) {
    use crate::finset::{FinMap, FinSet};
    assert!(depth >= 1);
    let level = |k: usize| {
        CatObject::set(FinSet::indexed("n", k + 1))
    };
    let objects: Vec<CatObject> = (0..=depth).map(level).collect();
    let connecting: Vec<CatMorphism> = (0..depth)
        .map(|k| {
            let src = &objects[k + 1];
            let dst = &objects[k];
            let map = FinMap::from_fn(src.carrier().clone(), dst.carrier().clone(), |l| {
                let i = src.carrier().index_of(l).unwrap();
                dst.carrier().label(i.min(k)).clone()
            })
            .unwrap();
            CatMorphism::from_map(src, dst, map).unwrap()
        })
        .collect();
    let apex = CatObject::set(FinSet::atoms(["a", "b"]).unwrap());
    let legs: Vec<CatMorphism> = (0..=depth)
        .map(|k| {
            let dst = &objects[k];
            let map = FinMap::from_fn(apex.carrier().clone(), dst.carrier().clone(), |l| {
                let target = if *l == Label::from("a") { 0 } else { 2.min(k) };
                dst.carrier().label(target).clone()
            })
            .unwrap();
            CatMorphism::from_map(&apex, dst, map).unwrap()
        })
        .collect();
    let chain = ChainSegment::new(objects, connecting).expect("chain is well formed");
    let cone = ConeFamily::new(&chain, apex, legs).expect("cone is compatible");
    (chain, cone)
}

/// A seeded random GF(2) chain with a compatible cone and a family of
/// linearly independent apex vectors, for stress-testing the
/// independence-index search against a full rescan.
///
/// Level dimensions are sampled inside `1..=max_dim` but capped by the
/// level index plus one, so low levels are small and the search usually
/// settles at a nontrivial index. The connecting maps and the top leg are
/// uniform random matrices; lower legs are forced by compatibility, which
/// makes the cone valid by construction. The apex has dimension `max_dim`
/// and `n_vectors` independent vectors are drawn by rejection.
pub fn random_vec_chain(
    seed: u64,
    max_dim: usize,
    depth: usize,
    n_vectors: usize,
) -> (ChainSegment, ConeFamily, Vec<Vec<u64>>) {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    assert!(max_dim >= 1 && depth >= 1, "degenerate chain shape");
    assert!(
        (1..=max_dim).contains(&n_vectors),
        "need between 1 and max_dim vectors"
    );
    let field = crate::gf::Gf::new(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims: Vec<usize> = (0..=depth)
        .map(|k| rng.gen_range(1..=max_dim.min(k + 1)))
        .collect();
    let objects: Vec<CatObject> = dims.iter().map(|&d| CatObject::space(2, d)).collect();
    let mut rand_matrix = |rows: usize, cols: usize| {
        let data: Vec<u64> = (0..rows * cols).map(|_| rng.gen_range(0..2)).collect();
        GfMatrix::new(field, rows, cols, data)
    };
    let connecting_matrices: Vec<GfMatrix> = (0..depth)
        .map(|k| rand_matrix(dims[k], dims[k + 1]))
        .collect();
    let apex = CatObject::space(2, max_dim);
    let mut leg_matrices = vec![rand_matrix(dims[depth], max_dim)];
    for k in (0..depth).rev() {
        let above = leg_matrices.last().unwrap();
        leg_matrices.push(connecting_matrices[k].mul(above));
    }
    leg_matrices.reverse();
    let mut vectors: Vec<Vec<u64>> = Vec::with_capacity(n_vectors);
    while vectors.len() < n_vectors {
        let v: Vec<u64> = (0..max_dim).map(|_| rng.gen_range(0..2)).collect();
        let mut candidate = vectors.clone();
        candidate.push(v.clone());
        if GfMatrix::from_columns(field, max_dim, &candidate).rank() == candidate.len() {
            vectors.push(v);
        }
    }
    let connecting: Vec<CatMorphism> = connecting_matrices
        .into_iter()
        .enumerate()
        .map(|(k, m)| {
            CatMorphism::from_matrix(&objects[k + 1], &objects[k], m)
                .expect("random matrix shapes match the chain")
        })
        .collect();
    let legs: Vec<CatMorphism> = leg_matrices
        .into_iter()
        .enumerate()
        .map(|(k, m)| {
            CatMorphism::from_matrix(&apex, &objects[k], m)
                .expect("leg shapes match the chain")
        })
        .collect();
    let chain = ChainSegment::new(objects, connecting).expect("chain is well formed");
    let cone = ConeFamily::new(&chain, apex, legs).expect("legs are forced to be compatible");
    (chain, cone, vectors)
}
