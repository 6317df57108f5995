//! Finitary set functors presented by flat equational theories.
//!
//! A presentation lists operation symbols with arities and a set of flat
//! equations whose sides are a single operation applied to variables. The
//! functor it presents sends a finite carrier `X` to the set of operation
//! instances with arguments in `X`, quotiented by the congruence generated
//! by all instantiations of the equations; a map acts by substituting into
//! the arguments. Evaluation runs union-find congruence closure, caches the
//! result per carrier, and enforces an instance-count guard so oversized
//! inputs fail fast with a budget error instead of exhausting memory.
//!
//! Beyond presented functors the module ships two built-in families that are
//! not of presentation shape: the truncated eventually-constant-sequence
//! functor (`evconst:<depth>`) and, as a convenience alias, the power
//! functor `hom:<n>` given by the free presentation with one `n`-ary symbol.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::finset::{FinMap, FinSet, FinSetError};
use crate::label::Label;

mod analysis;
mod evseq;

pub use analysis::{
    classify_functor, distinguished_elements, is_distinguished, is_distinguished_by_scan,
    preserves_equalizers_upto, preserves_products_upto, preserves_pullbacks_upto, recover_exponent_form,
    Classification, DistinguishedCheck, EqualizerFailure, ExponentForm, ProductFailure,
    PullbackFailure, SeparatingPair,
};
pub use evseq::{ev_countable_witness, ev_eval, EvConstFunctor, EvSeq};

/// Default bound on the number of operation/equation instances a single
/// evaluation may touch.
pub const DEFAULT_GUARD: u64 = 1_000_000;

/// The active instance-count guard: the `GRADCAT_GUARD` environment variable
/// when it holds a positive integer, [`DEFAULT_GUARD`] otherwise.
pub fn default_guard() -> u64 {
    std::env::var("GRADCAT_GUARD")
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_GUARD)
}

/// Errors from building or evaluating set functors.
#[derive(Debug, Error)]
pub enum FunctorError {
    /// Evaluation would touch more instances than the guard allows.
    #[error("evaluation needs {needed} operation and equation instances, above the guard limit {limit}; raise the guard to proceed")]
    GuardExceeded { needed: u128, limit: u64 },
    /// A presentation failed structural validation.
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    /// A builtin functor name did not parse.
    #[error("unknown builtin functor `{0}`")]
    UnknownBuiltin(String),
    /// An element was expected in a functor value but is not there.
    #[error("element {element} is not in the functor value on {carrier}")]
    NotInValue { element: String, carrier: String },
    /// An operation was invoked outside its stated precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Substitution along a map sent congruent instances to inequivalent
    /// classes; this indicates a corrupted evaluation and is always a bug.
    #[error("congruence transport failed for functor `{0}`: equivalent instances map to different classes")]
    NotWellDefined(String),
    /// A verified classification contradicts the structure theorem for
    /// product-preserving finitary functors. Fatal in tests.
    #[error("structure theorem contradicted: {0}")]
    TheoremViolation(String),
    /// The functor is not naturally isomorphic to a power functor.
    #[error("no exponent form: {0}")]
    NotExponential(String),
    #[error(transparent)]
    FinSet(#[from] FinSetError),
}

const MAX_ARITY: usize = 8;
const MAX_EQ_VARS: usize = 8;

/// An operation symbol with its arity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpSym {
    pub sym: String,
    pub arity: usize,
}

/// One side of a flat equation: an operation index applied to variables.
///
/// Variables are bare numbers; the variable set of an equation is whatever
/// ids occur on its two sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatTerm {
    pub op: usize,
    pub args: Vec<usize>,
}

/// A flat equation between two operation applications.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorEquation {
    pub lhs: FlatTerm,
    pub rhs: FlatTerm,
}

impl FunctorEquation {
    /// The distinct variable ids occurring on either side, ascending.
    fn variables(&self) -> Vec<usize> {
        let mut vars: Vec<usize> = self
            .lhs
            .args
            .iter()
            .chain(self.rhs.args.iter())
            .copied()
            .collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }
}

/// A flat equational presentation of a finitary set functor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorPresentation {
    name: String,
    ops: Vec<OpSym>,
    eqs: Vec<FunctorEquation>,
}

impl FunctorPresentation {
    /// Validates and builds a presentation.
    ///
    /// Symbols must be nonempty and pairwise distinct, arities and per
    /// equation variable counts bounded, and every equation side must apply
    /// a declared symbol to exactly as many variables as its arity.
    pub fn new(
        name: impl Into<String>,
        ops: Vec<OpSym>,
        eqs: Vec<FunctorEquation>,
    ) -> Result<Self, FunctorError> {
        let name = name.into();
        if name.is_empty() {
            return Err(FunctorError::InvalidPresentation(
                "name must be nonempty".into(),
            ));
        }
        for (i, op) in ops.iter().enumerate() {
            if op.sym.is_empty() {
                return Err(FunctorError::InvalidPresentation(format!(
                    "ops[{i}]: symbol must be nonempty"
                )));
            }
            if op.arity > MAX_ARITY {
                return Err(FunctorError::InvalidPresentation(format!(
                    "ops[{i}]: arity {} exceeds the limit {MAX_ARITY}",
                    op.arity
                )));
            }
            if ops[..i].iter().any(|o| o.sym == op.sym) {
                return Err(FunctorError::InvalidPresentation(format!(
                    "ops[{i}]: duplicate symbol `{}`",
                    op.sym
                )));
            }
        }
        for (i, eq) in eqs.iter().enumerate() {
            for (side, term) in [("lhs", &eq.lhs), ("rhs", &eq.rhs)] {
                let op = ops.get(term.op).ok_or_else(|| {
                    FunctorError::InvalidPresentation(format!(
                        "eqs[{i}].{side}: operation index {} out of range",
                        term.op
                    ))
                })?;
                if term.args.len() != op.arity {
                    return Err(FunctorError::InvalidPresentation(format!(
                        "eqs[{i}].{side}: `{}` expects {} arguments, got {}",
                        op.sym,
                        op.arity,
                        term.args.len()
                    )));
                }
            }
            if eq.variables().len() > MAX_EQ_VARS {
                return Err(FunctorError::InvalidPresentation(format!(
                    "eqs[{i}]: more than {MAX_EQ_VARS} distinct variables"
                )));
            }
        }
        Ok(FunctorPresentation { name, ops, eqs })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ops(&self) -> &[OpSym] {
        &self.ops
    }

    pub fn eqs(&self) -> &[FunctorEquation] {
        &self.eqs
    }

    /// Parses a presentation from its JSON form.
    pub fn from_json(text: &str) -> Result<Self, FunctorError> {
        serde_json::from_str(text)
            .map_err(|e| FunctorError::InvalidPresentation(e.to_string()))
    }

    /// The JSON form of the presentation, with operation names spelled out.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    op: String,
    args: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct EquationRepr {
    lhs: TermRepr,
    rhs: TermRepr,
}

#[derive(Serialize, Deserialize)]
struct PresentationRepr {
    name: String,
    ops: Vec<OpSym>,
    eqs: Vec<EquationRepr>,
}

impl Serialize for FunctorPresentation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let term = |t: &FlatTerm| TermRepr {
            op: self.ops[t.op].sym.clone(),
            args: t.args.clone(),
        };
        PresentationRepr {
            name: self.name.clone(),
            ops: self.ops.clone(),
            eqs: self
                .eqs
                .iter()
                .map(|eq| EquationRepr {
                    lhs: term(&eq.lhs),
                    rhs: term(&eq.rhs),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FunctorPresentation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PresentationRepr::deserialize(deserializer)?;
        let resolve = |i: usize, side: &str, t: &TermRepr| -> Result<FlatTerm, D::Error> {
            let op = repr
                .ops
                .iter()
                .position(|o| o.sym == t.op)
                .ok_or_else(|| {
                    D::Error::custom(format!("eqs[{i}].{side}.op: unknown symbol `{}`", t.op))
                })?;
            Ok(FlatTerm {
                op,
                args: t.args.clone(),
            })
        };
        let mut eqs = Vec::with_capacity(repr.eqs.len());
        for (i, eq) in repr.eqs.iter().enumerate() {
            eqs.push(FunctorEquation {
                lhs: resolve(i, "lhs", &eq.lhs)?,
                rhs: resolve(i, "rhs", &eq.rhs)?,
            });
        }
        FunctorPresentation::new(repr.name, repr.ops, eqs).map_err(D::Error::custom)
    }
}

/// A closed operation instance: an operation applied to carrier elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermInstance {
    pub op: usize,
    pub args: Vec<Label>,
}

impl TermInstance {
    /// The label naming this instance in a functor value: the operation
    /// index tagging the argument tuple. The label order agrees with the
    /// instance order, so sorted instances yield sorted labels.
    pub fn label(&self) -> Label {
        Label::tagged(self.op, Label::Tuple(self.args.clone()))
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// The evaluated value of a presented functor on one carrier: all operation
/// instances, the congruence closure of the equations over them, and the
/// resulting class representatives.
pub struct FunctorEval {
    carrier: FinSet,
    arities: Vec<usize>,
    op_offsets: Vec<usize>,
    instances: Vec<TermInstance>,
    class_rep: Vec<usize>,
    value: FinSet,
}

impl FunctorEval {
    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    /// The functor value: one label per congruence class, each naming the
    /// least instance of its class.
    pub fn value(&self) -> &FinSet {
        &self.value
    }

    /// All operation instances over the carrier, ascending.
    pub fn instances(&self) -> &[TermInstance] {
        &self.instances
    }

    /// The id of an instance in the ascending enumeration.
    fn instance_id(&self, t: &TermInstance) -> Result<usize, FunctorError> {
        let n = self.carrier.len();
        let arity = *self.arities.get(t.op).ok_or_else(|| {
            FunctorError::Precondition(format!("operation index {} out of range", t.op))
        })?;
        if t.args.len() != arity {
            return Err(FunctorError::Precondition(format!(
                "operation {} expects {arity} arguments, got {}",
                t.op,
                t.args.len()
            )));
        }
        let mut id = self.op_offsets[t.op];
        let mut stride = n.pow(arity as u32);
        for arg in &t.args {
            let i = self
                .carrier
                .index_of(arg)
                .ok_or_else(|| FunctorError::NotInValue {
                    element: arg.to_string(),
                    carrier: self.carrier.to_string(),
                })?;
            stride /= n;
            id += i * stride;
        }
        Ok(id)
    }

    /// The class representative label of an arbitrary instance.
    pub fn class_label(&self, t: &TermInstance) -> Result<Label, FunctorError> {
        let id = self.instance_id(t)?;
        Ok(self.instances[self.class_rep[id]].label())
    }
}

fn evaluate(
    pres: &FunctorPresentation,
    x: &FinSet,
    guard: u64,
) -> Result<FunctorEval, FunctorError> {
    let n = x.len();
    let nu = n as u128;
    let mut needed: u128 = 0;
    for op in &pres.ops {
        needed = needed.saturating_add(nu.saturating_pow(op.arity as u32));
    }
    for eq in &pres.eqs {
        needed = needed.saturating_add(nu.saturating_pow(eq.variables().len() as u32));
    }
    if needed > guard as u128 {
        return Err(FunctorError::GuardExceeded {
            needed,
            limit: guard,
        });
    }

    let mut op_offsets = Vec::with_capacity(pres.ops.len());
    let mut instances = Vec::new();
    for (oi, op) in pres.ops.iter().enumerate() {
        op_offsets.push(instances.len());
        if n == 0 && op.arity > 0 {
            continue;
        }
        let mut idx = vec![0usize; op.arity];
        loop {
            instances.push(TermInstance {
                op: oi,
                args: idx.iter().map(|&i| x.label(i).clone()).collect(),
            });
            let mut k = op.arity;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < n {
                    break;
                }
                idx[k] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }

    let mut uf = UnionFind::new(instances.len());
    let partial = FunctorEval {
        carrier: x.clone(),
        arities: pres.ops.iter().map(|o| o.arity).collect(),
        op_offsets: op_offsets.clone(),
        instances,
        class_rep: Vec::new(),
        value: FinSet::empty(),
    };
    for eq in &pres.eqs {
        let vars = eq.variables();
        if n == 0 && !vars.is_empty() {
            continue;
        }
        let slot = |v: usize| vars.binary_search(&v).expect("variable listed");
        let lhs_slots: Vec<usize> = eq.lhs.args.iter().map(|&v| slot(v)).collect();
        let rhs_slots: Vec<usize> = eq.rhs.args.iter().map(|&v| slot(v)).collect();
        let mut assign = vec![0usize; vars.len()];
        loop {
            let instance = |term: &FlatTerm, slots: &[usize]| TermInstance {
                op: term.op,
                args: slots.iter().map(|&s| x.label(assign[s]).clone()).collect(),
            };
            let a = partial.instance_id(&instance(&eq.lhs, &lhs_slots))?;
            let b = partial.instance_id(&instance(&eq.rhs, &rhs_slots))?;
            uf.union(a, b);
            let mut k = vars.len();
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                assign[k] += 1;
                if assign[k] < n {
                    break;
                }
                assign[k] = 0;
            }
            if assign.iter().all(|&i| i == 0) {
                break;
            }
        }
    }

    let len = partial.instances.len();
    let mut least_of_root = vec![usize::MAX; len];
    for id in 0..len {
        let root = uf.find(id);
        if least_of_root[root] == usize::MAX {
            least_of_root[root] = id;
        }
    }
    let class_rep: Vec<usize> = (0..len).map(|id| least_of_root[uf.find(id)]).collect();
    let value = FinSet::new(
        (0..len)
            .filter(|&id| class_rep[id] == id)
            .map(|id| partial.instances[id].label()),
    )
    .expect("distinct instances have distinct labels");
    Ok(FunctorEval {
        class_rep,
        value,
        ..partial
    })
}

/// A finitary set functor given by object and map actions on finite sets.
///
/// Implementations must be functorial (preserve identities and composition);
/// the test suites verify this exhaustively at small sizes rather than
/// trusting it.
pub trait SetFunctor: Send + Sync {
    fn name(&self) -> String;

    /// The functor value on a carrier.
    fn on_object(&self, x: &FinSet) -> Result<FinSet, FunctorError>;

    /// The functor value on a map; domain and codomain are the values on the
    /// map's domain and codomain.
    fn on_map(&self, f: &FinMap) -> Result<FinMap, FunctorError>;
}

/// A presented functor with an instance guard and a per-carrier cache.
pub struct PresentedFunctor {
    presentation: FunctorPresentation,
    guard: u64,
    cache: Mutex<HashMap<FinSet, Arc<FunctorEval>>>,
    map_cache: Mutex<HashMap<FinMap, FinMap>>,
}

impl PresentedFunctor {
    pub fn new(presentation: FunctorPresentation) -> Self {
        Self::with_guard(presentation, default_guard())
    }

    pub fn with_guard(presentation: FunctorPresentation, guard: u64) -> Self {
        PresentedFunctor {
            presentation,
            guard,
            cache: Mutex::new(HashMap::new()),
            map_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn presentation(&self) -> &FunctorPresentation {
        &self.presentation
    }

    pub fn guard(&self) -> u64 {
        self.guard
    }

    /// Evaluates on a carrier, reusing the cached closure when available.
    /// Concurrent callers may race to fill the cache; the first completed
    /// evaluation wins and evaluation is deterministic, so every caller sees
    /// the same value.
    pub fn eval(&self, x: &FinSet) -> Result<Arc<FunctorEval>, FunctorError> {
        if let Some(hit) = self.cache.lock().expect("cache lock").get(x) {
            return Ok(hit.clone());
        }
        let fresh = Arc::new(evaluate(&self.presentation, x, self.guard)?);
        Ok(self
            .cache
            .lock()
            .expect("cache lock")
            .entry(x.clone())
            .or_insert(fresh)
            .clone())
    }
}

impl fmt::Debug for PresentedFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PresentedFunctor")
            .field("presentation", &self.presentation)
            .field("guard", &self.guard)
            .finish_non_exhaustive()
    }
}

impl SetFunctor for PresentedFunctor {
    fn name(&self) -> String {
        self.presentation.name.clone()
    }

    fn on_object(&self, x: &FinSet) -> Result<FinSet, FunctorError> {
        Ok(self.eval(x)?.value().clone())
    }

    fn on_map(&self, f: &FinMap) -> Result<FinMap, FunctorError> {
        if let Some(hit) = self.map_cache.lock().expect("map cache lock").get(f) {
            return Ok(hit.clone());
        }
        let out = self.compute_on_map(f)?;
        self.map_cache
            .lock()
            .expect("map cache lock")
            .insert(f.clone(), out.clone());
        Ok(out)
    }
}

impl PresentedFunctor {
    fn compute_on_map(&self, f: &FinMap) -> Result<FinMap, FunctorError> {
        let ex = self.eval(f.dom())?;
        let ey = self.eval(f.cod())?;
        let hx = ex.value();
        let hy = ey.value();
        let mut table: Vec<Option<usize>> = vec![None; hx.len()];
        for (id, t) in ex.instances.iter().enumerate() {
            let mut mapped_args = Vec::with_capacity(t.args.len());
            for arg in &t.args {
                mapped_args.push(f.apply(arg)?.clone());
            }
            let target = ey.class_label(&TermInstance {
                op: t.op,
                args: mapped_args,
            })?;
            let src = hx
                .index_of(&ex.instances[ex.class_rep[id]].label())
                .expect("class representative is in the value");
            let tgt = hy.index_of(&target).expect("class label is in the value");
            match table[src] {
                None => table[src] = Some(tgt),
                Some(prev) if prev == tgt => {}
                Some(_) => return Err(FunctorError::NotWellDefined(self.name())),
            }
        }
        let table: Vec<usize> = table
            .into_iter()
            .map(|o| o.expect("every class contains an instance"))
            .collect();
        Ok(FinMap::new(hx.clone(), hy.clone(), table).expect("indices in range"))
    }
}

fn presentation(
    name: &str,
    ops: &[(&str, usize)],
    eqs: &[((usize, &[usize]), (usize, &[usize]))],
) -> FunctorPresentation {
    let ops = ops
        .iter()
        .map(|&(sym, arity)| OpSym {
            sym: sym.into(),
            arity,
        })
        .collect();
    let eqs = eqs
        .iter()
        .map(|&((lop, largs), (rop, rargs))| FunctorEquation {
            lhs: FlatTerm {
                op: lop,
                args: largs.to_vec(),
            },
            rhs: FlatTerm {
                op: rop,
                args: rargs.to_vec(),
            },
        })
        .collect();
    FunctorPresentation::new(name, ops, eqs).expect("builtin presentations are valid")
}

/// The identity functor: one unary symbol, no equations.
pub fn identity_presentation() -> FunctorPresentation {
    presentation("id", &[("v", 1)], &[])
}

/// The almost-constant functor sending the empty carrier to itself and every
/// nonempty carrier to a point: one unary symbol whose values are all equal.
pub fn collapse_presentation() -> FunctorPresentation {
    presentation("c01", &[("u", 1)], &[((0, &[0]), (0, &[1]))])
}

/// The constant singleton functor: one nullary symbol.
pub fn constant_one_presentation() -> FunctorPresentation {
    presentation("constant-1", &[("c", 0)], &[])
}

/// The squaring functor `X × X`: one free binary symbol.
pub fn square_presentation() -> FunctorPresentation {
    presentation("square", &[("p", 2)], &[])
}

/// The doubling functor `X + X`: two free unary symbols.
pub fn double_presentation() -> FunctorPresentation {
    presentation("x-plus-x", &[("l", 1), ("r", 1)], &[])
}

/// The power functor `X^n` as a free presentation with one `n`-ary symbol.
pub fn power_presentation(n: usize) -> FunctorPresentation {
    let ops = vec![OpSym {
        sym: "t".into(),
        arity: n,
    }];
    FunctorPresentation::new(format!("hom:{n}"), ops, Vec::new())
        .expect("power presentations are valid")
}

/// The five named builtin presentations, in corpus order.
pub fn builtin_presentations() -> Vec<FunctorPresentation> {
    vec![
        identity_presentation(),
        collapse_presentation(),
        constant_one_presentation(),
        square_presentation(),
        double_presentation(),
    ]
}

const CORPUS_SEED: u64 = 0x6772_6164_6361_7421;

/// A small random presentation generated from a fixed per-index seed.
/// Deterministic: the same index always yields the same presentation.
pub fn random_presentation(index: u64) -> FunctorPresentation {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ index);
    let n_ops = rng.gen_range(1..=3usize);
    let mut ops = Vec::with_capacity(n_ops);
    for k in 0..n_ops {
        ops.push(OpSym {
            sym: format!("f{k}"),
            arity: rng.gen_range(0..=2usize),
        });
    }
    let n_eqs = rng.gen_range(0..=2usize);
    let mut eqs = Vec::with_capacity(n_eqs);
    for _ in 0..n_eqs {
        let side = |rng: &mut ChaCha8Rng| {
            let op = rng.gen_range(0..n_ops);
            let args = (0..ops[op].arity).map(|_| rng.gen_range(0..3usize)).collect();
            FlatTerm { op, args }
        };
        let lhs = side(&mut rng);
        let rhs = side(&mut rng);
        eqs.push(FunctorEquation { lhs, rhs });
    }
    FunctorPresentation::new(format!("rand-{index:02}"), ops, eqs)
        .expect("generated presentations are valid")
}

/// The standard corpus: the five named presentations followed by ten seeded
/// random ones. This list backs the shipped corpus files and the acceptance
/// sweeps.
pub fn standard_corpus() -> Vec<FunctorPresentation> {
    let mut corpus = builtin_presentations();
    corpus.extend((0..10).map(random_presentation));
    corpus
}

/// Resolves a builtin functor name.
///
/// Accepts the five named presentations (`id`, `c01`, `constant-1`,
/// `square`, `x-plus-x`), power functors `hom:<n>`, and truncated
/// eventually-constant-sequence functors `evconst:<depth>`.
pub fn builtin_functor(spec: &str) -> Result<Box<dyn SetFunctor>, FunctorError> {
    if let Some(depth) = spec.strip_prefix("evconst:") {
        let depth: usize = depth
            .parse()
            .map_err(|_| FunctorError::UnknownBuiltin(spec.to_string()))?;
        return Ok(Box::new(EvConstFunctor::new(depth)));
    }
    if let Some(n) = spec.strip_prefix("hom:") {
        let n: usize = n
            .parse()
            .map_err(|_| FunctorError::UnknownBuiltin(spec.to_string()))?;
        if n > MAX_ARITY {
            return Err(FunctorError::UnknownBuiltin(spec.to_string()));
        }
        return Ok(Box::new(PresentedFunctor::new(power_presentation(n))));
    }
    let named = builtin_presentations()
        .into_iter()
        .find(|p| p.name() == spec)
        .ok_or_else(|| FunctorError::UnknownBuiltin(spec.to_string()))?;
    Ok(Box::new(PresentedFunctor::new(named)))
}
