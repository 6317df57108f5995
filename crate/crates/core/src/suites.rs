//! Named verification suites bundling the library's checks into
//! reproducible, configurable runs.
//!
//! A suite is a fixed list of checks, each with a stable id. Running a
//! suite never panics on a verification failure: every check body returns
//! a pass detail or a failure description, and resource-guard trips are
//! reported as a distinct verdict rather than an error. Check results are
//! assembled sorted by id, so two runs with the same configuration differ
//! at most in the timing field of the report.

use std::cmp::Ordering;
use std::time::Instant;

use crate::adjoint::{
    canonical_subobject_diagram, compute_splittings, least_fp_subobject, square_of_subobjects,
    verify_absolute_pullback, verify_colimit_property, AdjointError, LeastFactorQuery, SearchMode,
    SquareFunctor,
};
use crate::cat::{
    classify_morphism, enumerate_objects, hom_set, instance_roster, morphism_label, subobjects,
    verify_grade_axioms, CatError, CatId, CatObject,
};
use crate::chains::{
    collapsing_set_chain, find_independence_index, mono_index, random_vec_chain,
    verify_counterexample_chain, BuiltinChain, ChainError, IndependenceSearch, MonoSearch,
};
use crate::finset::{FinSet, FinSetError};
use crate::functor::{
    classify_functor, distinguished_elements, ev_countable_witness, is_distinguished,
    is_distinguished_by_scan, preserves_products_upto, preserves_pullbacks_upto,
    recover_exponent_form, standard_corpus, Classification, EvConstFunctor, FunctorError,
    PresentedFunctor, SetFunctor,
};
use crate::gf::{Gf, GfMatrix};
use crate::report::{CheckResult, SuiteConfig, SuiteReport, Verdict};

/// The suites the command line can run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    /// Grade axioms and same-grade invertibility on every instance.
    Grades,
    /// Chain indices: random independence searches, the collapsing chain,
    /// and stabilization of the evaluation functors.
    Limits,
    /// Classification of the functor corpus and the distinguished-element
    /// criterion.
    FunctorClassify,
    /// Least factoring subobjects (descent against brute force) and
    /// subobject-diagram colimits.
    Adjoint,
    /// Splittings of intersection squares and their preservation.
    Absolute,
    /// The two built-in chains whose legs all merge a pair.
    Counterexamples,
    /// Everything above in one run.
    All,
}

impl SuiteName {
    pub fn parse(s: &str) -> Option<SuiteName> {
        Some(match s {
            "grades" => SuiteName::Grades,
            "limits" => SuiteName::Limits,
            "functor-classify" => SuiteName::FunctorClassify,
            "adjoint" => SuiteName::Adjoint,
            "absolute" => SuiteName::Absolute,
            "counterexamples" => SuiteName::Counterexamples,
            "all" => SuiteName::All,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            SuiteName::Grades => "grades",
            SuiteName::Limits => "limits",
            SuiteName::FunctorClassify => "functor-classify",
            SuiteName::Adjoint => "adjoint",
            SuiteName::Absolute => "absolute",
            SuiteName::Counterexamples => "counterexamples",
            SuiteName::All => "all",
        }
    }

    /// Every runnable suite name, for help texts and validation messages.
    pub fn known() -> &'static [&'static str] {
        &[
            "grades",
            "limits",
            "functor-classify",
            "adjoint",
            "absolute",
            "counterexamples",
            "all",
        ]
    }
}

/// Outcome of a check body: a failure description, or a tripped guard.
enum CheckError {
    Guard(String),
    Fail(String),
}

fn fail(msg: impl Into<String>) -> CheckError {
    CheckError::Fail(msg.into())
}

impl From<FunctorError> for CheckError {
    fn from(e: FunctorError) -> Self {
        match e {
            FunctorError::GuardExceeded { .. } => CheckError::Guard(e.to_string()),
            other => CheckError::Fail(other.to_string()),
        }
    }
}

impl From<CatError> for CheckError {
    fn from(e: CatError) -> Self {
        CheckError::Fail(e.to_string())
    }
}

impl From<ChainError> for CheckError {
    fn from(e: ChainError) -> Self {
        CheckError::Fail(e.to_string())
    }
}

impl From<FinSetError> for CheckError {
    fn from(e: FinSetError) -> Self {
        CheckError::Fail(e.to_string())
    }
}

impl From<AdjointError> for CheckError {
    fn from(e: AdjointError) -> Self {
        match e {
            AdjointError::Functor(inner) => inner.into(),
            other => CheckError::Fail(other.to_string()),
        }
    }
}

fn run_check<F>(checks: &mut Vec<CheckResult>, id: String, body: F)
where
    F: FnOnce() -> Result<String, CheckError>,
{
    let (verdict, detail) = match body() {
        Ok(detail) => (Verdict::Pass, detail),
        Err(CheckError::Guard(detail)) => (Verdict::GuardTripped, detail),
        Err(CheckError::Fail(detail)) => (Verdict::Fail, detail),
    };
    checks.push(CheckResult { id, verdict, detail });
}

/// Runs the named suite with the given configuration.
///
/// Checks execute sequentially and deterministically; the assembled report
/// lists them sorted by check id.
pub fn run_suite(name: SuiteName, config: &SuiteConfig) -> SuiteReport {
    let start = Instant::now();
    let mut checks = Vec::new();
    match name {
        SuiteName::Grades => grades_checks(config, &mut checks),
        SuiteName::Limits => limits_checks(config, &mut checks),
        SuiteName::FunctorClassify => functor_classify_checks(config, &mut checks),
        SuiteName::Adjoint => adjoint_checks(config, &mut checks),
        SuiteName::Absolute => absolute_checks(config, &mut checks),
        SuiteName::Counterexamples => counterexample_checks(config, &mut checks),
        SuiteName::All => {
            grades_checks(config, &mut checks);
            limits_checks(config, &mut checks);
            functor_classify_checks(config, &mut checks);
            adjoint_checks(config, &mut checks);
            absolute_checks(config, &mut checks);
            counterexample_checks(config, &mut checks);
        }
    }
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    SuiteReport {
        suite: name.name().to_string(),
        config: config.clone(),
        checks,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// Builds the standard corpus with the configured instance guard.
fn corpus_functors(guard: u64) -> Vec<PresentedFunctor> {
    standard_corpus()
        .into_iter()
        .map(|p| PresentedFunctor::with_guard(p, guard))
        .collect()
}

/// Vector spaces blow up with dimension, so their sweep is capped lower
/// than the carrier-size bound used by the other instances.
fn max_size_for(cat: &CatId, size: usize) -> usize {
    match cat {
        CatId::VecGf { .. } => size.min(2),
        _ => size,
    }
}

fn grades_checks(config: &SuiteConfig, checks: &mut Vec<CheckResult>) {
    for cat in instance_roster() {
        let max = max_size_for(&cat, config.size);
        let cat_name = cat.short_name();

        let axioms_cat = cat.clone();
        run_check(checks, format!("grades/axioms/{cat_name}"), move || {
            let mut objects = 0usize;
            let mut subs = 0usize;
            let mut quots = 0usize;
            for size in 0..=max {
                for a in enumerate_objects(&axioms_cat, size)? {
                    let report = verify_grade_axioms(&a)?;
                    if let Some(v) = report.violations.first() {
                        return Err(fail(format!(
                            "{:?} violation on the object with carrier {}: witness {}, inner grade {}, object grade {}, proper: {}",
                            v.kind,
                            a.carrier(),
                            morphism_label(&v.witness),
                            v.inner_grade,
                            v.object_grade,
                            v.proper,
                        )));
                    }
                    objects += 1;
                    subs += report.subobjects_checked;
                    quots += report.quotients_checked;
                }
            }
            Ok(format!(
                "{objects} objects of size at most {max}: {subs} subobjects and {quots} strong quotients all satisfy monotonicity and strictness"
            ))
        });

        run_check(checks, format!("grades/invertibility/{cat_name}"), move || {
            let mut all: Vec<CatObject> = Vec::new();
            for size in 0..=max {
                all.extend(enumerate_objects(&cat, size)?);
            }
            let mut pairs = 0usize;
            let mut scanned = 0usize;
            for a in &all {
                for b in &all {
                    if a.grade().partial_cmp(&b.grade()) != Some(Ordering::Equal) {
                        continue;
                    }
                    pairs += 1;
                    for f in hom_set(a, b)? {
                        scanned += 1;
                        let flags = classify_morphism(&f);
                        if (flags.mono || flags.strong_epi) && !flags.iso {
                            return Err(fail(format!(
                                "a same-grade {} from {} to {} is not invertible: {}",
                                if flags.mono { "mono" } else { "strong epi" },
                                a.carrier(),
                                b.carrier(),
                                morphism_label(&f),
                            )));
                        }
                    }
                }
            }
            Ok(format!(
                "{pairs} same-grade object pairs, {scanned} morphisms scanned: every mono and strong epi between them is invertible"
            ))
        });
    }
}

fn limits_checks(config: &SuiteConfig, checks: &mut Vec<CheckResult>) {
    let depth = config.depth.max(1);

    run_check(checks, "limits/independence-random".into(), move || {
        let field = Gf::new(2);
        let mut found = 0usize;
        let mut exhausted = 0usize;
        for seed in 0..100u64 {
            let chain_depth = 1 + (seed as usize % depth);
            let n_vectors = 1 + (seed as usize % 3);
            let (_, cone, vectors) = random_vec_chain(seed, 5, chain_depth, n_vectors);
            let full_rank_at = |k: usize| {
                let q = cone.leg(k).matrix().expect("vector-space leg");
                let cols: Vec<Vec<u64>> = vectors.iter().map(|v| q.mul_vec(v)).collect();
                GfMatrix::from_columns(field, q.rows(), &cols).rank() == vectors.len()
            };
            let rescan = (0..=cone.depth()).find(|&k| full_rank_at(k));
            match find_independence_index(&cone, &vectors)? {
                IndependenceSearch::Found { index, stages } => {
                    if rescan != Some(index) {
                        return Err(fail(format!(
                            "seed {seed}: staged search found level {index} but a full rescan finds {rescan:?}"
                        )));
                    }
                    if stages.windows(2).any(|w| w[0] > w[1]) {
                        return Err(fail(format!(
                            "seed {seed}: stage levels {stages:?} are not monotone"
                        )));
                    }
                    found += 1;
                }
                IndependenceSearch::NoneUpToDepth { .. } => {
                    if let Some(k) = rescan {
                        return Err(fail(format!(
                            "seed {seed}: staged search found nothing but a full rescan finds level {k}"
                        )));
                    }
                    exhausted += 1;
                }
            }
        }
        Ok(format!(
            "100 random truncated chains: {found} independence levels found matching a full rescan, {exhausted} chains independent nowhere up to their depth"
        ))
    });

    run_check(
        checks,
        "limits/mono-index-collapsing-chain".into(),
        move || {
            let (_, cone) = collapsing_set_chain(depth);
            match mono_index(&cone) {
                MonoSearch::Found { index: 1 } => {
                    Ok("the collapsing chain's first monic leg is at level 1, where the two apex points separate".into())
                }
                MonoSearch::Found { index } => Err(fail(format!(
                    "expected the first monic leg at level 1, found it at level {index}"
                ))),
                MonoSearch::NoneUpToDepth { depth, merged } => {
                    let pair = merged.first().expect("a non-monic leg merges a pair");
                    Err(fail(format!(
                        "no monic leg up to depth {depth}; the last leg merges {} and {}",
                        pair.0, pair.1
                    )))
                }
            }
        },
    );

    run_check(checks, "limits/ev-stabilization".into(), || {
        let mut firsts = Vec::new();
        for d in 0..=6usize {
            let witness = ev_countable_witness(d, d + 2)?;
            if witness != d + 1 {
                return Err(fail(format!(
                    "depth {d}: the finite stages first fall short at level {witness}, expected {}",
                    d + 1
                )));
            }
            firsts.push(witness);
        }
        Ok(format!(
            "for depths 0..=6 the finite stages first fall short at levels {firsts:?}, one past the depth each time"
        ))
    });
}

fn counterexample_checks(config: &SuiteConfig, checks: &mut Vec<CheckResult>) {
    let depth = config.depth.clamp(1, 32);
    for which in [BuiltinChain::AbMod2k, BuiltinChain::UnCycles] {
        run_check(checks, format!("counterexamples/{}", which.name()), move || {
            let report = verify_counterexample_chain(which, depth);
            if !report.connecting_maps_valid {
                return Err(fail(
                    "a connecting map violates the defining law of the instance",
                ));
            }
            if !report.cone_compatible {
                return Err(fail(
                    "a leg differs from the connecting map composed with the next leg",
                ));
            }
            if !report.no_leg_monic() {
                return Err(fail("some leg fails to merge a pair"));
            }
            let top = report.witnesses.last().expect("depth at least 1");
            Ok(format!(
                "all {} legs merge a pair; at level {} the leg merges {} and {}",
                report.witnesses.len(),
                top.level,
                top.first,
                top.second,
            ))
        });
    }
}

fn functor_classify_checks(config: &SuiteConfig, checks: &mut Vec<CheckResult>) {
    let functors = corpus_functors(config.guard);
    let classify_limit = (config.size + 1).max(2);
    let recover_limit = config.size.max(2);
    let small = config.size.min(3);

    for h in &functors {
        let name = h.presentation().name().to_string();
        let p = h.presentation().clone();
        let guard = config.guard;
        run_check(checks, format!("functor-classify/corpus/{name}"), move || {
            let h = PresentedFunctor::with_guard(p, guard);
            match classify_functor(&h, classify_limit)? {
                Classification::NotProductPreserving(failure) => {
                    Ok(format!("not product preserving: {failure}"))
                }
                Classification::CollapseException => {
                    if let Some(failure) = preserves_pullbacks_upto(&h, small, true)? {
                        return Err(fail(format!(
                            "a collapse-regime functor must preserve nonempty intersections, but {failure}"
                        )));
                    }
                    let Some(failure) = preserves_pullbacks_upto(&h, small, false)? else {
                        return Err(fail(
                            "a collapse-regime functor must fail some empty intersection, but none failed",
                        ));
                    };
                    if !failure.first_subset.iter().all(|l| !failure.second_subset.contains(l)) {
                        return Err(fail(format!(
                            "a collapse-regime functor may only fail empty intersections, but {failure}"
                        )));
                    }
                    Ok(format!(
                        "collapse regime: nonempty intersections preserved, an empty intersection in a {}-element carrier is not",
                        failure.ambient_size
                    ))
                }
                kind @ (Classification::ConstantOne | Classification::RightAdjoint) => {
                    let form = recover_exponent_form(&h, recover_limit)?;
                    Ok(format!(
                        "{}: naturally a power with exponent of size {}",
                        kind.kind(),
                        form.exponent.len()
                    ))
                }
            }
        });
    }

    let criterion_functors = corpus_functors(config.guard);
    run_check(
        checks,
        "functor-classify/distinguished-criterion".into(),
        move || {
            let mut elements = 0usize;
            let mut distinguished = 0usize;
            for h in &criterion_functors {
                for n in 0..=small {
                    let x = FinSet::indexed("x", n);
                    let hx = h.on_object(&x)?;
                    for element in hx.iter() {
                        let quick = is_distinguished(h, &x, element)?;
                        let literal = is_distinguished_by_scan(h, &x, element, x.len() + 2)?;
                        if quick.distinguished != literal {
                            return Err(fail(format!(
                                "functor {}, carrier size {n}, element {element}: the coproduct test says {} but the literal scan says {literal}",
                                h.presentation().name(),
                                quick.distinguished,
                            )));
                        }
                        elements += 1;
                        if literal {
                            distinguished += 1;
                        }
                    }
                }
            }
            Ok(format!(
                "{elements} elements over carriers of size at most {small}: the coproduct test and the literal quantifier agree, {distinguished} distinguished"
            ))
        },
    );

    let intersection_functors = corpus_functors(config.guard);
    run_check(
        checks,
        "functor-classify/intersection-preservation".into(),
        move || {
            let mut without = 0usize;
            for h in &intersection_functors {
                let mut has_distinguished = false;
                for n in 0..=small {
                    let x = FinSet::indexed("x", n);
                    if !distinguished_elements(h, &x)?.is_empty() {
                        has_distinguished = true;
                        break;
                    }
                }
                if has_distinguished {
                    continue;
                }
                without += 1;
                if let Some(failure) = preserves_pullbacks_upto(h, small, false)? {
                    return Err(fail(format!(
                        "functor {} has no distinguished elements at sizes up to {small} but fails an intersection: {failure}",
                        h.presentation().name(),
                    )));
                }
            }
            Ok(format!(
                "{without} corpus functors without distinguished elements preserve every intersection, the empty ones included"
            ))
        },
    );

    let guard = config.guard;
    run_check(checks, "functor-classify/ev-products".into(), move || {
        for depth in 0..=4usize {
            let h = EvConstFunctor::with_guard(depth, guard);
            if let Some(failure) = preserves_products_upto(&h, small)? {
                return Err(fail(format!("evaluation functor at depth {depth}: {failure}")));
            }
        }
        Ok(format!(
            "evaluation functors at depths 0..=4 preserve binary products and the one-point carrier at sizes up to {small}"
        ))
    });
}

fn adjoint_checks(config: &SuiteConfig, checks: &mut Vec<CheckResult>) {
    let functors = corpus_functors(config.guard);

    for h in &functors {
        let name = h.presentation().name().to_string();
        let p = h.presentation().clone();
        let guard = config.guard;
        let size = config.size;
        run_check(checks, format!("adjoint/least-subobject/{name}"), move || {
            let h = PresentedFunctor::with_guard(p, guard);
            let mut agreements = 0usize;
            let mut refused = 0usize;
            let mut no_least = 0usize;
            for n in 0..=size {
                let k = FinSet::indexed("k", n);
                let sound = preserves_pullbacks_upto(&h, n, false)?.is_none();
                let hk = h.on_object(&k)?;
                for element in hk.iter() {
                    let query = |mode| {
                        least_fp_subobject(&LeastFactorQuery {
                            functor: &h,
                            carrier: k.clone(),
                            element: element.clone(),
                            mode,
                        })
                    };
                    if !sound {
                        match query(SearchMode::GradeDescent) {
                            Err(AdjointError::ModeNotSound(_)) => refused += 1,
                            Ok(_) => {
                                return Err(fail(format!(
                                    "carrier size {n}, element {element}: descent ran although an intersection square is not preserved"
                                )))
                            }
                            Err(other) => return Err(other.into()),
                        }
                        match query(SearchMode::BruteForce) {
                            Ok(_) => {}
                            Err(AdjointError::NoLeastSubobject { .. }) => no_least += 1,
                            Err(other) => return Err(other.into()),
                        }
                        continue;
                    }
                    let brute = query(SearchMode::BruteForce)?;
                    let descent = query(SearchMode::GradeDescent)?;
                    if descent.subobject != brute.subobject {
                        return Err(fail(format!(
                            "carrier size {n}, element {element}: descent finds {} but exhaustive search finds {}",
                            descent.subobject, brute.subobject,
                        )));
                    }
                    let trace = &descent.trace;
                    if trace.windows(2).any(|w| w[0] <= w[1]) {
                        return Err(fail(format!(
                            "carrier size {n}, element {element}: descent trace {trace:?} is not strictly decreasing"
                        )));
                    }
                    if trace.first().is_some_and(|&f| f >= descent.initial_size) {
                        return Err(fail(format!(
                            "carrier size {n}, element {element}: descent trace {trace:?} does not start below the initial size {}",
                            descent.initial_size,
                        )));
                    }
                    let bounded = if descent.initial_size == 0 {
                        trace.is_empty()
                    } else {
                        trace.len() < descent.initial_size
                    };
                    if !bounded {
                        return Err(fail(format!(
                            "carrier size {n}, element {element}: descent trace {trace:?} is too long for initial size {}",
                            descent.initial_size,
                        )));
                    }
                    agreements += 1;
                }
            }
            Ok(format!(
                "carriers of size at most {size}: {agreements} elements where descent matches exhaustive search with a strictly shrinking trace, {refused} descent refusals on unsound sizes, {no_least} elements with no least factorization"
            ))
        });
    }

    let diagram_size = config.size.min(3);
    run_check(checks, "adjoint/subobject-diagram/set".into(), move || {
        let mut ambients = 0usize;
        let mut cocones = 0usize;
        for n in 0..=diagram_size {
            let k = CatObject::set(FinSet::indexed("k", n));
            cocones += diagram_check(&k, diagram_size)?;
            ambients += 1;
        }
        Ok(format!(
            "{ambients} ambient sets: the inclusion cocone is a colimit against {cocones} cocones with apex size at most {diagram_size}"
        ))
    });

    run_check(checks, "adjoint/subobject-diagram/pos".into(), move || {
        let mut ambients = 0usize;
        let mut cocones = 0usize;
        for n in 0..=diagram_size {
            for k in enumerate_objects(&CatId::Pos, n)? {
                cocones += diagram_check(&k, diagram_size)?;
                ambients += 1;
            }
        }
        Ok(format!(
            "{ambients} ambient posets: the inclusion cocone is a colimit against {cocones} cocones with apex size at most {diagram_size}"
        ))
    });
}

/// Shared body for the subobject-diagram checks: builds the canonical
/// diagram, cross-checks its node count against the subobject enumeration,
/// and verifies the colimit universal property.
fn diagram_check(k: &CatObject, apex_limit: usize) -> Result<usize, CheckError> {
    let diagram = canonical_subobject_diagram(k)?;
    let enumerated = subobjects(k)?.len();
    if diagram.nodes().len() != enumerated {
        return Err(fail(format!(
            "ambient {}: the diagram has {} nodes but the subobject enumeration has {enumerated}",
            k.carrier(),
            diagram.nodes().len(),
        )));
    }
    if !diagram.is_directed() {
        return Err(fail(format!(
            "ambient {}: the subobject diagram is not directed",
            k.carrier()
        )));
    }
    let report = verify_colimit_property(&diagram, apex_limit)?;
    if let Some(first) = report.failures.first() {
        return Err(fail(format!("ambient {}: {first}", k.carrier())));
    }
    Ok(report.cocones_checked)
}

fn absolute_checks(config: &SuiteConfig, checks: &mut Vec<CheckResult>) {
    let ambient_max = config.size + 1;

    run_check(checks, "absolute/splittings/set".into(), move || {
        let mut split = 0usize;
        let mut refused = 0usize;
        for n in 0..=ambient_max {
            let ambient = CatObject::set(FinSet::indexed("x", n));
            let monos = subobjects(&ambient)?;
            for first in &monos {
                for second in &monos {
                    let sq = square_of_subobjects(first, second)?;
                    let expect_refusal =
                        sq.apex().carrier().is_empty() && !ambient.carrier().is_empty();
                    match compute_splittings(&sq) {
                        Ok(pair) => {
                            if expect_refusal {
                                return Err(fail(format!(
                                    "a splitting was produced for the empty intersection {sq}"
                                )));
                            }
                            pair.verify(&sq)?;
                            split += 1;
                        }
                        Err(AdjointError::NoSplitting(_)) if expect_refusal => refused += 1,
                        Err(other) => return Err(other.into()),
                    }
                }
            }
        }
        Ok(format!(
            "ambient sets of size at most {ambient_max}: {split} intersection squares split with all three equations verified, {refused} empty intersections rightly refused"
        ))
    });

    run_check(checks, "absolute/splittings/setp".into(), move || {
        let mut split = 0usize;
        for n in 1..=ambient_max {
            let carrier = FinSet::indexed("x", n);
            let base = carrier.label(0).clone();
            let ambient = CatObject::pointed(carrier, &base)?;
            let monos = subobjects(&ambient)?;
            for first in &monos {
                for second in &monos {
                    let sq = square_of_subobjects(first, second)?;
                    let pair = compute_splittings(&sq)?;
                    pair.verify(&sq)?;
                    split += 1;
                }
            }
        }
        Ok(format!(
            "pointed ambients of size at most {ambient_max}: all {split} intersection squares split with all three equations verified"
        ))
    });

    run_check(checks, "absolute/splittings/vec".into(), || {
        let mut split = 0usize;
        for dim in 0..=3usize {
            let ambient = CatObject::space(2, dim);
            let monos = subobjects(&ambient)?;
            for first in &monos {
                for second in &monos {
                    let sq = square_of_subobjects(first, second)?;
                    let pair = compute_splittings(&sq)?;
                    pair.verify(&sq)?;
                    split += 1;
                }
            }
        }
        Ok(format!(
            "linear ambients of dimension at most 3 over the two-element field: all {split} intersection squares split"
        ))
    });

    run_check(checks, "absolute/preservation/hom".into(), || {
        let mut preserved = 0usize;
        for n in 0..=3usize {
            let ambient = CatObject::set(FinSet::indexed("x", n));
            let monos = subobjects(&ambient)?;
            for first in &monos {
                for second in &monos {
                    let sq = square_of_subobjects(first, second)?;
                    for w in 0..=3usize {
                        let source = CatObject::set(FinSet::indexed("w", w));
                        let hom = SquareFunctor::Hom(source);
                        let report = verify_absolute_pullback(&sq, &hom, 2)?;
                        if let Some(first_failure) = report.failures.first() {
                            return Err(fail(format!(
                                "{} on {sq}: {first_failure}",
                                report.functor
                            )));
                        }
                        preserved += 1;
                    }
                }
            }
        }
        let carrier = FinSet::indexed("x", 3);
        let base = carrier.label(0).clone();
        let ambient = CatObject::pointed(carrier, &base)?;
        let monos = subobjects(&ambient)?;
        for first in &monos {
            for second in &monos {
                let sq = square_of_subobjects(first, second)?;
                for w in 1..=3usize {
                    let source_carrier = FinSet::indexed("w", w);
                    let source_base = source_carrier.label(0).clone();
                    let source = CatObject::pointed(source_carrier, &source_base)?;
                    let hom = SquareFunctor::Hom(source);
                    let report = verify_absolute_pullback(&sq, &hom, 2)?;
                    if let Some(first_failure) = report.failures.first() {
                        return Err(fail(format!("{} on {sq}: {first_failure}", report.functor)));
                    }
                    preserved += 1;
                }
            }
        }
        Ok(format!(
            "{preserved} combinations of a representable functor and an intersection square, set-based and pointed, all preserved"
        ))
    });

    let guard = config.guard;
    run_check(checks, "absolute/preservation/engine".into(), move || {
        let functors = corpus_functors(guard);
        let mut preserved = 0usize;
        let mut with_splitting = 0usize;
        for n in 0..=3usize {
            let ambient = CatObject::set(FinSet::indexed("x", n));
            let monos = subobjects(&ambient)?;
            for first in &monos {
                for second in &monos {
                    let sq = square_of_subobjects(first, second)?;
                    if sq.apex().carrier().is_empty() && !ambient.carrier().is_empty() {
                        continue;
                    }
                    for h in &functors {
                        let engine = SquareFunctor::Engine(h);
                        let report = verify_absolute_pullback(&sq, &engine, 2)?;
                        if let Some(first_failure) = report.failures.first() {
                            return Err(fail(format!(
                                "{} on {sq}: {first_failure}",
                                report.functor
                            )));
                        }
                        preserved += 1;
                        if report.splitting_used {
                            with_splitting += 1;
                        }
                    }
                }
            }
        }
        Ok(format!(
            "{preserved} corpus functors applied to split intersection squares, all preserved; {with_splitting} runs also matched the splitting's mediator"
        ))
    });

    run_check(
        checks,
        "absolute/preservation/collapse-failure".into(),
        move || {
            let functors = corpus_functors(guard);
            let collapse = functors
                .iter()
                .find(|h| h.presentation().name() == "c01")
                .expect("the corpus contains the collapse functor");
            let ambient = CatObject::set(FinSet::indexed("x", 2));
            let monos = subobjects(&ambient)?;
            let single = |idx: usize| {
                monos
                    .iter()
                    .find(|m| {
                        m.src().size() == 1
                            && m.underlying().table() == [idx]
                    })
                    .cloned()
                    .ok_or_else(|| fail("missing singleton subobject"))
            };
            let sq = square_of_subobjects(&single(0)?, &single(1)?)?;
            let engine = SquareFunctor::Engine(collapse);
            let report = verify_absolute_pullback(&sq, &engine, 2)?;
            if report.preserved() {
                return Err(fail(format!(
                    "the collapse functor wrongly preserves the empty intersection {sq}"
                )));
            }
            let witness = report.failures.first().expect("a recorded failure").clone();
            Ok(format!(
                "the collapse functor does not preserve the empty intersection of two singletons: {witness}"
            ))
        },
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> SuiteConfig {
        SuiteConfig {
            size: 2,
            depth: 3,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn every_suite_name_parses_and_prints_round_trip() {
        for name in SuiteName::known() {
            let parsed = SuiteName::parse(name).unwrap();
            assert_eq!(parsed.name(), *name);
        }
        assert_eq!(SuiteName::parse("no-such-suite"), None);
    }

    #[test]
    fn limits_suite_passes_and_is_deterministic_modulo_timing() {
        let config = small_config();
        let mut first = run_suite(SuiteName::Limits, &config);
        let mut second = run_suite(SuiteName::Limits, &config);
        assert!(first.passed(), "{:#?}", first.checks);
        first.elapsed_ms = 0;
        second.elapsed_ms = 0;
        assert_eq!(
            serde_json::to_string(&first).unwrap(),
            serde_json::to_string(&second).unwrap()
        );
    }

    #[test]
    fn counterexamples_suite_reports_both_chains() {
        let report = run_suite(SuiteName::Counterexamples, &small_config());
        assert!(report.passed(), "{:#?}", report.checks);
        let ids: Vec<&str> = report.checks.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(
            ids,
            ["counterexamples/ab-mod2k", "counterexamples/un-cycles"]
        );
    }

    #[test]
    fn grades_suite_passes_at_small_sizes() {
        let report = run_suite(SuiteName::Grades, &small_config());
        assert!(report.passed(), "{:#?}", report.checks);
        assert_eq!(report.checks.len(), 2 * instance_roster().len());
        let mut sorted = report.checks.clone();
        sorted.sort_by(|a, b| a.id.cmp(&b.id));
        assert_eq!(report.checks, sorted, "checks must be sorted by id");
    }

    #[test]
    fn functor_classify_suite_passes_at_small_sizes() {
        let report = run_suite(SuiteName::FunctorClassify, &small_config());
        assert!(report.passed(), "{:#?}", report.checks);
        let collapse = report
            .checks
            .iter()
            .find(|c| c.id == "functor-classify/corpus/c01")
            .unwrap();
        assert!(collapse.detail.contains("collapse regime"), "{collapse:?}");
    }

    #[test]
    fn adjoint_suite_passes_at_small_sizes() {
        let report = run_suite(SuiteName::Adjoint, &small_config());
        assert!(report.passed(), "{:#?}", report.checks);
    }

    #[test]
    fn absolute_suite_passes_at_small_sizes() {
        let report = run_suite(SuiteName::Absolute, &small_config());
        assert!(report.passed(), "{:#?}", report.checks);
    }

    #[test]
    fn a_tiny_guard_trips_as_a_verdict_instead_of_an_error() {
        let config = SuiteConfig {
            size: 2,
            depth: 2,
            guard: 1,
        };
        let report = run_suite(SuiteName::FunctorClassify, &config);
        assert!(!report.passed());
        assert!(report
            .checks
            .iter()
            .any(|c| c.verdict == Verdict::GuardTripped));
        assert!(report
            .checks
            .iter()
            .all(|c| c.verdict != Verdict::Fail), "{:#?}", report.checks);
        assert_eq!(report.exit_code(), 4);
    }

    #[test]
    fn the_combined_suite_contains_every_sectioned_check_sorted() {
        let config = SuiteConfig {
            size: 1,
            depth: 2,
            ..SuiteConfig::default()
        };
        let all = run_suite(SuiteName::All, &config);
        let mut expected = 0;
        for name in [
            SuiteName::Grades,
            SuiteName::Limits,
            SuiteName::FunctorClassify,
            SuiteName::Adjoint,
            SuiteName::Absolute,
            SuiteName::Counterexamples,
        ] {
            expected += run_suite(name, &config).checks.len();
        }
        assert_eq!(all.checks.len(), expected);
        let mut sorted = all.checks.clone();
        sorted.sort_by(|a, b| a.id.cmp(&b.id));
        assert_eq!(all.checks, sorted);
        assert_eq!(all.suite, "all");
    }
}
