//! Turns parsed payloads into check results.
//!
//! Every verification failure becomes a failing verdict with a replayable
//! witness in the detail. A resource-guard trip becomes a distinct verdict
//! rather than an error, so an undersized guard never crashes a run.

use gradcat_core::adjoint::{compute_splittings, square_of_subobjects, AdjointError};
use gradcat_core::cat::{verify_grade_axioms, CatMorphism, CatObject};
use gradcat_core::chains::{verify_counterexample_chain, BuiltinChain};
use gradcat_core::functor::{
    builtin_functor, classify_functor, preserves_pullbacks_upto, recover_exponent_form,
    Classification, FunctorError, PresentedFunctor, PullbackFailure, SetFunctor,
};
use gradcat_core::report::{CheckResult, SuiteConfig, Verdict};
use gradcat_core::suites::run_suite;

use crate::spec::{Payload, SpecError};

/// Size bound for the product-preservation sweep behind a classification.
const CLASSIFY_LIMIT: usize = 4;
/// Size bound for recovering and verifying an exponent form.
const RECOVER_LIMIT: usize = 3;
/// Size bound for the pullback sweep that pins down the collapse square.
const COLLAPSE_LIMIT: usize = 2;

/// What dispatching one payload produced. Suite payloads carry their name
/// and echoed configuration so the report can restate them.
#[derive(Debug)]
pub struct Outcome {
    pub suite: Option<String>,
    pub config: Option<SuiteConfig>,
    pub checks: Vec<CheckResult>,
}

impl Outcome {
    fn checks(checks: Vec<CheckResult>) -> Self {
        Outcome {
            suite: None,
            config: None,
            checks,
        }
    }
}

/// The `grade` command: grades the described object and verifies the grade
/// axioms on it. Any other payload kind is a schema violation.
pub fn grade(payload: Payload) -> Result<Outcome, SpecError> {
    match payload {
        Payload::Object(spec) => Ok(Outcome::checks(object_checks(&spec.build()?))),
        _ => Err(SpecError::Schema(
            "payload.kind: the grade command needs an object payload".into(),
        )),
    }
}

/// The `classify` command: dispatches on the payload kind and verifies
/// whatever the payload describes.
pub fn classify(payload: Payload) -> Result<Outcome, SpecError> {
    match payload {
        Payload::Functor(p) => Ok(Outcome::checks(functor_checks(&PresentedFunctor::new(p)))),
        Payload::Builtin(b) => {
            let h = builtin_functor(&b.name)
                .map_err(|e| SpecError::Schema(format!("payload.name: {e}")))?;
            Ok(Outcome::checks(functor_checks(h.as_ref())))
        }
        Payload::Object(spec) => Ok(Outcome::checks(object_checks(&spec.build()?))),
        Payload::Chain(spec) => {
            let which = spec.builtin()?;
            let depth = spec.checked_depth()?;
            Ok(Outcome::checks(chain_checks(which, depth)))
        }
        Payload::Square(spec) => {
            let (first, second) = spec.build()?;
            Ok(Outcome::checks(square_checks(&first, &second)))
        }
        Payload::Suite(spec) => {
            let report = run_suite(spec.suite()?, &spec.config);
            Ok(Outcome {
                suite: Some(report.suite),
                config: Some(report.config),
                checks: report.checks,
            })
        }
    }
}

fn pass(id: &str, detail: String) -> CheckResult {
    CheckResult {
        id: id.to_string(),
        verdict: Verdict::Pass,
        detail,
    }
}

fn fail(id: &str, detail: String) -> CheckResult {
    CheckResult {
        id: id.to_string(),
        verdict: Verdict::Fail,
        detail,
    }
}

/// Guard trips get their own verdict; everything else is a plain failure.
fn error_check(id: &str, e: FunctorError) -> CheckResult {
    let verdict = match e {
        FunctorError::GuardExceeded { .. } => Verdict::GuardTripped,
        _ => Verdict::Fail,
    };
    CheckResult {
        id: id.to_string(),
        verdict,
        detail: e.to_string(),
    }
}

fn object_checks(object: &CatObject) -> Vec<CheckResult> {
    let mut checks = vec![pass(
        "object/grade",
        format!(
            "{} object of size {} has grade {}",
            object.cat().short_name(),
            object.size(),
            object.grade()
        ),
    )];
    match verify_grade_axioms(object) {
        Ok(report) if report.passed() => checks.push(pass(
            "object/grade-axioms",
            format!(
                "monotone and strict over {} subobjects and {} strong quotients",
                report.subobjects_checked, report.quotients_checked
            ),
        )),
        Ok(report) => {
            let v = &report.violations[0];
            checks.push(fail(
                "object/grade-axioms",
                format!(
                    "{:?} witness {} has grade {} against object grade {} (proper: {})",
                    v.kind, v.witness, v.inner_grade, v.object_grade, v.proper
                ),
            ));
        }
        Err(e) => checks.push(fail("object/grade-axioms", e.to_string())),
    }
    checks
}

fn functor_checks(h: &dyn SetFunctor) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    match classify_functor(h, CLASSIFY_LIMIT) {
        Err(e) => checks.push(error_check("classify/regime", e)),
        Ok(Classification::NotProductPreserving(failure)) => checks.push(pass(
            "classify/regime",
            format!("not product preserving: {failure}"),
        )),
        Ok(Classification::CollapseException) => {
            checks.push(pass(
                "classify/regime",
                format!(
                    "collapse regime: empty value on the empty carrier, singleton on \
                     nonempty carriers, products preserved up to size {CLASSIFY_LIMIT}"
                ),
            ));
            checks.push(collapse_square_check(h));
        }
        Ok(c @ (Classification::ConstantOne | Classification::RightAdjoint)) => {
            checks.push(pass(
                "classify/regime",
                format!(
                    "{} regime: finite products preserved up to size {CLASSIFY_LIMIT}",
                    c.kind()
                ),
            ));
            checks.push(exponent_check(h));
        }
    }
    checks
}

fn disjoint(failure: &PullbackFailure) -> bool {
    !failure
        .first_subset
        .iter()
        .any(|l| failure.second_subset.contains(l))
}

/// A collapse-regime functor must preserve every pullback whose subobjects
/// meet and fail on some square of disjoint subobjects.
fn collapse_square_check(h: &dyn SetFunctor) -> CheckResult {
    let id = "classify/collapse-square";
    let meeting = preserves_pullbacks_upto(h, COLLAPSE_LIMIT, true);
    let all = preserves_pullbacks_upto(h, COLLAPSE_LIMIT, false);
    match (meeting, all) {
        (Ok(None), Ok(Some(failure))) if disjoint(&failure) => pass(
            id,
            format!(
                "pullbacks of meeting subobjects preserved up to size {COLLAPSE_LIMIT}; \
                 fails only where the intersection is empty: {failure}"
            ),
        ),
        (Ok(Some(failure)), _) => fail(
            id,
            format!("a square of meeting subobjects is not preserved: {failure}"),
        ),
        (Ok(None), Ok(Some(failure))) => fail(
            id,
            format!("the failing square has meeting subobjects: {failure}"),
        ),
        (Ok(None), Ok(None)) => fail(
            id,
            format!("every pullback up to size {COLLAPSE_LIMIT} is preserved, but the collapse regime must fail on a disjoint pair"),
        ),
        (Err(e), _) | (_, Err(e)) => error_check(id, e),
    }
}

fn exponent_check(h: &dyn SetFunctor) -> CheckResult {
    let id = "classify/exponent-form";
    match recover_exponent_form(h, RECOVER_LIMIT) {
        Ok(form) => pass(
            id,
            format!(
                "naturally a power with exponent of size {} (bijections and naturality \
                 verified at sizes up to {RECOVER_LIMIT})",
                form.exponent.len()
            ),
        ),
        Err(e) => error_check(id, e),
    }
}

fn chain_checks(which: BuiltinChain, depth: usize) -> Vec<CheckResult> {
    let report = verify_counterexample_chain(which, depth);
    let id = format!("chain/{}", report.name);
    if report.no_leg_monic() {
        let last = report
            .witnesses
            .last()
            .expect("a verified chain has witnesses at every level");
        vec![pass(
            &id,
            format!(
                "all {} legs merge a pair; at level {} the leg merges {} and {}",
                report.witnesses.len(),
                last.level,
                last.first,
                last.second
            ),
        )]
    } else {
        vec![fail(
            &id,
            format!(
                "connecting maps valid: {}, cone compatible: {}, witnesses at {} of {} levels",
                report.connecting_maps_valid,
                report.cone_compatible,
                report.witnesses.len(),
                depth + 1
            ),
        )]
    }
}

fn square_checks(first: &CatMorphism, second: &CatMorphism) -> Vec<CheckResult> {
    let id = "square/splittings";
    let verified = square_of_subobjects(first, second).and_then(|sq| {
        compute_splittings(&sq)?.verify(&sq)?;
        Ok(sq)
    });
    match verified {
        Ok(sq) => vec![pass(
            id,
            format!("all three splitting equations hold for the {sq}"),
        )],
        Err(AdjointError::NoSplitting(msg)) => vec![fail(id, msg)],
        Err(e) => vec![fail(id, e.to_string())],
    }
}
