//! Exhaustive checks of the grade axioms on a single object: the grade is
//! monotone along subobjects and strong quotients, strictly along proper
//! (non-invertible) ones.

use serde::Serialize;

use super::{
    classify_morphism, strong_quotients, subobjects, CatError, CatMorphism, CatObject, GradeValue,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ViolationKind {
    Subobject,
    StrongQuotient,
}

/// A morphism violating monotonicity or strictness of the grade.
#[derive(Clone, Debug, Serialize)]
pub struct GradeViolation {
    pub kind: ViolationKind,
    pub witness: CatMorphism,
    /// Grade of the subobject or quotient.
    pub inner_grade: GradeValue,
    /// Grade of the object under test.
    pub object_grade: GradeValue,
    /// Whether the witness is proper (not invertible).
    pub proper: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradeAxiomReport {
    pub object: CatObject,
    pub subobjects_checked: usize,
    pub quotients_checked: usize,
    pub violations: Vec<GradeViolation>,
}

impl GradeAxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks, for every subobject `B >-> A`, that `grade B <= grade A`, with
/// strict inequality when the mono is proper, and dually for every strong
/// quotient `A ->> B`.
pub fn verify_grade_axioms(a: &CatObject) -> Result<GradeAxiomReport, CatError> {
    let object_grade = a.grade();
    let mut violations = Vec::new();
    let subs = subobjects(a)?;
    let quots = strong_quotients(a)?;
    let subobjects_checked = subs.len();
    let quotients_checked = quots.len();
    for (kind, witness, inner) in subs
        .into_iter()
        .map(|m| {
            let g = m.src().grade();
            (ViolationKind::Subobject, m, g)
        })
        .chain(quots.into_iter().map(|e| {
            let g = e.dst().grade();
            (ViolationKind::StrongQuotient, e, g)
        }))
    {
        let proper = !classify_morphism(&witness).iso;
        let monotone = inner.value() <= object_grade.value();
        let strict = inner.value() < object_grade.value();
        if !monotone || (proper && !strict) {
            violations.push(GradeViolation {
                kind,
                witness,
                inner_grade: inner,
                object_grade: object_grade.clone(),
                proper,
            });
        }
    }
    Ok(GradeAxiomReport {
        object: a.clone(),
        subobjects_checked,
        quotients_checked,
        violations,
    })
}
