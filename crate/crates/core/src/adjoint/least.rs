//! Least factoring subobjects of functor elements.
//!
//! Given a functor `H` on finite sets, a carrier `K`, and an element
//! `x` of `H(K)`, a subset `M` of `K` *admits* `x` when `x` lies in the
//! image of `H(incl): H(M) -> H(K)`. When `H` preserves intersections of
//! subobjects, the admitting subsets are closed under intersection, so a
//! least one exists and can be found by descending intersections; without
//! that guarantee a least admitting subset may not exist at all, and the
//! brute-force mode reports a concrete incomparable pair when it does not.

use crate::finset::FinSet;
use crate::functor::{preserves_pullbacks_upto, SetFunctor};
use crate::label::Label;

use super::AdjointError;

/// How to search for the least admitting subobject.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Start from the first admitting subset and intersect away elements
    /// using other admitting subsets. Requires the functor to preserve
    /// intersection squares at the carrier's size; checked up front.
    GradeDescent,
    /// Scan every subset, take the first admitting one in canonical order,
    /// and verify it is below every other admitting subset.
    BruteForce,
}

/// A least-subobject query: which subsets of `carrier` admit `element`
/// of `functor(carrier)`, and which is least.
pub struct LeastFactorQuery<'a> {
    pub functor: &'a dyn SetFunctor,
    pub carrier: FinSet,
    pub element: Label,
    pub mode: SearchMode,
}

/// The result of a least-subobject search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeastFactorResult {
    /// The least admitting subset of the carrier.
    pub subobject: FinSet,
    /// The mode that produced the answer.
    pub method: SearchMode,
    /// The size of the starting subset (the first admitting subset in
    /// canonical order); equals the answer's size when no descent happened.
    pub initial_size: usize,
    /// Sizes after each strict intersection step, in order. Strictly
    /// decreasing, and shorter than `initial_size` since each step removes
    /// at least one element of a finite set.
    pub trace: Vec<usize>,
}

/// Finds the least subset of the carrier through which the element factors.
///
/// In descent mode the precondition (preservation of intersection squares,
/// including empty ones, among subsets of the carrier) is verified first
/// and a failure is reported as [`AdjointError::ModeNotSound`]. In brute
/// force mode no assumption is made; if two admitting subsets have no
/// admitting lower bound the search fails with a witness pair.
pub fn least_fp_subobject(query: &LeastFactorQuery<'_>) -> Result<LeastFactorResult, AdjointError> {
    let h = query.functor;
    let k = &query.carrier;
    let hk = h.on_object(k)?;
    let target = hk.index_of(&query.element).ok_or_else(|| {
        AdjointError::Precondition(format!(
            "element {} is not a value of the functor on the carrier",
            query.element
        ))
    })?;

    // A subset admits the element when the element is hit by the value of
    // the inclusion.
    let admits = |sub: &FinSet| -> Result<bool, AdjointError> {
        let incl = sub.inclusion_into(k)?;
        let hm = h.on_map(&incl)?;
        Ok(hm.table().contains(&target))
    };

    match query.mode {
        SearchMode::BruteForce => {
            let subsets = k.subsets();
            let start = first_admitting(&subsets, &admits)?;
            for other in &subsets {
                if !admits(other)? {
                    continue;
                }
                if !start.is_subset_of(other) {
                    return Err(AdjointError::NoLeastSubobject {
                        first: start.labels().to_vec(),
                        second: other.labels().to_vec(),
                    });
                }
            }
            let initial_size = start.len();
            Ok(LeastFactorResult {
                subobject: start,
                method: SearchMode::BruteForce,
                initial_size,
                trace: Vec::new(),
            })
        }
        SearchMode::GradeDescent => {
            if let Some(failure) = preserves_pullbacks_upto(h, k.len(), false)? {
                return Err(AdjointError::ModeNotSound(failure.to_string()));
            }
            let subsets = k.subsets();
            let start = first_admitting(&subsets, &admits)?;
            let initial_size = start.len();
            let mut current = start;
            let mut trace = Vec::new();
            loop {
                let mut stepped = false;
                for other in &subsets {
                    if current.is_subset_of(other) || !admits(other)? {
                        continue;
                    }
                    let smaller = current.intersection(other);
                    if !admits(&smaller)? {
                        return Err(AdjointError::InvariantBroken(format!(
                            "intersection preservation held but the intersection of two admitting subsets {{{}}} and {{{}}} does not admit the element",
                            current, other
                        )));
                    }
                    current = smaller;
                    trace.push(current.len());
                    stepped = true;
                    break;
                }
                if !stepped {
                    break;
                }
            }
            Ok(LeastFactorResult {
                subobject: current,
                method: SearchMode::GradeDescent,
                initial_size,
                trace,
            })
        }
    }
}

fn first_admitting(
    subsets: &[FinSet],
    admits: &impl Fn(&FinSet) -> Result<bool, AdjointError>,
) -> Result<FinSet, AdjointError> {
    for sub in subsets {
        if admits(sub)? {
            return Ok(sub.clone());
        }
    }
    Err(AdjointError::InvariantBroken(
        "not even the full carrier admits the element".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::{builtin_functor, PresentedFunctor};

    fn both_modes(
        h: &dyn SetFunctor,
        carrier: &FinSet,
        element: &Label,
    ) -> (LeastFactorResult, LeastFactorResult) {
        let descent = least_fp_subobject(&LeastFactorQuery {
            functor: h,
            carrier: carrier.clone(),
            element: element.clone(),
            mode: SearchMode::GradeDescent,
        })
        .unwrap();
        let brute = least_fp_subobject(&LeastFactorQuery {
            functor: h,
            carrier: carrier.clone(),
            element: element.clone(),
            mode: SearchMode::BruteForce,
        })
        .unwrap();
        (descent, brute)
    }

    #[test]
    fn identity_functor_pins_an_element_to_its_singleton() {
        let h = builtin_functor("id").unwrap();
        let k = FinSet::indexed("k", 3);
        let hk = h.on_object(&k).unwrap();
        let x = hk.label(1).clone();
        let (descent, brute) = both_modes(h.as_ref(), &k, &x);
        assert_eq!(descent.subobject, brute.subobject);
        assert_eq!(descent.subobject.len(), 1);
        assert!(descent.subobject.contains(k.label(1)));
    }

    #[test]
    fn constant_functor_needs_nothing() {
        let h = builtin_functor("constant-1").unwrap();
        let k = FinSet::indexed("k", 3);
        let x = h.on_object(&k).unwrap().label(0).clone();
        let (descent, brute) = both_modes(h.as_ref(), &k, &x);
        assert!(descent.subobject.is_empty());
        assert!(brute.subobject.is_empty());
        // The empty set is the first subset scanned, so no descent happens.
        assert!(descent.trace.is_empty());
        assert_eq!(descent.initial_size, 0);
    }

    #[test]
    fn square_functor_needs_both_coordinates() {
        let h = builtin_functor("square").unwrap();
        let k = FinSet::indexed("k", 3);
        let hk = h.on_object(&k).unwrap();
        // Find the value p(k0, k2): both coordinates must survive.
        let x = hk
            .iter()
            .find(|l| l.to_string().contains("k0") && l.to_string().contains("k2"))
            .unwrap()
            .clone();
        let (descent, brute) = both_modes(h.as_ref(), &k, &x);
        assert_eq!(descent.subobject, brute.subobject);
        assert_eq!(descent.subobject.len(), 2);
        assert!(descent.subobject.contains(k.label(0)));
        assert!(descent.subobject.contains(k.label(2)));
    }

    #[test]
    fn collapse_functor_rejects_descent_and_has_no_least_subobject() {
        let h = builtin_functor("c01").unwrap();
        let k = FinSet::indexed("k", 2);
        let x = h.on_object(&k).unwrap().label(0).clone();
        let descent = least_fp_subobject(&LeastFactorQuery {
            functor: h.as_ref(),
            carrier: k.clone(),
            element: x.clone(),
            mode: SearchMode::GradeDescent,
        });
        assert!(matches!(descent, Err(AdjointError::ModeNotSound(_))));
        // Both singletons admit the point, neither contains the other.
        let brute = least_fp_subobject(&LeastFactorQuery {
            functor: h.as_ref(),
            carrier: k.clone(),
            element: x,
            mode: SearchMode::BruteForce,
        });
        match brute {
            Err(AdjointError::NoLeastSubobject { first, second }) => {
                assert_eq!(first.len(), 1);
                assert_eq!(second.len(), 1);
                assert_ne!(first, second);
            }
            other => panic!("expected a no-least-subobject failure, got {other:?}"),
        }
    }

    #[test]
    fn unknown_elements_are_rejected() {
        let h = builtin_functor("id").unwrap();
        let query = LeastFactorQuery {
            functor: h.as_ref(),
            carrier: FinSet::indexed("k", 2),
            element: Label::atom("zz"),
            mode: SearchMode::BruteForce,
        };
        assert!(matches!(
            least_fp_subobject(&query),
            Err(AdjointError::Precondition(_))
        ));
    }

    #[test]
    fn descent_trace_is_strictly_decreasing_and_short() {
        let h = PresentedFunctor::new(crate::functor::power_presentation(3));
        let k = FinSet::indexed("k", 4);
        let hk = h.on_object(&k).unwrap();
        for x in hk.iter() {
            let result = least_fp_subobject(&LeastFactorQuery {
                functor: &h,
                carrier: k.clone(),
                element: x.clone(),
                mode: SearchMode::GradeDescent,
            })
            .unwrap();
            for pair in result.trace.windows(2) {
                assert!(pair[0] > pair[1]);
            }
            if let Some(&first) = result.trace.first() {
                assert!(first < result.initial_size);
            }
            assert!(result.trace.len() <= result.initial_size.saturating_sub(result.subobject.len()));
        }
    }
}
