//! Structural analysis of set functors at small carrier sizes.
//!
//! The checks here drive the classification of product-preserving finitary
//! functors: a functor either fails product preservation outright, is
//! constantly a point, collapses every nonempty carrier to a point while
//! vanishing on the empty one, or behaves like a power functor and then
//! also preserves intersections and equalizers. The classifier verifies the
//! side conditions of whichever case it lands in instead of trusting them,
//! and treats a verification failure as a fatal inconsistency.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::finset::{all_maps, coproduct, equalizer, product, FinMap, FinSet};
use crate::label::Label;

use super::{FunctorError, SetFunctor};

/// A parallel pair of coproduct injections separating an element.
#[derive(Clone, Debug)]
pub struct SeparatingPair {
    pub first: FinMap,
    pub second: FinMap,
    pub image_first: Label,
    pub image_second: Label,
}

/// The outcome of a distinguished-element test.
#[derive(Clone, Debug)]
pub struct DistinguishedCheck {
    pub distinguished: bool,
    /// Present exactly when the element is not distinguished.
    pub separator: Option<SeparatingPair>,
}

/// Tests whether an element of a functor value is sent to the same place by
/// every parallel pair out of its carrier.
///
/// One test on the coproduct suffices: any parallel pair `f, g: X -> Y`
/// factors through the copairing `[f, g]: X + X -> Y` as `f = [f,g] . inl`
/// and `g = [f,g] . inr`, so if the two injections agree on the element then
/// functoriality forces every pair to agree on it. The converse is the
/// injections themselves being a parallel pair.
pub fn is_distinguished(
    h: &dyn SetFunctor,
    x: &FinSet,
    element: &Label,
) -> Result<DistinguishedCheck, FunctorError> {
    let hx = h.on_object(x)?;
    if !hx.contains(element) {
        return Err(FunctorError::NotInValue {
            element: element.to_string(),
            carrier: x.to_string(),
        });
    }
    let (_, injections) = coproduct(&[x.clone(), x.clone()]);
    let left = h.on_map(&injections[0])?;
    let right = h.on_map(&injections[1])?;
    let image_first = left.apply(element)?.clone();
    let image_second = right.apply(element)?.clone();
    if image_first == image_second {
        Ok(DistinguishedCheck {
            distinguished: true,
            separator: None,
        })
    } else {
        Ok(DistinguishedCheck {
            distinguished: false,
            separator: Some(SeparatingPair {
                first: injections[0].clone(),
                second: injections[1].clone(),
                image_first,
                image_second,
            }),
        })
    }
}

/// All distinguished elements of the value on a carrier.
pub fn distinguished_elements(
    h: &dyn SetFunctor,
    x: &FinSet,
) -> Result<Vec<Label>, FunctorError> {
    let hx = h.on_object(x)?;
    let mut out = Vec::new();
    for l in hx.iter() {
        if is_distinguished(h, x, l)?.distinguished {
            out.push(l.clone());
        }
    }
    Ok(out)
}

/// The literal quantifier behind the distinguished-element test: checks
/// every parallel pair into every canonical codomain up to the given size.
/// Exponential in the carrier; intended as an independent cross-check for
/// the single-coproduct test at small sizes.
pub fn is_distinguished_by_scan(
    h: &dyn SetFunctor,
    x: &FinSet,
    element: &Label,
    codomain_limit: usize,
) -> Result<bool, FunctorError> {
    let hx = h.on_object(x)?;
    if !hx.contains(element) {
        return Err(FunctorError::NotInValue {
            element: element.to_string(),
            carrier: x.to_string(),
        });
    }
    for m in 0..=codomain_limit {
        let y = FinSet::indexed("y", m);
        let mut images = Vec::new();
        for f in all_maps(x, &y) {
            images.push(h.on_map(&f)?.apply(element)?.clone());
        }
        if images.windows(2).any(|w| w[0] != w[1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Why a functor fails to preserve finite products.
#[derive(Clone, Debug, Serialize)]
pub enum ProductFailure {
    /// The value on the one-point carrier is not a point.
    Terminal { value_size: usize },
    /// Two elements of the value on a product have the same projections.
    NotInjective {
        x_size: usize,
        y_size: usize,
        first: Label,
        second: Label,
    },
    /// A pair of component values is not hit by any element of the value on
    /// the product.
    NotSurjective {
        x_size: usize,
        y_size: usize,
        target_first: Label,
        target_second: Label,
    },
}

impl fmt::Display for ProductFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductFailure::Terminal { value_size } => write!(
                f,
                "value on the one-point carrier has {value_size} elements instead of 1"
            ),
            ProductFailure::NotInjective {
                x_size,
                y_size,
                first,
                second,
            } => write!(
                f,
                "on the {x_size}x{y_size} product, {first} and {second} have equal projections"
            ),
            ProductFailure::NotSurjective {
                x_size,
                y_size,
                target_first,
                target_second,
            } => write!(
                f,
                "on the {x_size}x{y_size} product, the pair ({target_first}, {target_second}) is not a projection image"
            ),
        }
    }
}

/// Checks that the canonical comparison from the value on a binary product
/// to the product of the values is a bijection, for all canonical carriers
/// up to the size limit, plus the one-point carrier.
///
/// Returns the first failure in scan order, or `None` when every comparison
/// is bijective.
pub fn preserves_products_upto(
    h: &dyn SetFunctor,
    size_limit: usize,
) -> Result<Option<ProductFailure>, FunctorError> {
    let (one, _) = product(&[]);
    let h_one = h.on_object(&one)?;
    if h_one.len() != 1 {
        return Ok(Some(ProductFailure::Terminal {
            value_size: h_one.len(),
        }));
    }
    for x_size in 0..=size_limit {
        for y_size in 0..=size_limit {
            let x = FinSet::indexed("x", x_size);
            let y = FinSet::indexed("y", y_size);
            let (p, projections) = product(&[x.clone(), y.clone()]);
            let hp = h.on_object(&p)?;
            let hx = h.on_object(&x)?;
            let hy = h.on_object(&y)?;
            let first = h.on_map(&projections[0])?;
            let second = h.on_map(&projections[1])?;
            let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for i in 0..hp.len() {
                let pair = (first.apply_idx(i), second.apply_idx(i));
                if let Some(&prev) = seen.get(&pair) {
                    return Ok(Some(ProductFailure::NotInjective {
                        x_size,
                        y_size,
                        first: hp.label(prev).clone(),
                        second: hp.label(i).clone(),
                    }));
                }
                seen.insert(pair, i);
            }
            if seen.len() != hx.len() * hy.len() {
                for u in 0..hx.len() {
                    for v in 0..hy.len() {
                        if !seen.contains_key(&(u, v)) {
                            return Ok(Some(ProductFailure::NotSurjective {
                                x_size,
                                y_size,
                                target_first: hx.label(u).clone(),
                                target_second: hy.label(v).clone(),
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// A failing intersection square: an ambient carrier, two subsets, and what
/// went wrong after applying the functor.
#[derive(Clone, Debug, Serialize)]
pub struct PullbackFailure {
    pub ambient_size: usize,
    pub first_subset: Vec<Label>,
    pub second_subset: Vec<Label>,
    pub reason: String,
}

impl fmt::Display for PullbackFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |labels: &[Label]| {
            labels
                .iter()
                .map(Label::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "intersection square of {{{}}} and {{{}}} in the {}-element carrier is not preserved: {}",
            names(&self.first_subset),
            names(&self.second_subset),
            self.ambient_size,
            self.reason
        )
    }
}

/// Checks that the functor sends every intersection square of subsets of a
/// canonical carrier (up to the size limit) to a pullback square: the value
/// on the intersection must map bijectively onto the fiber product of the
/// values on the two subsets over the ambient value.
///
/// With `nonempty_only` set, squares whose intersection is empty are
/// skipped; this is the regime where collapse-style functors still preserve
/// the square.
pub fn preserves_pullbacks_upto(
    h: &dyn SetFunctor,
    size_limit: usize,
    nonempty_only: bool,
) -> Result<Option<PullbackFailure>, FunctorError> {
    for ambient_size in 0..=size_limit {
        let b = FinSet::indexed("b", ambient_size);
        let subsets = b.subsets();
        for s in &subsets {
            for t in &subsets {
                let c = s.intersection(t);
                if nonempty_only && c.is_empty() {
                    continue;
                }
                let failure = |reason: String| PullbackFailure {
                    ambient_size,
                    first_subset: s.labels().to_vec(),
                    second_subset: t.labels().to_vec(),
                    reason,
                };
                let hm = h.on_map(&s.inclusion_into(&b)?)?;
                let hm2 = h.on_map(&t.inclusion_into(&b)?)?;
                let hi = h.on_map(&c.inclusion_into(s)?)?;
                let hi2 = h.on_map(&c.inclusion_into(t)?)?;
                let mut fiber: BTreeSet<(usize, usize)> = BTreeSet::new();
                for u in 0..hm.dom().len() {
                    for v in 0..hm2.dom().len() {
                        if hm.apply_idx(u) == hm2.apply_idx(v) {
                            fiber.insert((u, v));
                        }
                    }
                }
                let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
                for i in 0..hi.dom().len() {
                    let pair = (hi.apply_idx(i), hi2.apply_idx(i));
                    if !fiber.contains(&pair) {
                        return Ok(Some(failure(format!(
                            "image of {} does not commute over the ambient value",
                            hi.dom().label(i)
                        ))));
                    }
                    if !seen.insert(pair) {
                        return Ok(Some(failure(format!(
                            "two intersection classes share the fiber pair of {}",
                            hi.dom().label(i)
                        ))));
                    }
                }
                if seen.len() != fiber.len() {
                    let missing = fiber
                        .iter()
                        .find(|pair| !seen.contains(pair))
                        .expect("some fiber pair is uncovered");
                    return Ok(Some(failure(format!(
                        "fiber pair ({}, {}) is not the image of any intersection class",
                        hm.dom().label(missing.0),
                        hm2.dom().label(missing.1)
                    ))));
                }
            }
        }
    }
    Ok(None)
}

/// A failing equalizer square: the parallel pair as label graphs and what
/// went wrong after applying the functor.
#[derive(Clone, Debug, Serialize)]
pub struct EqualizerFailure {
    pub x_size: usize,
    pub y_size: usize,
    pub first: Vec<(Label, Label)>,
    pub second: Vec<(Label, Label)>,
    pub reason: String,
}

fn graph(f: &FinMap) -> Vec<(Label, Label)> {
    (0..f.dom().len())
        .map(|i| {
            (
                f.dom().label(i).clone(),
                f.cod().label(f.apply_idx(i)).clone(),
            )
        })
        .collect()
}

/// Checks that the functor sends every equalizer of maps between canonical
/// carriers (up to the size limit) to an equalizer: the value on the
/// agreement subset must map bijectively onto the agreement subset of the
/// values.
pub fn preserves_equalizers_upto(
    h: &dyn SetFunctor,
    size_limit: usize,
) -> Result<Option<EqualizerFailure>, FunctorError> {
    for x_size in 0..=size_limit {
        for y_size in 0..=size_limit {
            let x = FinSet::indexed("x", x_size);
            let y = FinSet::indexed("y", y_size);
            let maps = all_maps(&x, &y);
            for f in &maps {
                for g in &maps {
                    let (e, inclusion) = equalizer(f, g)?;
                    let h_incl = h.on_map(&inclusion)?;
                    let hf = h.on_map(f)?;
                    let hg = h.on_map(g)?;
                    let failure = |reason: String| EqualizerFailure {
                        x_size,
                        y_size,
                        first: graph(f),
                        second: graph(g),
                        reason,
                    };
                    let agreement: BTreeSet<usize> = (0..hf.dom().len())
                        .filter(|&i| hf.apply_idx(i) == hg.apply_idx(i))
                        .collect();
                    let mut image: BTreeSet<usize> = BTreeSet::new();
                    for i in 0..h_incl.dom().len() {
                        let target = h_incl.apply_idx(i);
                        if !agreement.contains(&target) {
                            return Ok(Some(failure(format!(
                                "image of {} does not equalize the pair",
                                h_incl.dom().label(i)
                            ))));
                        }
                        if !image.insert(target) {
                            return Ok(Some(failure(format!(
                                "two classes over the agreement subset collide at {}",
                                h_incl.cod().label(target)
                            ))));
                        }
                    }
                    if image.len() != agreement.len() {
                        let missing = agreement
                            .iter()
                            .find(|i| !image.contains(i))
                            .expect("some agreeing element is uncovered");
                        return Ok(Some(failure(format!(
                            "agreeing element {} is not covered by the value on the equalizer",
                            hf.dom().label(*missing)
                        ))));
                    }
                    let _ = e;
                }
            }
        }
    }
    Ok(None)
}

/// The classification of a finitary set functor at a size limit.
#[derive(Clone, Debug, Serialize)]
pub enum Classification {
    /// Product preservation already fails at the sizes scanned.
    NotProductPreserving(ProductFailure),
    /// Constantly a one-point value, including on the empty carrier.
    ConstantOne,
    /// Empty on the empty carrier, a distinguished point everywhere else.
    CollapseException,
    /// Behaves like a power functor: products, intersections (including
    /// empty ones), and equalizers all preserved at the sizes scanned.
    RightAdjoint,
}

impl Classification {
    pub fn kind(&self) -> &'static str {
        match self {
            Classification::NotProductPreserving(_) => "not-product-preserving",
            Classification::ConstantOne => "constant-one",
            Classification::CollapseException => "collapse-exception",
            Classification::RightAdjoint => "right-adjoint",
        }
    }
}

/// Classifies a functor by its behavior on carriers up to the size limit.
///
/// Product-preserving functors fall into exactly three families: constant
/// points, the collapse-to-point exception that vanishes on the empty
/// carrier, and functors that preserve all finite limits. The classifier
/// decides the case from the value on the empty carrier and the
/// distinguished-element test on the one-point value, then verifies the
/// case's defining properties at every scanned size. A failed verification
/// is reported as a [`FunctorError::TheoremViolation`] because it cannot
/// happen for a functor that genuinely preserves finite products.
pub fn classify_functor(
    h: &dyn SetFunctor,
    size_limit: usize,
) -> Result<Classification, FunctorError> {
    if size_limit < 2 {
        return Err(FunctorError::Precondition(
            "classification needs a size limit of at least 2".into(),
        ));
    }
    if let Some(failure) = preserves_products_upto(h, size_limit)? {
        return Ok(Classification::NotProductPreserving(failure));
    }
    let h_empty = h.on_object(&FinSet::empty())?;
    if !h_empty.is_empty() {
        for size in 0..=size_limit {
            let value = h.on_object(&FinSet::indexed("x", size))?;
            if value.len() != 1 {
                return Err(FunctorError::TheoremViolation(format!(
                    "functor `{}` preserves products and is nonempty on the empty carrier, yet its value at size {size} has {} elements instead of 1",
                    h.name(),
                    value.len()
                )));
            }
        }
        return Ok(Classification::ConstantOne);
    }
    let (one, _) = product(&[]);
    let h_one = h.on_object(&one)?;
    let point = h_one.label(0).clone();
    if is_distinguished(h, &one, &point)?.distinguished {
        for size in 1..=size_limit {
            let value = h.on_object(&FinSet::indexed("x", size))?;
            if value.len() != 1 {
                return Err(FunctorError::TheoremViolation(format!(
                    "functor `{}` has a distinguished point on the one-point carrier, yet its value at size {size} has {} elements instead of 1",
                    h.name(),
                    value.len()
                )));
            }
        }
        return Ok(Classification::CollapseException);
    }
    if let Some(failure) = preserves_pullbacks_upto(h, size_limit, false)? {
        return Err(FunctorError::TheoremViolation(format!(
            "functor `{}` preserves products with no distinguished point, yet an intersection square fails: {}",
            h.name(),
            failure.reason
        )));
    }
    if let Some(failure) = preserves_equalizers_upto(h, size_limit)? {
        return Err(FunctorError::TheoremViolation(format!(
            "functor `{}` preserves products with no distinguished point, yet an equalizer fails: {}",
            h.name(),
            failure.reason
        )));
    }
    Ok(Classification::RightAdjoint)
}

/// A verified presentation of a functor as a power functor: the exponent
/// carrier and the element of its value inducing the natural bijection
/// `hom(A, X) -> HX`, `f` to `Hf(u)`, checked at all sizes up to the limit.
#[derive(Clone, Debug, Serialize)]
pub struct ExponentForm {
    pub exponent: FinSet,
    pub universal_element: Label,
    pub size_limit: usize,
}

fn log2_exact(n: usize) -> Option<usize> {
    if n == 0 || !n.is_power_of_two() {
        return None;
    }
    Some(n.trailing_zeros() as usize)
}

fn induces_natural_bijection(
    h: &dyn SetFunctor,
    exponent: &FinSet,
    u: &Label,
    size_limit: usize,
) -> Result<bool, FunctorError> {
    let transfer = |f: &FinMap| -> Result<Label, FunctorError> {
        Ok(h.on_map(f)?.apply(u)?.clone())
    };
    for size in 0..=size_limit {
        let x = FinSet::indexed("x", size);
        let hx = h.on_object(&x)?;
        let mut seen = BTreeSet::new();
        let maps = all_maps(exponent, &x);
        if maps.len() != hx.len() {
            return Ok(false);
        }
        for f in &maps {
            if !seen.insert(transfer(f)?) {
                return Ok(false);
            }
        }
    }
    // Naturality of the transfer: mapping forward commutes with
    // postcomposition. This holds automatically for a functorial action,
    // but the certificate checks it rather than assuming functoriality.
    for x_size in 0..=size_limit {
        for y_size in 0..=size_limit {
            let x = FinSet::indexed("x", x_size);
            let y = FinSet::indexed("y", y_size);
            for g in all_maps(&x, &y) {
                let hg = h.on_map(&g)?;
                for f in all_maps(exponent, &x) {
                    let via_value = hg.apply(&transfer(&f)?)?.clone();
                    let via_hom = transfer(&g.compose(&f).expect("composable"))?;
                    if via_value != via_hom {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Recovers the power-functor form of a functor that preserves finite
/// limits at small sizes.
///
/// The exponent size is read off the value on a two-element carrier, which
/// a power functor sends to a set of size `2^|A|`. The universal element is
/// found by scanning the value on the candidate exponent for an element
/// whose transfers are bijective at every size up to the limit; the first
/// such element in canonical order is returned, so the result is
/// deterministic.
pub fn recover_exponent_form(
    h: &dyn SetFunctor,
    size_limit: usize,
) -> Result<ExponentForm, FunctorError> {
    let two = FinSet::indexed("x", 2);
    let on_two = h.on_object(&two)?.len();
    let a = log2_exact(on_two).ok_or_else(|| {
        FunctorError::NotExponential(format!(
            "value size {on_two} on a two-element carrier is not a power of two"
        ))
    })?;
    for size in 0..=size_limit {
        let value = h.on_object(&FinSet::indexed("x", size))?.len();
        let expected = size.pow(a as u32);
        if value != expected {
            return Err(FunctorError::NotExponential(format!(
                "value at size {size} has {value} elements, a power functor with exponent {a} needs {expected}"
            )));
        }
    }
    let exponent = FinSet::indexed("e", a);
    let ha = h.on_object(&exponent)?;
    for u in ha.iter() {
        if induces_natural_bijection(h, &exponent, u, size_limit)? {
            return Ok(ExponentForm {
                exponent,
                universal_element: u.clone(),
                size_limit,
            });
        }
    }
    Err(FunctorError::NotExponential(
        "no element of the value on the candidate exponent induces a natural bijection".into(),
    ))
}
