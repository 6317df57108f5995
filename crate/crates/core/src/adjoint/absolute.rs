//! Verifying that intersection squares stay pullbacks under a functor.
//!
//! A split intersection square is absolute: any functor at all sends it to
//! a pullback square, because the splitting equations are preserved and
//! they force the mediating morphisms to exist and be unique. This module
//! checks that claim literally against two kinds of test functors, engine
//! functors on plain sets and hom functors on any instance, by counting
//! mediators for every commuting pair over every small test apex.

use std::collections::BTreeMap;

use crate::cat::{hom_set, morphism_label, CatId, CatMorphism, CatObject};
use crate::finset::{all_maps, FinMap, FinSet};
use crate::functor::SetFunctor;
use crate::label::Label;

use super::{compute_splittings, AdjointError, IntersectionSquare};

/// A functor applicable to the objects and morphisms of an intersection
/// square, presented through its action on carriers.
pub enum SquareFunctor<'a> {
    /// An equational or builtin functor on plain sets; usable only on
    /// squares whose instance is plain sets.
    Engine(&'a dyn SetFunctor),
    /// The hom functor out of an object of the square's own instance.
    Hom(CatObject),
}

impl SquareFunctor<'_> {
    /// A short name for reports.
    pub fn name(&self) -> String {
        match self {
            SquareFunctor::Engine(h) => h.name(),
            SquareFunctor::Hom(w) => format!("hom({}, -)", w.carrier()),
        }
    }

    fn on_object(&self, x: &CatObject) -> Result<FinSet, AdjointError> {
        match self {
            SquareFunctor::Engine(h) => Ok(h.on_object(x.carrier())?),
            SquareFunctor::Hom(w) => {
                let homs = hom_set(w, x)?;
                Ok(FinSet::new(homs.iter().map(morphism_label))?)
            }
        }
    }

    fn on_morphism(&self, f: &CatMorphism) -> Result<FinMap, AdjointError> {
        match self {
            SquareFunctor::Engine(h) => Ok(h.on_map(&f.underlying())?),
            SquareFunctor::Hom(w) => {
                let dom = self.on_object(f.src())?;
                let cod = self.on_object(f.dst())?;
                let pairs: Vec<(Label, Label)> = hom_set(w, f.src())?
                    .iter()
                    .map(|h| Ok((morphism_label(h), morphism_label(&f.compose(h)?))))
                    .collect::<Result<_, AdjointError>>()?;
                Ok(FinMap::from_pairs(dom, cod, &pairs)?)
            }
        }
    }
}

/// The outcome of checking one functor against one square.
#[derive(Clone, Debug)]
pub struct AbsolutePullbackReport {
    /// The functor's display name.
    pub functor: String,
    /// Whether a splitting was available and its induced mediator was
    /// compared against the counted one.
    pub splitting_used: bool,
    /// Number of test apexes enumerated.
    pub apexes_checked: usize,
    /// Number of commuting pairs whose mediators were counted.
    pub pairs_checked: usize,
    /// Human-readable failure descriptions, in scan order.
    pub failures: Vec<String>,
}

impl AbsolutePullbackReport {
    /// Whether the functor preserved the square on every tested apex.
    pub fn preserved(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks whether the functor sends the square to a pullback square of
/// carriers, by brute force over all test apexes up to the size limit.
///
/// For each apex `T` and each pair `u: T -> FB`, `u': T -> FB'` with
/// `Fm . u = Fm' . u'`, the mediators `v: T -> FC` with `Fi . v = u` and
/// `Fi' . v = u'` are counted elementwise (the choice at each point of `T`
/// is independent), and the count must be exactly one. When the square
/// splits, the retraction route `v = Fe' . u'` is also checked to be that
/// unique mediator.
pub fn verify_absolute_pullback(
    sq: &IntersectionSquare,
    functor: &SquareFunctor<'_>,
    apex_limit: usize,
) -> Result<AbsolutePullbackReport, AdjointError> {
    if matches!(functor, SquareFunctor::Engine(_)) && *sq.ambient().cat() != CatId::Set {
        return Err(AdjointError::Precondition(
            "engine functors act on plain sets; use a hom functor for other instances".into(),
        ));
    }
    let fm = functor.on_morphism(sq.first())?;
    let fm2 = functor.on_morphism(sq.second())?;
    let fi = functor.on_morphism(sq.into_first())?;
    let fi2 = functor.on_morphism(sq.into_second())?;
    let fb = fm.dom().clone();
    let fb2 = fm2.dom().clone();
    let fc = fi.dom().clone();

    let splitting = compute_splittings(sq).ok();
    let fe2 = match &splitting {
        Some(pair) => Some(functor.on_morphism(pair.onto_second())?),
        None => None,
    };

    let mut report = AbsolutePullbackReport {
        functor: functor.name(),
        splitting_used: fe2.is_some(),
        apexes_checked: 0,
        pairs_checked: 0,
        failures: Vec::new(),
    };

    for n in 0..=apex_limit {
        let t = FinSet::indexed("t", n);
        report.apexes_checked += 1;
        // Bucket the right legs by their composite with Fm', so commuting
        // pairs are found without scanning the full product of hom sets.
        let mut buckets: BTreeMap<Vec<usize>, Vec<FinMap>> = BTreeMap::new();
        for u2 in all_maps(&t, &fb2) {
            let composite = fm2.compose(&u2)?;
            buckets.entry(composite.table().to_vec()).or_default().push(u2);
        }
        for u in all_maps(&t, &fb) {
            let composite = fm.compose(&u)?;
            let Some(partners) = buckets.get(composite.table()) else {
                continue;
            };
            for u2 in partners {
                report.pairs_checked += 1;
                check_pair(sq, &fi, &fi2, &fc, &t, &u, u2, fe2.as_ref(), &mut report)?;
            }
        }
    }
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn check_pair(
    sq: &IntersectionSquare,
    fi: &FinMap,
    fi2: &FinMap,
    fc: &FinSet,
    t: &FinSet,
    u: &FinMap,
    u2: &FinMap,
    fe2: Option<&FinMap>,
    report: &mut AbsolutePullbackReport,
) -> Result<(), AdjointError> {
    // Elementwise fibers: the mediator's value at each point of the apex
    // is constrained independently.
    let mut unique: Vec<usize> = Vec::with_capacity(t.len());
    let mut count: u128 = 1;
    for x in 0..t.len() {
        let fiber: Vec<usize> = (0..fc.len())
            .filter(|&c| fi.apply_idx(c) == u.apply_idx(x) && fi2.apply_idx(c) == u2.apply_idx(x))
            .collect();
        count = count.saturating_mul(fiber.len() as u128);
        if fiber.len() == 1 {
            unique.push(fiber[0]);
        }
    }
    if count != 1 {
        report.failures.push(format!(
            "square {sq}: commuting pair over the {}-point apex has {count} mediators",
            t.len()
        ));
        return Ok(());
    }
    let mediator = FinMap::new(t.clone(), fc.clone(), unique)?;
    if let Some(fe2) = fe2 {
        let via_splitting = fe2.compose(u2)?;
        if via_splitting != mediator {
            report.failures.push(format!(
                "square {sq}: the splitting route disagrees with the unique mediator over the {}-point apex",
                t.len()
            ));
        }
    }
    Ok(())
}
