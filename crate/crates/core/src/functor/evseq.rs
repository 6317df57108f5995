//! The truncated eventually-constant-sequence functor.
//!
//! On a carrier `X` the functor at depth `d` consists of all sequences
//! `s: 0,1,2,... -> X` that are constant from position `d` onward. Such a
//! sequence is stored normalized as a finite prefix plus the constant tail
//! value, with the last prefix entry different from the tail. A map acts
//! pointwise and renormalizes. There are exactly `|X|^(d+1)` sequences,
//! since a sequence is determined by its first `d+1` values.
//!
//! The depth truncation is what keeps the functor finite: without it, a
//! value on any nonempty carrier would contain sequences with arbitrarily
//! late stabilization points. [`ev_countable_witness`] measures exactly this
//! escape: it finds the first level of a growing staircase family that no
//! fixed-depth sequence can track.

use crate::finset::{FinMap, FinSet};
use crate::label::Label;

use super::{default_guard, FunctorError, SetFunctor};

/// A sequence that is eventually constant, normalized so the prefix never
/// ends with the tail value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EvSeq {
    prefix: Vec<Label>,
    tail: Label,
}

impl EvSeq {
    /// Builds a sequence from a prefix and a constant tail, trimming any
    /// trailing prefix entries equal to the tail.
    pub fn new(mut prefix: Vec<Label>, tail: Label) -> EvSeq {
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        EvSeq { prefix, tail }
    }

    pub fn prefix(&self) -> &[Label] {
        &self.prefix
    }

    pub fn tail(&self) -> &Label {
        &self.tail
    }

    /// The first position from which the sequence is constant.
    pub fn stabilization_index(&self) -> usize {
        self.prefix.len()
    }

    /// The value at a position.
    pub fn at(&self, i: usize) -> &Label {
        self.prefix.get(i).unwrap_or(&self.tail)
    }

    /// The label naming this sequence in a functor value.
    pub fn label(&self) -> Label {
        Label::Tuple(vec![Label::Tuple(self.prefix.clone()), self.tail.clone()])
    }

    /// Decodes a label produced by [`EvSeq::label`].
    pub fn from_label(l: &Label) -> Option<EvSeq> {
        match l {
            Label::Tuple(parts) if parts.len() == 2 => match &parts[0] {
                Label::Tuple(prefix) => {
                    let tail = parts[1].clone();
                    if prefix.last() == Some(&tail) {
                        return None;
                    }
                    Some(EvSeq {
                        prefix: prefix.clone(),
                        tail,
                    })
                }
                _ => None,
            },
            _ => None,
        }
    }

    /// Applies a map pointwise and renormalizes.
    fn map_along(&self, f: &FinMap) -> Result<EvSeq, FunctorError> {
        let mut prefix = Vec::with_capacity(self.prefix.len());
        for l in &self.prefix {
            prefix.push(f.apply(l)?.clone());
        }
        Ok(EvSeq::new(prefix, f.apply(&self.tail)?.clone()))
    }
}

fn ev_eval_guarded(x: &FinSet, depth: usize, guard: u64) -> Result<FinSet, FunctorError> {
    let needed = (x.len() as u128).saturating_pow(depth as u32 + 1);
    if needed > guard as u128 {
        return Err(FunctorError::GuardExceeded {
            needed,
            limit: guard,
        });
    }
    let n = x.len();
    if n == 0 {
        return Ok(FinSet::empty());
    }
    // A sequence stabilizing by `depth` is determined by its first depth+1
    // values, and every assignment of those values occurs; enumerate the
    // tuples and normalize. Distinct tuples give distinct sequences.
    let mut labels = Vec::with_capacity(n.pow(depth as u32 + 1));
    let mut idx = vec![0usize; depth + 1];
    loop {
        let tail = x.label(idx[depth]).clone();
        let prefix = idx[..depth].iter().map(|&i| x.label(i).clone()).collect();
        labels.push(EvSeq::new(prefix, tail).label());
        let mut k = depth + 1;
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
    Ok(FinSet::new(labels).expect("distinct tuples give distinct sequences"))
}

/// All depth-`d` eventually constant sequences over a carrier, as a functor
/// value with `|X|^(d+1)` elements.
pub fn ev_eval(x: &FinSet, depth: usize) -> Result<FinSet, FunctorError> {
    ev_eval_guarded(x, depth, default_guard())
}

/// The sequence functor at a fixed truncation depth.
pub struct EvConstFunctor {
    depth: usize,
    guard: u64,
}

impl EvConstFunctor {
    pub fn new(depth: usize) -> Self {
        Self::with_guard(depth, default_guard())
    }

    pub fn with_guard(depth: usize, guard: u64) -> Self {
        EvConstFunctor { depth, guard }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }
}

impl SetFunctor for EvConstFunctor {
    fn name(&self) -> String {
        format!("evconst:{}", self.depth)
    }

    fn on_object(&self, x: &FinSet) -> Result<FinSet, FunctorError> {
        ev_eval_guarded(x, self.depth, self.guard)
    }

    fn on_map(&self, f: &FinMap) -> Result<FinMap, FunctorError> {
        let hx = self.on_object(f.dom())?;
        let hy = self.on_object(f.cod())?;
        let mut table = Vec::with_capacity(hx.len());
        for l in hx.iter() {
            let seq = EvSeq::from_label(l).expect("value labels encode sequences");
            let mapped = seq.map_along(f)?;
            table.push(
                hy.index_of(&mapped.label())
                    .expect("mapped sequence stabilizes no later"),
            );
        }
        Ok(FinMap::new(hx, hy, table).expect("indices in range"))
    }
}

/// Finds the first level at which a fixed truncation depth fails to track
/// the staircase family, witnessing that the sequence functor does not
/// preserve limits of growing carriers.
///
/// Level `n` bundles the staircase sequences `s_0, ..., s_n`, where `s_k`
/// lives over the `k+1`-element carrier and stabilizes exactly at position
/// `k`. A single sequence over the product of those carriers projects to
/// every `s_k` precisely when its position-`i` value is the tuple of all
/// `s_k(i)`; that forced candidate stabilizes exactly at position `n`, so it
/// exists at depth `d` exactly when `n <= d`. The function computes the
/// stabilization point of the forced candidate literally at each level and
/// returns the first level where it exceeds the depth, which is always
/// `depth + 1`.
pub fn ev_countable_witness(depth: usize, n_max: usize) -> Result<usize, FunctorError> {
    if n_max <= depth {
        return Err(FunctorError::Precondition(format!(
            "the scan bound {n_max} must exceed the depth {depth} to contain the failing level"
        )));
    }
    for n in 0..=n_max {
        let column = |i: usize| -> Vec<usize> { (0..=n).map(|k| i.min(k)).collect() };
        // Columns are componentwise nondecreasing in i and constant from n
        // onward, so the candidate is constant from m onward exactly when
        // column(m) equals column(n).
        let last = column(n);
        let stabilization = (0..=n)
            .find(|&m| column(m) == last)
            .expect("column(n) equals itself");
        if stabilization > depth {
            return Ok(n);
        }
    }
    Err(FunctorError::Precondition(format!(
        "no failing level up to {n_max}; this cannot happen when n_max > depth"
    )))
}
