//! Shared helpers for integration tests: a deliberately naive fixpoint
//! oracle for presented-functor evaluation, written without union-find so
//! it shares no code path with the engine under test.

use std::collections::BTreeSet;

use gradcat_core::finset::FinSet;
use gradcat_core::functor::{FlatTerm, FunctorPresentation, TermInstance};
use gradcat_core::label::Label;

/// All operation instances over a carrier, ascending, mirroring the
/// engine's documented order: operations by index, argument tuples in
/// lexicographic carrier order.
pub fn all_instances(p: &FunctorPresentation, carrier: &FinSet) -> Vec<TermInstance> {
    let mut out = Vec::new();
    for (op, sym) in p.ops().iter().enumerate() {
        let mut tuples: Vec<Vec<Label>> = vec![Vec::new()];
        for _ in 0..sym.arity {
            let mut next = Vec::new();
            for t in &tuples {
                for l in carrier.iter() {
                    let mut t = t.clone();
                    t.push(l.clone());
                    next.push(t);
                }
            }
            tuples = next;
        }
        for args in tuples {
            out.push(TermInstance { op, args });
        }
    }
    out
}

fn term_instance(t: &FlatTerm, assignment: &[&Label]) -> TermInstance {
    TermInstance {
        op: t.op,
        args: t.args.iter().map(|&v| assignment[v].clone()).collect(),
    }
}

/// Evaluates a presentation on a carrier by brute force: instantiate every
/// equation under every variable assignment, then close the resulting
/// relation on instances under symmetry and transitivity by repeated
/// sweeps until nothing changes. Returns the partition as a class index
/// per instance (classes numbered by least member).
pub fn fixpoint_partition(p: &FunctorPresentation, carrier: &FinSet) -> Vec<usize> {
    let instances = all_instances(p, carrier);
    let index_of = |t: &TermInstance| -> usize {
        instances
            .iter()
            .position(|u| u == t)
            .expect("equation instances range over the instance list")
    };

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for eq in p.eqs() {
        let mut vars: BTreeSet<usize> = BTreeSet::new();
        vars.extend(eq.lhs.args.iter().copied());
        vars.extend(eq.rhs.args.iter().copied());
        let vars: Vec<usize> = vars.into_iter().collect();
        let slots = vars.iter().copied().max().map_or(0, |m| m + 1);
        // Every assignment of carrier elements to the equation's variables.
        let mut assignments: Vec<Vec<&Label>> = vec![Vec::new()];
        for _ in 0..vars.len() {
            let mut next = Vec::new();
            for a in &assignments {
                for l in carrier.iter() {
                    let mut a = a.clone();
                    a.push(l);
                    next.push(a);
                }
            }
            assignments = next;
        }
        let placeholder = Label::from("unused-variable-slot");
        for a in assignments {
            let mut slots_filled: Vec<&Label> = vec![&placeholder; slots];
            for (v, l) in vars.iter().zip(a) {
                slots_filled[*v] = l;
            }
            let lhs = term_instance(&eq.lhs, &slots_filled);
            let rhs = term_instance(&eq.rhs, &slots_filled);
            pairs.push((index_of(&lhs), index_of(&rhs)));
        }
    }

    // Label propagation to a fixpoint: everyone starts in their own class;
    // each sweep lowers both ends of every related pair to the smaller
    // class label. Termination: labels only decrease.
    let mut class: Vec<usize> = (0..instances.len()).collect();
    loop {
        let mut changed = false;
        for &(i, j) in &pairs {
            let low = class[i].min(class[j]);
            if class[i] != low || class[j] != low {
                class[i] = low;
                class[j] = low;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    class
}

/// The functor value predicted by the fixpoint oracle: the label of the
/// least instance of each class, in instance order.
pub fn fixpoint_value(p: &FunctorPresentation, carrier: &FinSet) -> Vec<Label> {
    let instances = all_instances(p, carrier);
    let class = fixpoint_partition(p, carrier);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (i, t) in instances.iter().enumerate() {
        if seen.insert(class[i]) {
            debug_assert_eq!(class[i], i, "class labels are least members");
            out.push(t.label());
        }
    }
    out
}
