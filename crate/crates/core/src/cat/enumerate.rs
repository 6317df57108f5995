//! Exhaustive enumeration of objects of bounded size, for sweep-style
//! verification.

use std::collections::BTreeSet;

use crate::finset::FinSet;

use super::{CatError, CatId, CatObject, Monoid};

/// The seven instances with their default parameters: GF(2) for vector
/// spaces, the two-element cyclic group for monoid actions, and a single
/// binary relation symbol for relational structures.
pub fn instance_roster() -> Vec<CatId> {
    vec![
        CatId::Set,
        CatId::SetP,
        CatId::Pos,
        CatId::Bool,
        CatId::VecGf { p: 2 },
        CatId::MSet {
            monoid: Monoid::cyclic(2),
        },
        CatId::OmegaRel { arities: vec![2] },
    ]
}

/// Named monoids accepted in object descriptions: the two-element cyclic
/// group and the two-element monoid with one non-identity idempotent.
pub fn builtin_monoids() -> Vec<(&'static str, Monoid)> {
    vec![
        ("c2", Monoid::cyclic(2)),
        ("c3", Monoid::cyclic(3)),
        ("e2", Monoid::idempotent_pair()),
    ]
}

/// All objects of the instance at exactly the given size, over a canonical
/// carrier. "Size" is the carrier cardinality, except: for powerset
/// algebras it is the atom count, and for vector spaces the dimension.
///
/// Instances whose structure varies (posets, actions, relational
/// structures) are enumerated exhaustively over the fixed carrier, so the
/// list covers every isomorphism class at that size (possibly with
/// several representatives each).
pub fn enumerate_objects(cat: &CatId, size: usize) -> Result<Vec<CatObject>, CatError> {
    let carrier = FinSet::indexed("x", size);
    Ok(match cat {
        CatId::Set => vec![CatObject::set(carrier)],
        CatId::SetP => {
            // There is no empty pointed set, so size zero yields nothing.
            if size == 0 {
                vec![]
            } else {
                vec![CatObject::pointed(carrier.clone(), carrier.label(0))?]
            }
        }
        CatId::Bool => vec![CatObject::boolean(carrier)?],
        CatId::VecGf { p } => vec![CatObject::space(*p, size)],
        CatId::Pos => all_posets(&carrier),
        CatId::MSet { monoid } => all_actions(monoid, &carrier),
        CatId::OmegaRel { arities } => all_relational(arities, &carrier),
    })
}

fn all_posets(carrier: &FinSet) -> Vec<CatObject> {
    let n = carrier.len();
    let strict: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .collect();
    assert!(strict.len() < 22, "poset enumeration too large");
    let mut out = Vec::new();
    'mask: for mask in 0u64..(1 << strict.len()) {
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for (t, &(i, j)) in strict.iter().enumerate() {
            if mask & (1 << t) != 0 {
                le[i * n + j] = true;
            }
        }
        // Partial order: transitive (antisymmetry is forced by excluding
        // both (i,j) and (j,i) below).
        for i in 0..n {
            for j in 0..n {
                if i != j && le[i * n + j] && le[j * n + i] {
                    continue 'mask;
                }
                if le[i * n + j] {
                    for k in 0..n {
                        if le[j * n + k] && !le[i * n + k] {
                            continue 'mask;
                        }
                    }
                }
            }
        }
        out.push(CatObject::poset_from_incidence(carrier.clone(), le));
    }
    out
}

fn all_actions(monoid: &Monoid, carrier: &FinSet) -> Vec<CatObject> {
    let n = carrier.len();
    let m = monoid.size();
    let unit = monoid.unit();
    let non_unit: Vec<usize> = (0..m).filter(|&a| a != unit).collect();
    if n == 0 {
        let act = vec![vec![]; m];
        return vec![CatObject::mset_from_tables(monoid.clone(), carrier.clone(), act)
            .expect("empty action is valid")];
    }
    let rows = non_unit.len();
    let total = (n as u128).pow((n * rows) as u32);
    assert!(total <= 1 << 22, "action enumeration too large");
    let mut out = Vec::new();
    let mut flat = vec![0usize; n * rows];
    loop {
        let mut act = vec![vec![0usize; n]; m];
        act[unit] = (0..n).collect();
        for (r, &a) in non_unit.iter().enumerate() {
            act[a] = flat[r * n..(r + 1) * n].to_vec();
        }
        if let Ok(obj) = CatObject::mset_from_tables(monoid.clone(), carrier.clone(), act) {
            out.push(obj);
        }
        let mut k = flat.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            flat[k] += 1;
            if flat[k] < n {
                break;
            }
            flat[k] = 0;
        }
    }
}

fn all_relational(arities: &[usize], carrier: &FinSet) -> Vec<CatObject> {
    let n = carrier.len();
    // All tuples per symbol, in lexicographic order.
    let all_tuples: Vec<Vec<Vec<usize>>> = arities
        .iter()
        .map(|&a| {
            let mut tuples = Vec::new();
            let mut idx = vec![0usize; a];
            if n == 0 && a > 0 {
                return tuples;
            }
            loop {
                tuples.push(idx.clone());
                let mut d = a;
                loop {
                    if d == 0 {
                        return tuples;
                    }
                    d -= 1;
                    idx[d] += 1;
                    if idx[d] < n {
                        break;
                    }
                    idx[d] = 0;
                }
            }
        })
        .collect();
    let total_bits: usize = all_tuples.iter().map(Vec::len).sum();
    assert!(total_bits < 22, "relational enumeration too large");
    let mut out = Vec::new();
    for mask in 0u64..(1 << total_bits) {
        let mut rels: Vec<BTreeSet<Vec<usize>>> = Vec::with_capacity(arities.len());
        let mut bit = 0;
        for block in &all_tuples {
            let mut set = BTreeSet::new();
            for t in block {
                if mask & (1 << bit) != 0 {
                    set.insert(t.clone());
                }
                bit += 1;
            }
            rels.push(set);
        }
        out.push(CatObject::relational_from_indices(
            arities.to_vec(),
            carrier.clone(),
            rels,
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts_match_known_values() {
        // Frozen: numbers of partial orders on a labeled n-set: 1, 1, 3, 19,
        // 219.
        assert_eq!(all_posets(&FinSet::indexed("x", 0)).len(), 1);
        assert_eq!(all_posets(&FinSet::indexed("x", 1)).len(), 1);
        assert_eq!(all_posets(&FinSet::indexed("x", 2)).len(), 3);
        assert_eq!(all_posets(&FinSet::indexed("x", 3)).len(), 19);
        assert_eq!(all_posets(&FinSet::indexed("x", 4)).len(), 219);
    }

    #[test]
    fn c2_action_counts() {
        // An action of the 2-element cyclic group is an involution; the
        // numbers of involutions on n points are 1, 1, 2, 4, 10.
        let c2 = Monoid::cyclic(2);
        for (n, want) in [(0, 1), (1, 1), (2, 2), (3, 4), (4, 10)] {
            let objs = all_actions(&c2, &FinSet::indexed("x", n));
            assert_eq!(objs.len(), want, "involutions on {n} points");
        }
    }

    #[test]
    fn relational_counts() {
        // One binary symbol on a 2-element carrier: all subsets of the 4
        // possible tuples.
        let objs = all_relational(&[2], &FinSet::indexed("x", 2));
        assert_eq!(objs.len(), 16);
        // A 0-ary symbol has exactly one possible tuple, present or absent.
        let objs = all_relational(&[0], &FinSet::indexed("x", 1));
        assert_eq!(objs.len(), 2);
    }

    #[test]
    fn roster_covers_all_seven_tags() {
        let roster = instance_roster();
        assert_eq!(roster.len(), 7);
        for cat in &roster {
            // Every instance can enumerate size-1 objects (size here means
            // one atom or dimension one for the algebraic instances).
            let objs = enumerate_objects(cat, 1).unwrap();
            assert!(!objs.is_empty());
        }
    }
}
