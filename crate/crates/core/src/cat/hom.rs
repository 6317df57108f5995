//! Exhaustive hom-set enumeration.
//!
//! For table-based instances this is a backtracking search over image
//! assignments in carrier order, pruning with instance constraints as soon
//! as both endpoints of a constraint are assigned. The result order is the
//! lexicographic order of the underlying tables (for vector spaces: of the
//! row-major matrix entries), so it is deterministic and matches what a
//! filter over [`crate::finset::all_maps`] would produce. An integration
//! test checks exactly that agreement.

use crate::finset::FinMap;
use crate::gf::GfMatrix;

use super::{CatError, CatId, CatMorphism, CatObject, Structure};

/// All morphisms from `a` to `b`, in a deterministic order.
pub fn hom_set(a: &CatObject, b: &CatObject) -> Result<Vec<CatMorphism>, CatError> {
    if a.cat() != b.cat() {
        return Err(CatError::InstanceMismatch(
            a.cat().short_name(),
            b.cat().short_name(),
        ));
    }
    Ok(match a.cat() {
        CatId::VecGf { p } => vec_homs(a, b, *p),
        CatId::Bool => bool_homs(a, b),
        _ => table_homs(a, b),
    })
}

fn vec_homs(a: &CatObject, b: &CatObject, p: u64) -> Vec<CatMorphism> {
    let field = crate::gf::Gf::new(p);
    let rows = b.dim().unwrap();
    let cols = a.dim().unwrap();
    let cells = rows * cols;
    let mut out = Vec::new();
    let mut entries = vec![0u64; cells];
    loop {
        let mut m = GfMatrix::zero(field, rows, cols);
        for (k, &e) in entries.iter().enumerate() {
            m[(k / cols, k % cols)] = e;
        }
        out.push(CatMorphism::trusted_matrix(a, b, m));
        // Odometer increment in row-major order, most significant first.
        let mut k = cells;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            entries[k] += 1;
            if entries[k] < p {
                break;
            }
            entries[k] = 0;
        }
    }
}

/// Boolean-algebra homs between powerset algebras correspond exactly to
/// functions of atoms in the opposite direction: `g: atoms(B) -> atoms(A)`
/// induces the preimage map on subsets, and every hom arises from a unique
/// such `g`. Enumeration is over `g` in lexicographic order.
fn bool_homs(a: &CatObject, b: &CatObject) -> Vec<CatMorphism> {
    let atoms_a = a.atoms().unwrap();
    let atoms_b = b.atoms().unwrap();
    let a_masks = a.subset_masks().unwrap();
    crate::finset::all_maps(atoms_b, atoms_a)
        .into_iter()
        .map(|g| {
            let table = a_masks
                .iter()
                .map(|&mask| {
                    let mut image_mask: u32 = 0;
                    for t in 0..atoms_b.len() {
                        if mask & (1 << g.apply_idx(t)) != 0 {
                            image_mask |= 1 << t;
                        }
                    }
                    let label = super::subset_label(atoms_b, image_mask);
                    b.carrier().index_of(&label).expect("subset is in the powerset")
                })
                .collect();
            let map = FinMap::new(a.carrier().clone(), b.carrier().clone(), table)
                .expect("preimage map is total");
            CatMorphism::trusted_table(a, b, map)
        })
        .collect()
}

fn table_homs(a: &CatObject, b: &CatObject) -> Vec<CatMorphism> {
    let n = a.size();
    let m = b.size();
    // For the relational instance, group the source tuples by their largest
    // element so each is checked as soon as it is fully assigned. Tuples of
    // 0-ary symbols constrain nothing assignable and are checked up front.
    let tuples_by_max: Vec<Vec<(usize, &Vec<usize>)>> = match (a.structure(), b.structure()) {
        (Structure::Relations { rels }, Structure::Relations { rels: r2 }) => {
            let mut by_max = vec![Vec::new(); n];
            for (s, tuples) in rels.iter().enumerate() {
                for t in tuples {
                    match t.iter().copied().max() {
                        Some(max) => by_max[max].push((s, t)),
                        None => {
                            if !r2[s].contains(t) {
                                return Vec::new();
                            }
                        }
                    }
                }
            }
            by_max
        }
        _ => Vec::new(),
    };
    if n == 0 {
        return vec![CatMorphism::trusted_table(
            a,
            b,
            FinMap::new(a.carrier().clone(), b.carrier().clone(), vec![]).unwrap(),
        )];
    }
    if m == 0 {
        return Vec::new();
    }
    let consistent = |table: &[usize], k: usize| -> bool {
        let fk = table[k];
        match (a.structure(), b.structure()) {
            (Structure::Plain, _) => true,
            (Structure::Pointed { base }, _) => k != *base || fk == b.base_index().unwrap(),
            (Structure::Order { .. }, _) => (0..=k).all(|j| {
                (!a.le(j, k) || b.le(table[j], fk)) && (!a.le(k, j) || b.le(fk, table[j]))
            }),
            (Structure::Action { act }, _) => {
                let b_act = b.action_tables().unwrap();
                act.iter().enumerate().all(|(mi, row)| {
                    (row[k] > k || table[row[k]] == b_act[mi][fk])
                        && (0..=k).all(|x| row[x] != k || fk == b_act[mi][table[x]])
                })
            }
            (Structure::Relations { .. }, Structure::Relations { rels: r2 }) => tuples_by_max[k]
                .iter()
                .all(|(s, t)| r2[*s].contains(&t.iter().map(|&x| table[x]).collect::<Vec<_>>())),
            _ => unreachable!("instances were checked equal"),
        }
    };
    let mut out = Vec::new();
    let mut table = vec![0usize; n];
    let mut k = 0usize;
    // Depth-first scan: table[k] runs through 0..m at each level.
    loop {
        if consistent(&table, k) {
            if k + 1 == n {
                let map = FinMap::new(a.carrier().clone(), b.carrier().clone(), table.clone())
                    .expect("assignment is a total map");
                out.push(CatMorphism::trusted_table(a, b, map));
            } else {
                k += 1;
                table[k] = 0;
                continue;
            }
        }
        // Advance: increment table[k], backtracking when it wraps.
        loop {
            table[k] += 1;
            if table[k] < m {
                break;
            }
            if k == 0 {
                return out;
            }
            k -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{classify_morphism, Monoid};
    use crate::finset::FinSet;

    fn atoms(names: &[&str]) -> FinSet {
        FinSet::atoms(names.iter().copied()).unwrap()
    }

    #[test]
    fn set_homs_count() {
        let a = CatObject::set(atoms(&["1", "2"]));
        let b = CatObject::set(atoms(&["1", "2", "3"]));
        assert_eq!(hom_set(&a, &b).unwrap().len(), 9);
        assert_eq!(hom_set(&b, &a).unwrap().len(), 8);
    }

    #[test]
    fn empty_source_and_target() {
        let e = CatObject::set(FinSet::empty());
        let b = CatObject::set(atoms(&["1"]));
        assert_eq!(hom_set(&e, &b).unwrap().len(), 1);
        assert_eq!(hom_set(&b, &e).unwrap().len(), 0);
        assert_eq!(hom_set(&e, &e).unwrap().len(), 1);
    }

    #[test]
    fn pos_homs_chain_to_chain() {
        // Frozen: monotone self-maps of the 2-chain; 3 of the 4 functions
        // (the flip is not monotone).
        let chain = CatObject::poset(atoms(&["a", "b"]), &[("a".into(), "b".into())]).unwrap();
        assert_eq!(hom_set(&chain, &chain).unwrap().len(), 3);
    }

    #[test]
    fn pointed_homs_fix_base() {
        let a = CatObject::pointed(atoms(&["*", "x"]), &"*".into()).unwrap();
        // Frozen: x can go anywhere, * is fixed: 2 morphisms.
        assert_eq!(hom_set(&a, &a).unwrap().len(), 2);
    }

    #[test]
    fn mset_homs_are_equivariant() {
        // C2 acting on {x,y} by swap: equivariant self-maps are the identity
        // and the swap itself.
        let m = Monoid::cyclic(2);
        let a = CatObject::mset(
            m,
            atoms(&["x", "y"]),
            &[vec!["x".into(), "y".into()], vec!["y".into(), "x".into()]],
        )
        .unwrap();
        let homs = hom_set(&a, &a).unwrap();
        assert_eq!(homs.len(), 2);
        assert!(homs.iter().all(|h| classify_morphism(h).iso));
    }

    #[test]
    fn vec_homs_are_all_matrices() {
        let v1 = CatObject::space(2, 1);
        let v2 = CatObject::space(2, 2);
        assert_eq!(hom_set(&v1, &v2).unwrap().len(), 4);
        assert_eq!(hom_set(&v2, &v2).unwrap().len(), 16);
    }

    #[test]
    fn bool_homs_match_atom_functions() {
        let b1 = CatObject::boolean(atoms(&["u"])).unwrap();
        let b2 = CatObject::boolean(atoms(&["s", "t"])).unwrap();
        // Homs 2^{s,t} -> 2^{u} correspond to functions {u} -> {s,t}.
        assert_eq!(hom_set(&b2, &b1).unwrap().len(), 2);
        // Homs 2^{u} -> 2^{s,t} correspond to functions {s,t} -> {u}.
        assert_eq!(hom_set(&b1, &b2).unwrap().len(), 1);
    }

    #[test]
    fn relational_homs_preserve_tuples() {
        // Loop at x in the target, plain edge in the source.
        let src = CatObject::relational(
            vec![2],
            atoms(&["a", "b"]),
            &[vec![vec!["a".into(), "b".into()]]],
        )
        .unwrap();
        let dst = CatObject::relational(
            vec![2],
            atoms(&["x", "y"]),
            &[vec![vec!["x".into(), "x".into()]]],
        )
        .unwrap();
        // Both a and b must land on x.
        assert_eq!(hom_set(&src, &dst).unwrap().len(), 1);
    }

    #[test]
    fn hom_order_is_deterministic() {
        let a = CatObject::set(atoms(&["1", "2"]));
        let homs = hom_set(&a, &a).unwrap();
        let tables: Vec<Vec<usize>> = homs
            .iter()
            .map(|h| h.underlying().table().to_vec())
            .collect();
        assert_eq!(
            tables,
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
    }
}
