//! Exhaustive subobject and strong-quotient enumeration, and pullbacks of
//! pairs of monos.
//!
//! Subobjects are returned as monos into the given object, one per
//! isomorphism class, with a canonical domain built from the data that
//! classifies the class in each instance:
//!
//! * `Set`: subsets of the carrier;
//! * `SetP`: subsets containing the base point;
//! * `Pos`: a subset together with any partial order contained in the
//!   induced one;
//! * `Bool`: partitions of the atom set (contravariantly, quotients of it);
//! * `VecGf`: subspaces in canonical echelon bases;
//! * `MSet`: action-closed subsets;
//! * `OmegaRel`: a subset together with any subfamily of the induced tuples.
//!
//! Strong quotients are returned as strong epis out of the object:
//!
//! * `Set`, `SetP`: partitions of the carrier;
//! * `Pos`: partitions whose projected order closes to an antisymmetric
//!   relation;
//! * `Bool`: subsets of the atom set (contravariantly, subsets);
//! * `VecGf`: quotients by each subspace, presented by a canonical
//!   projection matrix;
//! * `MSet`: action-compatible partitions;
//! * `OmegaRel`: all partitions, with image relations.

use std::collections::BTreeSet;

use crate::finset::{FinMap, FinSet};
use crate::gf::{self, GfMatrix};
use crate::label::Label;

use super::{classify_morphism, CatError, CatId, CatMorphism, CatObject};

/// All partitions of `{0..n}` as element-to-block tables, blocks numbered in
/// first-appearance order; deterministic (restricted growth strings in
/// lexicographic order).
pub(crate) fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(k: usize, n: usize, max_used: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max_used + 1 {
            cur[k] = b;
            rec(k + 1, n, max_used.max(b), cur, out);
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    cur[0] = 0;
    rec(1, n, 0, &mut cur, &mut out);
    out
}

fn block_count(partition: &[usize]) -> usize {
    partition.iter().copied().max().map_or(0, |m| m + 1)
}

/// Canonical quotient data for a partition of a carrier: the set of block
/// representative labels (least member of each block) and the projection
/// table.
fn partition_quotient(carrier: &FinSet, partition: &[usize]) -> (FinSet, Vec<usize>) {
    let k = block_count(partition);
    let mut reps = vec![usize::MAX; k];
    for (i, &b) in partition.iter().enumerate() {
        if reps[b] == usize::MAX {
            reps[b] = i;
        }
    }
    let rep_labels = FinSet::new(reps.iter().map(|&i| carrier.label(i).clone()))
        .expect("block representatives are distinct");
    let table = partition
        .iter()
        .map(|&b| {
            rep_labels
                .index_of(carrier.label(reps[b]))
                .expect("representative is in the quotient carrier")
        })
        .collect();
    (rep_labels, table)
}

/// All subobjects of `a`, one mono per isomorphism class.
pub fn subobjects(a: &CatObject) -> Result<Vec<CatMorphism>, CatError> {
    let mut out = Vec::new();
    match a.cat() {
        CatId::Set => {
            for s in a.carrier().subsets() {
                let mono = s.inclusion_into(a.carrier())?;
                out.push(CatMorphism::trusted_table(&CatObject::set(s), a, mono));
            }
        }
        CatId::SetP => {
            let base = a.base_label().unwrap().clone();
            for s in a.carrier().subsets() {
                if !s.contains(&base) {
                    continue;
                }
                let sub = CatObject::pointed(s.clone(), &base)?;
                out.push(CatMorphism::trusted_table(
                    &sub,
                    a,
                    s.inclusion_into(a.carrier())?,
                ));
            }
        }
        CatId::Pos => {
            for s in a.carrier().subsets() {
                let k = s.len();
                let ambient: Vec<usize> = s
                    .iter()
                    .map(|l| a.carrier().index_of(l).unwrap())
                    .collect();
                // Strict comparable pairs inherited from the ambient order.
                let induced: Vec<(usize, usize)> = (0..k)
                    .flat_map(|i| (0..k).map(move |j| (i, j)))
                    .filter(|&(i, j)| i != j && a.le(ambient[i], ambient[j]))
                    .collect();
                for mask in 0u64..(1 << induced.len()) {
                    let mut le = vec![false; k * k];
                    for i in 0..k {
                        le[i * k + i] = true;
                    }
                    for (t, &(i, j)) in induced.iter().enumerate() {
                        if mask & (1 << t) != 0 {
                            le[i * k + j] = true;
                        }
                    }
                    if !is_transitive(&le, k) {
                        continue;
                    }
                    let sub = CatObject::poset_from_incidence(s.clone(), le);
                    out.push(CatMorphism::trusted_table(
                        &sub,
                        a,
                        s.inclusion_into(a.carrier())?,
                    ));
                }
            }
        }
        CatId::Bool => {
            let atoms = a.atoms().unwrap();
            for partition in partitions(atoms.len()) {
                out.push(bool_sub_from_partition(a, &partition)?);
            }
        }
        CatId::VecGf { p } => {
            let field = gf::Gf::new(*p);
            let dim = a.dim().unwrap();
            for basis in gf::all_subspaces(field, dim) {
                let sub = CatObject::space(*p, basis.len());
                let mono = GfMatrix::from_columns(field, dim, &basis);
                out.push(CatMorphism::trusted_matrix(&sub, a, mono));
            }
        }
        CatId::MSet { monoid } => {
            let act = a.action_tables().unwrap().to_vec();
            for s in a.carrier().subsets() {
                let ambient: Vec<usize> = s
                    .iter()
                    .map(|l| a.carrier().index_of(l).unwrap())
                    .collect();
                let closed = ambient
                    .iter()
                    .all(|&x| act.iter().all(|row| ambient.contains(&row[x])));
                if !closed {
                    continue;
                }
                let sub_act: Vec<Vec<usize>> = act
                    .iter()
                    .map(|row| {
                        ambient
                            .iter()
                            .map(|&x| {
                                ambient
                                    .iter()
                                    .position(|&y| y == row[x])
                                    .expect("subset is action-closed")
                            })
                            .collect()
                    })
                    .collect();
                let sub = CatObject::mset_from_tables(monoid.clone(), s.clone(), sub_act)?;
                out.push(CatMorphism::trusted_table(
                    &sub,
                    a,
                    s.inclusion_into(a.carrier())?,
                ));
            }
        }
        CatId::OmegaRel { arities } => {
            let rels = a.relation_sets().unwrap().to_vec();
            for s in a.carrier().subsets() {
                let ambient: Vec<usize> = s
                    .iter()
                    .map(|l| a.carrier().index_of(l).unwrap())
                    .collect();
                // Induced tuples per symbol, re-indexed into the subset.
                let induced: Vec<Vec<Vec<usize>>> = rels
                    .iter()
                    .map(|tuples| {
                        tuples
                            .iter()
                            .filter(|t| t.iter().all(|x| ambient.contains(x)))
                            .map(|t| {
                                t.iter()
                                    .map(|x| ambient.iter().position(|y| y == x).unwrap())
                                    .collect::<Vec<usize>>()
                            })
                            .collect()
                    })
                    .collect();
                // Every subfamily of the induced tuples is a subobject.
                let counts: Vec<usize> = induced.iter().map(Vec::len).collect();
                let total_bits: usize = counts.iter().sum();
                assert!(total_bits < 40, "relational subobject enumeration too large");
                for mask in 0u64..(1 << total_bits) {
                    let mut chosen: Vec<BTreeSet<Vec<usize>>> = Vec::with_capacity(rels.len());
                    let mut bit = 0;
                    for block in &induced {
                        let mut set = BTreeSet::new();
                        for t in block {
                            if mask & (1 << bit) != 0 {
                                set.insert(t.clone());
                            }
                            bit += 1;
                        }
                        chosen.push(set);
                    }
                    let sub =
                        CatObject::relational_from_indices(arities.clone(), s.clone(), chosen);
                    out.push(CatMorphism::trusted_table(
                        &sub,
                        a,
                        s.inclusion_into(a.carrier())?,
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn is_transitive(le: &[bool], n: usize) -> bool {
    for i in 0..n {
        for j in 0..n {
            if le[i * n + j] {
                for k in 0..n {
                    if le[j * n + k] && !le[i * n + k] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The subalgebra of a powerset algebra classified by a partition of its
/// atoms: the powerset of the blocks, included by sending a set of blocks to
/// its union.
fn bool_sub_from_partition(a: &CatObject, partition: &[usize]) -> Result<CatMorphism, CatError> {
    let atoms = a.atoms().unwrap();
    let k = block_count(partition);
    let mut block_masks = vec![0u32; k];
    for (i, &b) in partition.iter().enumerate() {
        block_masks[b] |= 1 << i;
    }
    let (reps, _) = partition_quotient(atoms, partition);
    let sub = CatObject::boolean(reps.clone())?;
    let mono = FinMap::from_fn(sub.carrier().clone(), a.carrier().clone(), |l| {
        let rep_mask = super::subset_mask(&reps, l);
        let mut union_mask: u32 = 0;
        for (b, &bm) in block_masks.iter().enumerate() {
            // Block order matches representative order only up to sorting,
            // so translate through the representative's position.
            let rep_idx = reps
                .index_of(atoms.label(partition.iter().position(|&x| x == b).unwrap()))
                .unwrap();
            if rep_mask & (1 << rep_idx) != 0 {
                union_mask |= bm;
            }
        }
        super::subset_label(atoms, union_mask)
    })
    .expect("block unions are subsets of the atoms");
    Ok(CatMorphism::trusted_table(&sub, a, mono))
}

/// All strong quotients of `a`, one strong epi per isomorphism class.
pub fn strong_quotients(a: &CatObject) -> Result<Vec<CatMorphism>, CatError> {
    let mut out = Vec::new();
    match a.cat() {
        CatId::Set => {
            for partition in partitions(a.size()) {
                let (reps, table) = partition_quotient(a.carrier(), &partition);
                let q = CatObject::set(reps.clone());
                let map = FinMap::new(a.carrier().clone(), reps, table)?;
                out.push(CatMorphism::trusted_table(a, &q, map));
            }
        }
        CatId::SetP => {
            let base = a.base_index().unwrap();
            for partition in partitions(a.size()) {
                let (reps, table) = partition_quotient(a.carrier(), &partition);
                let q = CatObject::pointed(reps.clone(), reps.label(table[base]))?;
                let map = FinMap::new(a.carrier().clone(), reps, table)?;
                out.push(CatMorphism::trusted_table(a, &q, map));
            }
        }
        CatId::Pos => {
            let n = a.size();
            for partition in partitions(n) {
                let (reps, table) = partition_quotient(a.carrier(), &partition);
                let k = reps.len();
                let mut le = vec![false; k * k];
                for b in 0..k {
                    le[b * k + b] = true;
                }
                for i in 0..n {
                    for j in 0..n {
                        if a.le(i, j) {
                            le[table[i] * k + table[j]] = true;
                        }
                    }
                }
                super::transitive_close(&mut le, k);
                let antisymmetric =
                    (0..k).all(|i| (0..k).all(|j| i == j || !(le[i * k + j] && le[j * k + i])));
                if !antisymmetric {
                    continue;
                }
                let q = CatObject::poset_from_incidence(reps.clone(), le);
                let map = FinMap::new(a.carrier().clone(), reps, table)?;
                out.push(CatMorphism::trusted_table(a, &q, map));
            }
        }
        CatId::Bool => {
            let atoms = a.atoms().unwrap();
            for kept in atoms.subsets() {
                let q = CatObject::boolean(kept.clone())?;
                let map = FinMap::from_fn(a.carrier().clone(), q.carrier().clone(), |l| {
                    let Label::Tuple(members) = l else {
                        unreachable!("powerset labels are tuples")
                    };
                    Label::Tuple(
                        members.iter().filter(|m| kept.contains(m)).cloned().collect(),
                    )
                })
                .expect("intersections land in the sub-powerset");
                out.push(CatMorphism::trusted_table(a, &q, map));
            }
        }
        CatId::VecGf { p } => {
            let field = gf::Gf::new(*p);
            let dim = a.dim().unwrap();
            let pool = gf::all_vectors(field, dim);
            for kernel in gf::all_subspaces(field, dim) {
                let kdim = kernel.len();
                let ext = gf::extend_basis(field, dim, &kernel, &pool);
                debug_assert_eq!(kdim + ext.len(), dim);
                let mut cols = kernel.clone();
                cols.extend(ext);
                let basis = GfMatrix::from_columns(field, dim, &cols);
                let inv = invert(&basis);
                // Rows past the kernel block form the canonical projection.
                let mut data = Vec::with_capacity((dim - kdim) * dim);
                for r in kdim..dim {
                    for c in 0..dim {
                        data.push(inv[(r, c)]);
                    }
                }
                let proj = GfMatrix::new(field, dim - kdim, dim, data);
                let q = CatObject::space(*p, dim - kdim);
                out.push(CatMorphism::trusted_matrix(a, &q, proj));
            }
        }
        CatId::MSet { monoid } => {
            let act = a.action_tables().unwrap().to_vec();
            for partition in partitions(a.size()) {
                let compatible = act.iter().all(|row| {
                    (0..a.size()).all(|x| {
                        (0..a.size()).all(|y| {
                            partition[x] != partition[y] || partition[row[x]] == partition[row[y]]
                        })
                    })
                });
                if !compatible {
                    continue;
                }
                let (reps, table) = partition_quotient(a.carrier(), &partition);
                let k = reps.len();
                let mut rep_of_block = vec![usize::MAX; k];
                for (i, &b) in table.iter().enumerate() {
                    if rep_of_block[b] == usize::MAX {
                        rep_of_block[b] = i;
                    }
                }
                let q_act: Vec<Vec<usize>> = act
                    .iter()
                    .map(|row| (0..k).map(|b| table[row[rep_of_block[b]]]).collect())
                    .collect();
                let q = CatObject::mset_from_tables(monoid.clone(), reps.clone(), q_act)?;
                let map = FinMap::new(a.carrier().clone(), reps, table)?;
                out.push(CatMorphism::trusted_table(a, &q, map));
            }
        }
        CatId::OmegaRel { arities } => {
            let rels = a.relation_sets().unwrap().to_vec();
            for partition in partitions(a.size()) {
                let (reps, table) = partition_quotient(a.carrier(), &partition);
                let q_rels: Vec<BTreeSet<Vec<usize>>> = rels
                    .iter()
                    .map(|tuples| {
                        tuples
                            .iter()
                            .map(|t| t.iter().map(|&x| table[x]).collect())
                            .collect()
                    })
                    .collect();
                let q = CatObject::relational_from_indices(arities.clone(), reps.clone(), q_rels);
                let map = FinMap::new(a.carrier().clone(), reps, table)?;
                out.push(CatMorphism::trusted_table(a, &q, map));
            }
        }
    }
    Ok(out)
}

fn invert(m: &GfMatrix) -> GfMatrix {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let field = m.field();
    let cols: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut e = vec![0u64; n];
            e[i] = 1;
            m.solve(&e).expect("matrix is invertible")
        })
        .collect();
    GfMatrix::from_columns(field, n, &cols)
}

/// The pullback (intersection) of two monos with a common target.
#[derive(Clone, Debug)]
pub struct MonoPullback {
    pub apex: CatObject,
    pub to_first: CatMorphism,
    pub to_second: CatMorphism,
}

/// Computes the pullback of two monos `m1: B1 -> A`, `m2: B2 -> A`. The
/// apex is the intersection of the two images, carried back along the monos
/// (for powerset algebras: the join of the two atom partitions; for vector
/// spaces: the intersection subspace via a kernel computation).
pub fn pullback_of_monos(m1: &CatMorphism, m2: &CatMorphism) -> Result<MonoPullback, CatError> {
    if m1.dst() != m2.dst() {
        return Err(CatError::CarrierMismatch(
            "monos do not share a target".into(),
        ));
    }
    if !classify_morphism(m1).mono || !classify_morphism(m2).mono {
        return Err(CatError::NotAMorphism(
            "pullback of monos requires monos".into(),
        ));
    }
    let a = m1.dst();
    match a.cat() {
        CatId::VecGf { p } => {
            let field = gf::Gf::new(*p);
            let mat1 = m1.matrix().unwrap();
            let mat2 = m2.matrix().unwrap();
            let n = mat1.rows();
            let c1 = mat1.cols();
            let c2 = mat2.cols();
            // Solutions of M1 u = M2 v are the kernel of [M1 | -M2].
            let mut data = Vec::with_capacity(n * (c1 + c2));
            for r in 0..n {
                for c in 0..c1 {
                    data.push(mat1[(r, c)]);
                }
                for c in 0..c2 {
                    data.push(field.neg(mat2[(r, c)]));
                }
            }
            let block = GfMatrix::new(field, n, c1 + c2, data);
            let kernel = block.kernel_basis();
            let k = kernel.len();
            let apex = CatObject::space(*p, k);
            let u_cols: Vec<Vec<u64>> = kernel.iter().map(|w| w[..c1].to_vec()).collect();
            let v_cols: Vec<Vec<u64>> = kernel.iter().map(|w| w[c1..].to_vec()).collect();
            let to_first =
                CatMorphism::trusted_matrix(&apex, m1.src(), GfMatrix::from_columns(field, c1, &u_cols));
            let to_second =
                CatMorphism::trusted_matrix(&apex, m2.src(), GfMatrix::from_columns(field, c2, &v_cols));
            Ok(MonoPullback {
                apex,
                to_first,
                to_second,
            })
        }
        CatId::Bool => bool_pullback(m1, m2),
        _ => table_pullback(m1, m2),
    }
}

fn table_pullback(m1: &CatMorphism, m2: &CatMorphism) -> Result<MonoPullback, CatError> {
    let a = m1.dst();
    let f1 = m1.underlying();
    let f2 = m2.underlying();
    let im1 = f1.image();
    let im2 = f2.image();
    let common = im1.intersection(&im2);
    // Pull each intersection element back along the (injective) monos.
    let pre = |f: &FinMap, l: &Label| -> usize {
        let target = f.cod().index_of(l).unwrap();
        f.table()
            .iter()
            .position(|&y| y == target)
            .expect("intersection element is in the image")
    };
    let b1 = m1.src();
    let b2 = m2.src();
    let apex: CatObject = match a.cat() {
        CatId::Set => CatObject::set(common.clone()),
        CatId::SetP => CatObject::pointed(common.clone(), a.base_label().unwrap())?,
        CatId::Pos => {
            let k = common.len();
            let mut le = vec![false; k * k];
            for i in 0..k {
                for j in 0..k {
                    let p1 = (pre(&f1, common.label(i)), pre(&f1, common.label(j)));
                    let p2 = (pre(&f2, common.label(i)), pre(&f2, common.label(j)));
                    le[i * k + j] = b1.le(p1.0, p1.1) && b2.le(p2.0, p2.1);
                }
            }
            CatObject::poset_from_incidence(common.clone(), le)
        }
        CatId::MSet { monoid } => {
            let act_a = a.action_tables().unwrap();
            let act: Vec<Vec<usize>> = act_a
                .iter()
                .map(|row| {
                    common
                        .iter()
                        .map(|l| {
                            let ai = a.carrier().index_of(l).unwrap();
                            common
                                .index_of(a.carrier().label(row[ai]))
                                .expect("intersection of action-closed images is action-closed")
                        })
                        .collect()
                })
                .collect();
            CatObject::mset_from_tables(monoid.clone(), common.clone(), act)?
        }
        CatId::OmegaRel { arities } => {
            let r1 = b1.relation_sets().unwrap();
            let r2 = b2.relation_sets().unwrap();
            let rels: Vec<BTreeSet<Vec<usize>>> = (0..arities.len())
                .map(|s| {
                    // A tuple of intersection elements is related when both
                    // preimages are related.
                    let mut set = BTreeSet::new();
                    let k = common.len();
                    let arity = arities[s];
                    let mut idx = vec![0usize; arity];
                    if k == 0 && arity > 0 {
                        return set;
                    }
                    loop {
                        let t1: Vec<usize> = idx.iter().map(|&i| pre(&f1, common.label(i))).collect();
                        let t2: Vec<usize> = idx.iter().map(|&i| pre(&f2, common.label(i))).collect();
                        if r1[s].contains(&t1) && r2[s].contains(&t2) {
                            set.insert(idx.clone());
                        }
                        let mut d = arity;
                        let done = loop {
                            if d == 0 {
                                break true;
                            }
                            d -= 1;
                            idx[d] += 1;
                            if idx[d] < k {
                                break false;
                            }
                            idx[d] = 0;
                        };
                        if done {
                            break set;
                        }
                    }
                })
                .collect();
            CatObject::relational_from_indices(arities.clone(), common.clone(), rels)
        }
        CatId::Bool | CatId::VecGf { .. } => unreachable!("handled by the caller"),
    };
    let leg = |f: &FinMap, b: &CatObject| -> Result<FinMap, CatError> {
        Ok(FinMap::from_fn(common.clone(), b.carrier().clone(), |l| {
            b.carrier().label(pre(f, l)).clone()
        })?)
    };
    Ok(MonoPullback {
        apex: apex.clone(),
        to_first: CatMorphism::trusted_table(&apex, b1, leg(&f1, b1)?),
        to_second: CatMorphism::trusted_table(&apex, b2, leg(&f2, b2)?),
    })
}

/// Pullback of Boolean-algebra monos: contravariantly, the pushout (join) of
/// the two atom partitions, computed by union-find.
fn bool_pullback(m1: &CatMorphism, m2: &CatMorphism) -> Result<MonoPullback, CatError> {
    let a = m1.dst();
    let atoms = a.atoms().unwrap();
    let n = atoms.len();
    let g1 = super::factor::boolean_atom_map(m1, &m1.underlying());
    let g2 = super::factor::boolean_atom_map(m2, &m2.underlying());
    // g1, g2 map atoms(A) onto atoms(B1), atoms(B2); join their fibers.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for g in [&g1, &g2] {
        let mut first_with_image: std::collections::BTreeMap<usize, usize> =
            std::collections::BTreeMap::new();
        for x in 0..n {
            let img = g.apply_idx(x);
            if let Some(&y) = first_with_image.get(&img) {
                let rx = find(&mut parent, x);
                let ry = find(&mut parent, y);
                parent[rx] = ry;
            } else {
                first_with_image.insert(img, x);
            }
        }
    }
    let blocks: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    // Convert root table to a first-appearance partition table.
    let mut block_ids: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    let partition: Vec<usize> = blocks
        .iter()
        .map(|&r| {
            let next = block_ids.len();
            *block_ids.entry(r).or_insert(next)
        })
        .collect();
    let (reps, _) = partition_quotient(atoms, &partition);
    let apex = CatObject::boolean(reps.clone())?;
    // Leg into B_i is contravariant to atoms(B_i) -> blocks, sending an atom
    // of B_i to the block containing its g_i-fiber.
    let leg = |m: &CatMorphism, g: &FinMap| -> Result<CatMorphism, CatError> {
        let b = m.src();
        let b_atoms = b.atoms().unwrap();
        let atom_to_block: Vec<usize> = (0..b_atoms.len())
            .map(|t| {
                let x = g
                    .table()
                    .iter()
                    .position(|&img| img == t)
                    .expect("atom maps of monos are surjective");
                let rep_label = atoms.label({
                    let b_id = partition[x];
                    partition.iter().position(|&p| p == b_id).unwrap()
                });
                reps.index_of(rep_label).unwrap()
            })
            .collect();
        let map = FinMap::from_fn(apex.carrier().clone(), b.carrier().clone(), |l| {
            let mask = super::subset_mask(&reps, l);
            let mut out_mask: u32 = 0;
            for (t, &blk) in atom_to_block.iter().enumerate() {
                if mask & (1 << blk) != 0 {
                    out_mask |= 1 << t;
                }
            }
            super::subset_label(b_atoms, out_mask)
        })?;
        Ok(CatMorphism::trusted_table(&apex, b, map))
    };
    Ok(MonoPullback {
        apex: apex.clone(),
        to_first: leg(m1, &g1)?,
        to_second: leg(m2, &g2)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::FinSet;

    fn atoms(names: &[&str]) -> FinSet {
        FinSet::atoms(names.iter().copied()).unwrap()
    }

    #[test]
    fn partitions_count_is_bell() {
        // Frozen Bell numbers: 1, 1, 2, 5, 15, 52.
        assert_eq!(partitions(0).len(), 1);
        assert_eq!(partitions(1).len(), 1);
        assert_eq!(partitions(2).len(), 2);
        assert_eq!(partitions(3).len(), 5);
        assert_eq!(partitions(4).len(), 15);
        assert_eq!(partitions(5).len(), 52);
    }

    #[test]
    fn set_subobjects_and_quotients() {
        let a = CatObject::set(atoms(&["1", "2", "3"]));
        assert_eq!(subobjects(&a).unwrap().len(), 8);
        assert_eq!(strong_quotients(&a).unwrap().len(), 5);
        for m in subobjects(&a).unwrap() {
            assert!(classify_morphism(&m).mono);
        }
        for e in strong_quotients(&a).unwrap() {
            assert!(classify_morphism(&e).strong_epi);
        }
    }

    #[test]
    fn pos_two_chain_has_five_subobjects() {
        // Frozen: the empty poset, two singletons, and the two-point subset
        // with either the discrete or the inherited chain order.
        let chain = CatObject::poset(atoms(&["a", "b"]), &[("a".into(), "b".into())]).unwrap();
        let subs = subobjects(&chain).unwrap();
        assert_eq!(subs.len(), 5);
        for m in subs {
            assert!(classify_morphism(&m).mono);
        }
    }

    #[test]
    fn pos_quotients_reject_nonantisymmetric_collapses() {
        // Collapsing the endpoints of a 3-chain a < b < c identifies a and c
        // but leaves b strictly between, so the projected order has a cycle
        // {a,c} <= b <= {a,c}; that partition must be skipped.
        let chain = CatObject::poset(
            atoms(&["a", "b", "c"]),
            &[("a".into(), "b".into()), ("b".into(), "c".into())],
        )
        .unwrap();
        let quots = strong_quotients(&chain).unwrap();
        // Frozen: of the 5 partitions of three elements, {a|b|c}, {ab|c},
        // {a|bc}, and {abc} survive; {ac|b} does not.
        assert_eq!(quots.len(), 4);
        for e in quots {
            assert!(classify_morphism(&e).strong_epi);
        }
    }

    #[test]
    fn bool_subobjects_are_partitions_and_quotients_are_subsets() {
        let b = CatObject::boolean(atoms(&["s", "t", "u"])).unwrap();
        // Frozen: Bell(3) = 5 subobjects, 2^3 = 8 strong quotients.
        let subs = subobjects(&b).unwrap();
        assert_eq!(subs.len(), 5);
        for m in &subs {
            assert!(classify_morphism(m).mono, "not mono: {m}");
        }
        let quots = strong_quotients(&b).unwrap();
        assert_eq!(quots.len(), 8);
        for e in &quots {
            assert!(classify_morphism(e).strong_epi);
        }
    }

    #[test]
    fn vec_subobjects_and_quotients_match_subspace_count() {
        let v = CatObject::space(2, 2);
        // Frozen: GF(2)^2 has 5 subspaces.
        let subs = subobjects(&v).unwrap();
        assert_eq!(subs.len(), 5);
        for m in &subs {
            assert!(classify_morphism(m).mono);
        }
        let quots = strong_quotients(&v).unwrap();
        assert_eq!(quots.len(), 5);
        for e in &quots {
            assert!(classify_morphism(e).strong_epi);
        }
        // Every projection annihilates exactly its kernel subspace.
        use crate::gf::Gf;
        let field = Gf::new(2);
        for (basis, e) in gf::all_subspaces(field, 2).iter().zip(&quots) {
            let proj = e.matrix().unwrap();
            for v in basis {
                assert!(proj.mul_vec(v).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn mset_subobjects_are_action_closed() {
        use crate::cat::Monoid;
        let m = Monoid::idempotent_pair();
        // e maps y to x; {y} alone is not closed, {x} is.
        let a = CatObject::mset(
            m,
            atoms(&["x", "y"]),
            &[vec!["x".into(), "y".into()], vec!["x".into(), "x".into()]],
        )
        .unwrap();
        let subs = subobjects(&a).unwrap();
        // Frozen: {}, {x}, {x,y}.
        assert_eq!(subs.len(), 3);
    }

    #[test]
    fn pullback_of_set_monos_is_intersection() {
        let a = CatObject::set(atoms(&["1", "2", "3", "4"]));
        let b1 = CatObject::set(atoms(&["1", "2", "3"]));
        let b2 = CatObject::set(atoms(&["2", "3", "4"]));
        let m1 = CatMorphism::from_map(
            &b1,
            &a,
            b1.carrier().inclusion_into(a.carrier()).unwrap(),
        )
        .unwrap();
        let m2 = CatMorphism::from_map(
            &b2,
            &a,
            b2.carrier().inclusion_into(a.carrier()).unwrap(),
        )
        .unwrap();
        let pb = pullback_of_monos(&m1, &m2).unwrap();
        assert_eq!(pb.apex.carrier(), &atoms(&["2", "3"]));
        let left = m1.compose(&pb.to_first).unwrap();
        let right = m2.compose(&pb.to_second).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn pullback_of_vec_monos_is_subspace_intersection() {
        use crate::gf::{Gf, GfMatrix};
        let field = Gf::new(2);
        let a = CatObject::space(2, 2);
        let l1 = CatObject::space(2, 1);
        // Lines spanned by (1,0) and (0,1): intersection is 0.
        let m1 =
            CatMorphism::from_matrix(&l1, &a, GfMatrix::from_columns(field, 2, &[vec![1, 0]]))
                .unwrap();
        let m2 =
            CatMorphism::from_matrix(&l1, &a, GfMatrix::from_columns(field, 2, &[vec![0, 1]]))
                .unwrap();
        let pb = pullback_of_monos(&m1, &m2).unwrap();
        assert_eq!(pb.apex.dim(), Some(0));
        // A line intersected with itself is itself.
        let pb2 = pullback_of_monos(&m1, &m1).unwrap();
        assert_eq!(pb2.apex.dim(), Some(1));
    }

    #[test]
    fn pullback_of_bool_monos_joins_partitions() {
        let b = CatObject::boolean(atoms(&["s", "t", "u"])).unwrap();
        let subs = subobjects(&b).unwrap();
        for m1 in &subs {
            for m2 in &subs {
                let pb = pullback_of_monos(m1, m2).unwrap();
                let left = m1.compose(&pb.to_first).unwrap();
                let right = m2.compose(&pb.to_second).unwrap();
                assert_eq!(left, right, "square must commute");
                assert!(classify_morphism(&pb.to_first).mono);
            }
        }
    }
}
