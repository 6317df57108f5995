//! Structure-respecting morphism machinery against independent oracles:
//! closed-form hom-set counts, recomposition laws for factorizations, and
//! carrier-level descriptions of mono pullbacks.

use std::collections::BTreeSet;

use gradcat_core::cat::{
    classify_morphism, enumerate_objects, factorize_in_cat, hom_set, instance_roster,
    pullback_of_monos, subobjects, CatId, CatObject, Monoid,
};
use gradcat_core::finset::FinSet;
use gradcat_core::gf::{Gf, GfMatrix};
use gradcat_core::label::Label;

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut out = 1usize;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

fn chain(n: usize) -> CatObject {
    let carrier = FinSet::indexed("c", n);
    let pairs: Vec<(Label, Label)> = (0..n.saturating_sub(1))
        .map(|i| (carrier.label(i).clone(), carrier.label(i + 1).clone()))
        .collect();
    CatObject::poset(carrier, &pairs).unwrap()
}

#[test]
fn set_and_pointed_hom_counts_match_the_closed_forms() {
    for m in 0..=3usize {
        for n in 0..=3usize {
            let a = CatObject::set(FinSet::indexed("a", m));
            let b = CatObject::set(FinSet::indexed("b", n));
            let expected = if m == 0 { 1 } else { n.pow(m as u32) };
            assert_eq!(hom_set(&a, &b).unwrap().len(), expected, "set {m} -> {n}");
        }
    }
    for m in 1..=3usize {
        for n in 1..=3usize {
            let ca = FinSet::indexed("a", m);
            let cb = FinSet::indexed("b", n);
            let a = CatObject::pointed(ca.clone(), ca.label(0)).unwrap();
            let b = CatObject::pointed(cb.clone(), cb.label(0)).unwrap();
            let expected = n.pow((m - 1) as u32);
            assert_eq!(
                hom_set(&a, &b).unwrap().len(),
                expected,
                "pointed {m} -> {n}"
            );
        }
    }
}

#[test]
fn linear_and_boolean_hom_counts_match_the_closed_forms() {
    for d in 0..=2usize {
        for e in 0..=2usize {
            let a = CatObject::space(2, d);
            let b = CatObject::space(2, e);
            assert_eq!(
                hom_set(&a, &b).unwrap().len(),
                1usize << (d * e),
                "linear {d} -> {e}"
            );
        }
    }
    for j in 0..=2usize {
        for k in 0..=2usize {
            let a = CatObject::boolean(FinSet::indexed("p", j)).unwrap();
            let b = CatObject::boolean(FinSet::indexed("q", k)).unwrap();
            let expected = if k == 0 { 1 } else { j.pow(k as u32) };
            assert_eq!(
                hom_set(&a, &b).unwrap().len(),
                expected,
                "boolean with {j} atoms -> {k} atoms"
            );
        }
    }
}

#[test]
fn monotone_map_counts_between_chains_match_the_binomial_formula() {
    for m in 0..=3usize {
        for n in 1..=3usize {
            // Monotone maps from an m-chain to an n-chain are weakly
            // increasing sequences: choose m values with repetition.
            let expected = binomial(m + n - 1, m);
            assert_eq!(
                hom_set(&chain(m), &chain(n)).unwrap().len(),
                expected,
                "chains {m} -> {n}"
            );
        }
    }
}

#[test]
fn equivariant_and_relational_hom_counts_match_hand_counts() {
    let c2 = Monoid::cyclic(2);
    let carrier = FinSet::indexed("m", 2);
    let l = |i: usize| carrier.label(i).clone();
    let swap = CatObject::mset(
        c2.clone(),
        carrier.clone(),
        &[vec![l(0), l(1)], vec![l(1), l(0)]],
    )
    .unwrap();
    let trivial = CatObject::mset(
        c2,
        carrier.clone(),
        &[vec![l(0), l(1)], vec![l(0), l(1)]],
    )
    .unwrap();
    assert_eq!(hom_set(&swap, &swap).unwrap().len(), 2);
    assert_eq!(hom_set(&trivial, &swap).unwrap().len(), 0);
    assert_eq!(hom_set(&swap, &trivial).unwrap().len(), 2);

    let edge = CatObject::relational(
        vec![2],
        carrier.clone(),
        &[vec![vec![l(0), l(1)]]],
    )
    .unwrap();
    let complete = CatObject::relational(
        vec![2],
        carrier.clone(),
        &[vec![
            vec![l(0), l(0)],
            vec![l(0), l(1)],
            vec![l(1), l(0)],
            vec![l(1), l(1)],
        ]],
    )
    .unwrap();
    let empty_rel = CatObject::relational(vec![2], carrier, &[vec![]]).unwrap();
    assert_eq!(hom_set(&edge, &complete).unwrap().len(), 4);
    assert_eq!(hom_set(&edge, &empty_rel).unwrap().len(), 0);
    assert_eq!(hom_set(&empty_rel, &edge).unwrap().len(), 4);
}

#[test]
fn factorizations_recompose_and_split_into_strong_epi_then_mono() {
    for cat in instance_roster() {
        let max = 2usize;
        let mut all = Vec::new();
        for size in 0..=max {
            all.extend(enumerate_objects(&cat, size).unwrap());
        }
        let mut scanned = 0usize;
        for a in &all {
            for b in &all {
                for f in hom_set(a, b).unwrap() {
                    let parts = factorize_in_cat(&f).unwrap();
                    assert_eq!(
                        parts.mono.compose(&parts.epi).unwrap(),
                        f,
                        "recomposition fails in {}",
                        cat.short_name()
                    );
                    assert!(classify_morphism(&parts.epi).strong_epi);
                    assert!(classify_morphism(&parts.mono).mono);
                    let image = parts.epi.dst();
                    assert!(image.grade().partial_cmp(&a.grade()).is_some());
                    assert!(
                        image.grade() <= a.grade() && image.grade() <= b.grade(),
                        "image grade exceeds an end in {}",
                        cat.short_name()
                    );
                    scanned += 1;
                }
            }
        }
        assert!(scanned > 0, "no morphisms scanned in {}", cat.short_name());
    }
}

#[test]
fn mono_pullbacks_are_carrier_intersections_in_concrete_instances() {
    for n in 0..=3usize {
        let ambient = CatObject::set(FinSet::indexed("x", n));
        let monos = subobjects(&ambient).unwrap();
        for first in &monos {
            for second in &monos {
                let pb = pullback_of_monos(first, second).unwrap();
                let left = first.compose(&pb.to_first).unwrap();
                let right = second.compose(&pb.to_second).unwrap();
                assert_eq!(
                    left.underlying(),
                    right.underlying(),
                    "pullback square does not commute"
                );
                let images = |m: &gradcat_core::cat::CatMorphism| -> BTreeSet<usize> {
                    m.underlying().table().iter().copied().collect()
                };
                let expected: BTreeSet<usize> = images(first)
                    .intersection(&images(second))
                    .copied()
                    .collect();
                assert_eq!(images(&left), expected, "apex misses the intersection");
                assert_eq!(pb.apex.size(), expected.len());
            }
        }
    }
}

#[test]
fn mono_pullback_dimensions_obey_the_intersection_formula() {
    let field = Gf::new(2);
    let ambient = CatObject::space(2, 3);
    let monos = subobjects(&ambient).unwrap();
    for first in &monos {
        for second in &monos {
            let pb = pullback_of_monos(first, second).unwrap();
            let m1 = first.matrix().unwrap();
            let m2 = second.matrix().unwrap();
            let mut joined = m1.columns();
            joined.extend(m2.columns());
            let join_rank = if joined.is_empty() {
                0
            } else {
                GfMatrix::from_columns(field, 3, &joined).rank()
            };
            let expected = m1.rank() + m2.rank() - join_rank;
            assert_eq!(
                pb.apex.dim().unwrap(),
                expected,
                "intersection dimension formula fails"
            );
        }
    }
}
