//! Property tests for the mechanical layers: exact linear algebra over
//! small prime fields, map factorization, and functoriality of randomly
//! presented functors.

use gradcat_core::finset::{factorize, FinMap, FinSet};
use gradcat_core::functor::{random_presentation, PresentedFunctor, SetFunctor};
use gradcat_core::gf::{extend_basis, Gf, GfMatrix};
use proptest::prelude::*;

fn small_prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3u64), Just(5u64)]
}

fn matrix(max_dim: usize) -> impl Strategy<Value = GfMatrix> {
    (small_prime(), 1..=max_dim, 1..=max_dim).prop_flat_map(|(p, rows, cols)| {
        proptest::collection::vec(0..p, rows * cols)
            .prop_map(move |data| GfMatrix::new(Gf::new(p), rows, cols, data))
    })
}

fn pair_of_composable_matrices(max_dim: usize) -> impl Strategy<Value = (GfMatrix, GfMatrix)> {
    (small_prime(), 1..=max_dim, 1..=max_dim, 1..=max_dim).prop_flat_map(|(p, a, b, c)| {
        let left = proptest::collection::vec(0..p, a * b);
        let right = proptest::collection::vec(0..p, b * c);
        (left, right).prop_map(move |(l, r)| {
            (
                GfMatrix::new(Gf::new(p), a, b, l),
                GfMatrix::new(Gf::new(p), b, c, r),
            )
        })
    })
}

fn fin_map(max_size: usize) -> impl Strategy<Value = FinMap> {
    (1..=max_size, 1..=max_size).prop_flat_map(|(n, m)| {
        proptest::collection::vec(0..m, n).prop_map(move |table| {
            let dom = FinSet::indexed("a", n);
            let cod = FinSet::indexed("b", m);
            FinMap::new(dom, cod, table).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn rank_is_bounded_by_both_dimensions(m in matrix(5)) {
        let r = m.rank();
        prop_assert!(r <= m.rows());
        prop_assert!(r <= m.cols());
        prop_assert_eq!(r, m.transpose().rank());
    }

    #[test]
    fn rank_of_a_product_is_bounded_by_both_factors((l, r) in pair_of_composable_matrices(4)) {
        let product = l.mul(&r);
        prop_assert!(product.rank() <= l.rank().min(r.rank()));
    }

    #[test]
    fn solving_a_reachable_system_reproduces_the_image(m in matrix(4), x in proptest::collection::vec(0..5u64, 4)) {
        let x: Vec<u64> = x.iter().take(m.cols()).map(|v| v % m.field().modulus()).collect();
        let b = m.mul_vec(&x);
        let solved = m.solve(&b).expect("the image is reachable by construction");
        prop_assert_eq!(m.mul_vec(&solved), b);
    }

    #[test]
    fn kernel_basis_vectors_map_to_zero_and_count_the_nullity(m in matrix(5)) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(kernel.len(), m.cols() - m.rank());
        for v in &kernel {
            prop_assert_eq!(m.mul_vec(v), vec![0u64; m.rows()]);
        }
        if !kernel.is_empty() {
            let k = GfMatrix::from_columns(m.field(), m.cols(), &kernel);
            prop_assert_eq!(k.rank(), kernel.len());
        }
    }

    #[test]
    fn column_space_basis_spans_every_column(m in matrix(5)) {
        let basis = m.column_space_basis();
        prop_assert_eq!(basis.len(), m.rank());
        if !basis.is_empty() {
            let span = GfMatrix::from_columns(m.field(), m.rows(), &basis);
            for j in 0..m.cols() {
                prop_assert!(span.solve(&m.column(j)).is_some());
            }
        }
    }

    #[test]
    fn extending_a_partial_basis_reaches_the_pool_rank(m in matrix(4)) {
        let start = m.column_space_basis();
        let pool: Vec<Vec<u64>> = GfMatrix::identity(m.field(), m.rows()).columns();
        let appended = extend_basis(m.field(), m.rows(), &start, &pool);
        let full: Vec<Vec<u64>> = start.iter().chain(appended.iter()).cloned().collect();
        prop_assert_eq!(full.len(), m.rows());
        let assembled = GfMatrix::from_columns(m.field(), m.rows(), &full);
        prop_assert_eq!(assembled.rank(), m.rows());
    }

    #[test]
    fn factorization_recomposes_and_splits_properly(f in fin_map(6)) {
        let parts = factorize(&f);
        prop_assert_eq!(parts.mono.compose(&parts.epi).unwrap(), f.clone());
        let image: std::collections::BTreeSet<usize> = f.table().iter().copied().collect();
        prop_assert_eq!(parts.epi.cod().len(), image.len());
        let mono_targets: std::collections::BTreeSet<usize> =
            parts.mono.table().iter().copied().collect();
        prop_assert_eq!(mono_targets.len(), parts.mono.table().len(), "mono is injective");
    }

    #[test]
    fn random_presentations_act_functorially(index in 0..400u64, tables in proptest::collection::vec(0..2usize, 4)) {
        let p = random_presentation(index);
        let h = PresentedFunctor::new(p);
        let x = FinSet::indexed("x", 2);
        let y = FinSet::indexed("y", 2);
        let f = FinMap::new(x.clone(), y.clone(), tables[0..2].to_vec()).unwrap();
        let g = FinMap::new(y, x, tables[2..4].to_vec()).unwrap();
        let lhs = h.on_map(&g.compose(&f).unwrap()).unwrap();
        let rhs = h.on_map(&g).unwrap().compose(&h.on_map(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
