//! Regression pins for the shipped functor corpus. The random entries are
//! seeded, so their shapes, value sizes, and classifications are fixed;
//! any drift here means the corpus silently changed under downstream
//! users and must be treated as a breaking change.

use gradcat_core::finset::FinSet;
use gradcat_core::functor::{classify_functor, standard_corpus, PresentedFunctor, SetFunctor};

/// name, operation arities, equation count, value sizes at carrier sizes
/// 0..=3, classification kind at size limit 3.
const FROZEN: [(&str, &[usize], usize, [usize; 4], &str); 15] = [
    ("id", &[1], 0, [0, 1, 2, 3], "right-adjoint"),
    ("c01", &[1], 1, [0, 1, 1, 1], "collapse-exception"),
    ("constant-1", &[0], 0, [1, 1, 1, 1], "constant-one"),
    ("square", &[2], 0, [0, 1, 4, 9], "right-adjoint"),
    ("x-plus-x", &[1, 1], 0, [0, 2, 4, 6], "not-product-preserving"),
    ("rand-00", &[1, 1, 0], 0, [1, 3, 5, 7], "not-product-preserving"),
    ("rand-01", &[0, 2, 0], 0, [2, 3, 6, 11], "not-product-preserving"),
    ("rand-02", &[0], 2, [1, 1, 1, 1], "constant-one"),
    ("rand-03", &[2], 1, [0, 1, 1, 1], "collapse-exception"),
    ("rand-04", &[0, 2], 2, [1, 2, 2, 2], "not-product-preserving"),
    ("rand-05", &[0, 1, 0], 2, [2, 1, 1, 1], "not-product-preserving"),
    ("rand-06", &[2, 2], 2, [0, 1, 1, 1], "collapse-exception"),
    ("rand-07", &[1, 0, 1], 2, [1, 2, 2, 2], "not-product-preserving"),
    ("rand-08", &[1, 1], 0, [0, 2, 4, 6], "not-product-preserving"),
    ("rand-09", &[0, 0, 1], 0, [2, 3, 4, 5], "not-product-preserving"),
];

#[test]
fn corpus_shapes_and_value_sizes_are_frozen() {
    let corpus = standard_corpus();
    assert_eq!(corpus.len(), FROZEN.len());
    for (p, (name, arities, eqs, sizes, _)) in corpus.iter().zip(FROZEN) {
        assert_eq!(p.name(), name);
        let got: Vec<usize> = p.ops().iter().map(|o| o.arity).collect();
        assert_eq!(got, arities, "operation arities changed for {name}");
        assert_eq!(p.eqs().len(), eqs, "equation count changed for {name}");
        let h = PresentedFunctor::new(p.clone());
        for (n, expected) in sizes.iter().enumerate() {
            let value = h.on_object(&FinSet::indexed("x", n)).unwrap();
            assert_eq!(
                value.len(),
                *expected,
                "value size changed for {name} at carrier size {n}"
            );
        }
    }
}

#[test]
fn corpus_classifications_are_frozen() {
    for (p, (name, _, _, _, kind)) in standard_corpus().iter().zip(FROZEN) {
        let h = PresentedFunctor::new(p.clone());
        let got = classify_functor(&h, 3).unwrap();
        assert_eq!(got.kind(), kind, "classification changed for {name}");
    }
}
