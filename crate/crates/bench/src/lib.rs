//! Shared fixtures for the criterion benches: deterministic objects and
//! matrices sized so one iteration stays in the microsecond-to-millisecond
//! range.

use gradcat_core::cat::CatObject;
use gradcat_core::finset::FinSet;
use gradcat_core::gf::{Gf, GfMatrix};
use gradcat_core::label::Label;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A linear order on `n` elements, the densest poset of its size.
pub fn chain_poset(n: usize) -> CatObject {
    let carrier = FinSet::indexed("x", n);
    let labels: Vec<Label> = carrier.iter().cloned().collect();
    let mut le = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            le.push((labels[i].clone(), labels[j].clone()));
        }
    }
    CatObject::poset(carrier, &le).expect("a chain is a valid order")
}

/// A seeded dense matrix over GF(2).
pub fn seeded_matrix(seed: u64, rows: usize, cols: usize) -> GfMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let columns: Vec<Vec<u64>> = (0..cols)
        .map(|_| (0..rows).map(|_| rng.gen_range(0..2)).collect())
        .collect();
    GfMatrix::from_columns(Gf::new(2), rows, &columns)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_chain_fixture_has_all_comparable_pairs() {
        let chain = chain_poset(4);
        // Reflexive pairs plus both orientations resolved one way: 4 + 6.
        assert_eq!(chain.grade().value(), 10);
    }

    #[test]
    fn the_matrix_fixture_is_deterministic() {
        let a = seeded_matrix(11, 8, 8);
        let b = seeded_matrix(11, 8, 8);
        assert_eq!(a.rank(), b.rank());
        for c in 0..8 {
            assert_eq!(a.column(c), b.column(c));
        }
    }
}
