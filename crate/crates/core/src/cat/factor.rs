//! Strong-epi / mono factorization through a canonical image object.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::finset::FinMap;
use crate::gf::GfMatrix;
use crate::label::Label;

use super::{CatError, CatMorphism, CatObject, MorphismData, Structure};

/// A factorization `f = mono ∘ epi` through an image object.
#[derive(Clone, Debug, Serialize)]
pub struct CatFactorization {
    pub epi: CatMorphism,
    pub mono: CatMorphism,
}

/// Factorizes a morphism as a strong epi followed by a mono.
///
/// The image object is built canonically per instance: the image carrier
/// with restricted structure, except that the poset image carries the
/// reflexive-transitive closure of the pushed-forward order, the relational
/// image carries exactly the pushed-forward tuples, and the vector-space
/// image is the column space presented in a canonical basis.
pub fn factorize_in_cat(f: &CatMorphism) -> Result<CatFactorization, CatError> {
    match f.data() {
        MorphismData::Matrix(m) => factorize_matrix(f, m),
        MorphismData::Table(map) => factorize_table(f, map),
    }
}

fn factorize_matrix(f: &CatMorphism, m: &GfMatrix) -> Result<CatFactorization, CatError> {
    let field = m.field();
    let basis = m.column_space_basis();
    let r = basis.len();
    let middle = CatObject::space(field.modulus(), r);
    let mono_matrix = GfMatrix::from_columns(field, m.rows(), &basis);
    // Express every column of f in the image basis.
    let epi_cols: Vec<Vec<u64>> = m
        .columns()
        .iter()
        .map(|c| {
            mono_matrix
                .solve(c)
                .expect("column of f lies in the column space")
        })
        .collect();
    let epi_matrix = GfMatrix::from_columns(field, r, &epi_cols);
    Ok(CatFactorization {
        epi: CatMorphism::trusted_matrix(f.src(), &middle, epi_matrix),
        mono: CatMorphism::trusted_matrix(&middle, f.dst(), mono_matrix),
    })
}

fn factorize_table(f: &CatMorphism, map: &FinMap) -> Result<CatFactorization, CatError> {
    let src = f.src();
    let dst = f.dst();
    let image: BTreeSet<usize> = map.table().iter().copied().collect();
    let image_set = dst.carrier().filter(|l| {
        let i = dst.carrier().index_of(l).unwrap();
        image.contains(&i)
    });
    let middle: CatObject = match (src.structure(), dst.structure()) {
        (Structure::Plain, _) => CatObject::set(image_set.clone()),
        (Structure::Pointed { .. }, _) => {
            let base = dst.base_label().expect("pointed target has a base");
            CatObject::pointed(image_set.clone(), base)?
        }
        (Structure::Order { .. }, Structure::Order { .. }) => {
            let k = image_set.len();
            let mut le = vec![false; k * k];
            for i in 0..k {
                le[i * k + i] = true;
            }
            let pos_in_image = |dst_idx: usize| -> usize {
                image_set
                    .index_of(dst.carrier().label(dst_idx))
                    .expect("image element")
            };
            let n = src.size();
            for i in 0..n {
                for j in 0..n {
                    if src.le(i, j) {
                        le[pos_in_image(map.apply_idx(i)) * k + pos_in_image(map.apply_idx(j))] =
                            true;
                    }
                }
            }
            super::transitive_close(&mut le, k);
            CatObject::poset_from_incidence(image_set.clone(), le)
        }
        (Structure::PowerSet { .. }, Structure::PowerSet { .. }) => {
            return factorize_boolean(f, map);
        }
        (Structure::Action { .. }, Structure::Action { .. }) => {
            let dst_act = dst.action_tables().unwrap();
            let monoid = match dst.cat() {
                super::CatId::MSet { monoid } => monoid.clone(),
                _ => unreachable!(),
            };
            let act: Vec<Vec<usize>> = dst_act
                .iter()
                .map(|row| {
                    image_set
                        .iter()
                        .map(|l| {
                            let i = dst.carrier().index_of(l).unwrap();
                            let img = row[i];
                            image_set
                                .index_of(dst.carrier().label(img))
                                .expect("image is closed under the action")
                        })
                        .collect()
                })
                .collect();
            CatObject::mset_from_tables(monoid, image_set.clone(), act)?
        }
        (Structure::Relations { rels: src_rels }, Structure::Relations { .. }) => {
            let arities = match dst.cat() {
                super::CatId::OmegaRel { arities } => arities.clone(),
                _ => unreachable!(),
            };
            let rels: Vec<BTreeSet<Vec<usize>>> = src_rels
                .iter()
                .map(|tuples| {
                    tuples
                        .iter()
                        .map(|t| {
                            t.iter()
                                .map(|&x| {
                                    image_set
                                        .index_of(dst.carrier().label(map.apply_idx(x)))
                                        .expect("image element")
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect();
            CatObject::relational_from_indices(arities, image_set.clone(), rels)
        }
        _ => unreachable!("morphism endpoints are in the same instance"),
    };
    let epi_map = FinMap::from_fn(src.carrier().clone(), image_set.clone(), |l| {
        let i = src.carrier().index_of(l).unwrap();
        dst.carrier().label(map.apply_idx(i)).clone()
    })
    .expect("corestriction is total");
    let mono_map = image_set.inclusion_into(dst.carrier())?;
    Ok(CatFactorization {
        epi: CatMorphism::trusted_table(src, &middle, epi_map),
        mono: CatMorphism::trusted_table(&middle, dst, mono_map),
    })
}

/// Boolean homs factor contravariantly: the atom map of `f` factors in sets
/// as surjection-after-inclusion, and the powerset of the atom image is the
/// image object.
fn factorize_boolean(f: &CatMorphism, map: &FinMap) -> Result<CatFactorization, CatError> {
    let src = f.src();
    let dst = f.dst();
    let g = boolean_atom_map(f, map);
    let atom_image: BTreeSet<usize> = g.table().iter().copied().collect();
    let mid_atoms = src.atoms().unwrap().filter(|l| {
        let i = src.atoms().unwrap().index_of(l).unwrap();
        atom_image.contains(&i)
    });
    let middle = CatObject::boolean(mid_atoms.clone())?;
    // Epi: contravariant to the inclusion of the atom image, so it sends a
    // subset of the source atoms to its intersection with the atom image.
    let epi_map = FinMap::from_fn(src.carrier().clone(), middle.carrier().clone(), |l| {
        let Label::Tuple(members) = l else { unreachable!() };
        Label::Tuple(
            members
                .iter()
                .filter(|m| mid_atoms.contains(m))
                .cloned()
                .collect(),
        )
    })
    .expect("intersection lands in the image powerset");
    // Mono: contravariant to the corestricted atom map.
    let epi = CatMorphism::trusted_table(src, &middle, epi_map);
    let mono_map = FinMap::from_fn(middle.carrier().clone(), dst.carrier().clone(), |l| {
        let mask = super::subset_mask(&mid_atoms, l);
        let dst_atoms = dst.atoms().unwrap();
        let mut out_mask: u32 = 0;
        for t in 0..dst_atoms.len() {
            let s = g.apply_idx(t);
            let s_label = src.atoms().unwrap().label(s);
            let mid_idx = mid_atoms.index_of(s_label).expect("atom image element");
            if mask & (1 << mid_idx) != 0 {
                out_mask |= 1 << t;
            }
        }
        super::subset_label(dst_atoms, out_mask)
    })
    .expect("preimage map is total");
    let mono = CatMorphism::trusted_table(&middle, dst, mono_map);
    Ok(CatFactorization { epi, mono })
}

/// Recovers the contravariant atom map `atoms(dst) -> atoms(src)` of a
/// Boolean hom: each target atom lies in the image of exactly one source
/// atom's singleton.
pub(super) fn boolean_atom_map(f: &CatMorphism, map: &FinMap) -> FinMap {
    let src = f.src();
    let dst = f.dst();
    let src_atoms = src.atoms().unwrap();
    let dst_atoms = dst.atoms().unwrap();
    let dst_masks = dst.subset_masks().unwrap();
    let src_masks = src.subset_masks().unwrap();
    let table: Vec<usize> = (0..dst_atoms.len())
        .map(|t| {
            (0..src_atoms.len())
                .find(|&s| {
                    let singleton = src_masks.iter().position(|&m| m == 1 << s).unwrap();
                    dst_masks[map.apply_idx(singleton)] & (1 << t) != 0
                })
                .expect("hom atoms are covered by singleton images")
        })
        .collect();
    FinMap::new(dst_atoms.clone(), src_atoms.clone(), table).expect("atom map is total")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{classify_morphism, hom_set};
    use crate::finset::FinSet;

    fn atoms(names: &[&str]) -> FinSet {
        FinSet::atoms(names.iter().copied()).unwrap()
    }

    fn check(f: &CatMorphism) {
        let fac = factorize_in_cat(f).unwrap();
        assert!(classify_morphism(&fac.epi).strong_epi, "first leg must be a strong epi");
        assert!(classify_morphism(&fac.mono).mono, "second leg must be a mono");
        assert_eq!(fac.mono.compose(&fac.epi).unwrap(), *f, "factorization must compose to f");
    }

    #[test]
    fn factorize_every_pos_endomap_of_three_chain() {
        let chain = CatObject::poset(
            atoms(&["a", "b", "c"]),
            &[("a".into(), "b".into()), ("b".into(), "c".into())],
        )
        .unwrap();
        for f in hom_set(&chain, &chain).unwrap() {
            check(&f);
        }
    }

    #[test]
    fn factorize_boolean_homs() {
        let b1 = CatObject::boolean(atoms(&["u"])).unwrap();
        let b2 = CatObject::boolean(atoms(&["s", "t"])).unwrap();
        for f in hom_set(&b2, &b1).unwrap() {
            check(&f);
        }
        for f in hom_set(&b1, &b2).unwrap() {
            check(&f);
        }
        for f in hom_set(&b2, &b2).unwrap() {
            check(&f);
        }
    }

    #[test]
    fn factorize_matrices() {
        let v2 = CatObject::space(2, 2);
        for f in hom_set(&v2, &v2).unwrap() {
            check(&f);
        }
    }

    #[test]
    fn factorize_mset_maps() {
        use crate::cat::Monoid;
        let m = Monoid::idempotent_pair();
        // e projects y and z to x; w is a second fixed point.
        let a = CatObject::mset(
            m.clone(),
            atoms(&["w", "x", "y"]),
            &[
                vec!["w".into(), "x".into(), "y".into()],
                vec!["w".into(), "x".into(), "x".into()],
            ],
        )
        .unwrap();
        for f in hom_set(&a, &a).unwrap() {
            check(&f);
        }
    }

    #[test]
    fn factorize_relational_maps() {
        let a = CatObject::relational(
            vec![2],
            atoms(&["a", "b", "c"]),
            &[vec![
                vec!["a".into(), "b".into()],
                vec!["b".into(), "c".into()],
            ]],
        )
        .unwrap();
        for f in hom_set(&a, &a).unwrap() {
            check(&f);
        }
    }
}
