//! The canonical diagram of subobjects of an object, with fill-in monos,
//! and a literal check of its colimit universal property.

use std::collections::BTreeMap;

use crate::cat::{
    classify_morphism, enumerate_objects, factorize_in_cat, hom_set, morphism_label, CatMorphism,
    CatObject,
};
use crate::finset::FinSet;

use super::AdjointError;

/// The diagram of all subobjects of an ambient object: one mono per
/// subobject (including the identity), and the unique fill-in morphism
/// between any two comparable subobjects.
#[derive(Clone, Debug)]
pub struct SubobjectDiagram {
    ambient: CatObject,
    nodes: Vec<CatMorphism>,
    fill_ins: BTreeMap<(usize, usize), CatMorphism>,
}

impl SubobjectDiagram {
    /// The object whose subobjects the diagram collects.
    pub fn ambient(&self) -> &CatObject {
        &self.ambient
    }

    /// The subobject monos, sorted by their canonical labels.
    pub fn nodes(&self) -> &[CatMorphism] {
        &self.nodes
    }

    /// The fill-in `h: i -> j` with `m_j . h = m_i`, for each comparable
    /// pair of nodes. At most one such `h` exists since `m_j` is mono.
    pub fn fill_ins(&self) -> &BTreeMap<(usize, usize), CatMorphism> {
        &self.fill_ins
    }

    /// The index of the identity node.
    pub fn top_index(&self) -> usize {
        self.nodes
            .iter()
            .position(CatMorphism::is_identity)
            .expect("the identity node is always present")
    }

    /// Whether every pair of nodes has an upper bound in the diagram. True
    /// by construction (the identity node is above everything), but checked
    /// literally.
    pub fn is_directed(&self) -> bool {
        let n = self.nodes.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).any(|k| {
                    self.fill_ins.contains_key(&(i, k)) && self.fill_ins.contains_key(&(j, k))
                })
            })
        })
    }
}

/// Builds the canonical subobject diagram of an object.
///
/// Nodes are collected as the image monos of every morphism into the
/// ambient object from every object of the instance with at most as many
/// elements, plus the identity, deduplicated and sorted. This sweep reaches
/// every subobject: a mono is its own image, and every isomorphism class of
/// potential sources occurs among the enumerated objects.
///
/// Fill-ins are found by scanning hom sets; uniqueness is forced by the
/// target leg being mono and is asserted. Directedness of the result is
/// also asserted, since the machinery downstream depends on it.
pub fn canonical_subobject_diagram(
    ambient: &CatObject,
) -> Result<SubobjectDiagram, AdjointError> {
    let mut nodes: Vec<CatMorphism> = vec![CatMorphism::identity(ambient)];
    // Sources up to the ambient's own enumeration size suffice: every
    // subobject is the image of a mono from an isomorphic canonical source.
    // For powerset algebras the enumeration size is the atom count.
    let max_source = ambient
        .atoms()
        .map_or(ambient.carrier().len(), FinSet::len);
    for size in 0..=max_source {
        for source in enumerate_objects(ambient.cat(), size)? {
            for f in hom_set(&source, ambient)? {
                let mono = factorize_in_cat(&f)?.mono;
                if !nodes.contains(&mono) {
                    nodes.push(mono);
                }
            }
        }
    }
    nodes.sort_by_key(morphism_label);
    for node in &nodes {
        if !classify_morphism(node).mono {
            return Err(AdjointError::InvariantBroken(
                "an image leg is not a mono".into(),
            ));
        }
    }

    let mut fill_ins = BTreeMap::new();
    for (i, mi) in nodes.iter().enumerate() {
        for (j, mj) in nodes.iter().enumerate() {
            let mut found: Option<CatMorphism> = None;
            for h in hom_set(mi.src(), mj.src())? {
                if mj.compose(&h)? == *mi {
                    if found.is_some() {
                        return Err(AdjointError::InvariantBroken(
                            "two distinct fill-ins through a mono".into(),
                        ));
                    }
                    found = Some(h);
                }
            }
            if let Some(h) = found {
                fill_ins.insert((i, j), h);
            }
        }
    }

    let diagram = SubobjectDiagram {
        ambient: ambient.clone(),
        nodes,
        fill_ins,
    };
    if !diagram.is_directed() {
        return Err(AdjointError::InvariantBroken(
            "subobject diagram is not directed".into(),
        ));
    }
    Ok(diagram)
}

/// The outcome of checking the colimit universal property of a subobject
/// diagram against all test apexes up to a size limit.
#[derive(Clone, Debug)]
pub struct ColimitReport {
    /// Number of diagram nodes.
    pub node_count: usize,
    /// Number of apex objects tested.
    pub apexes_checked: usize,
    /// Number of cocones tested (one per morphism out of the ambient
    /// object, which parameterize all cocones).
    pub cocones_checked: usize,
    /// Human-readable descriptions of any failures, in scan order.
    pub failures: Vec<String>,
}

impl ColimitReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that the inclusion cocone exhibits the ambient object as the
/// colimit of its subobject diagram.
///
/// Cocones over the diagram with a given apex `C` are in bijection with
/// morphisms `u` out of the ambient object `K`: the diagram contains the
/// identity node, and the fill-in from any node `i` to it is `m_i` itself,
/// so compatibility forces every leg of a cocone to be `leg_top . m_i`.
/// The check therefore ranges `u` over `hom(K, C)` and verifies that the
/// induced family really is a cocone (compatible with every fill-in) and
/// that exactly one mediating morphism matches it on all legs.
///
/// Morphisms within one instance are equal exactly when their carrier
/// actions are, so the inner loops compare precomputed carrier tables
/// instead of composing morphism objects.
pub fn verify_colimit_property(
    diagram: &SubobjectDiagram,
    apex_limit: usize,
) -> Result<ColimitReport, AdjointError> {
    let k = diagram.ambient();
    let node_tables: Vec<Vec<usize>> = diagram
        .nodes
        .iter()
        .map(|m| m.underlying().table().to_vec())
        .collect();
    let fill_in_tables: Vec<(usize, usize, Vec<usize>)> = diagram
        .fill_ins
        .iter()
        .map(|((i, j), h)| (*i, *j, h.underlying().table().to_vec()))
        .collect();
    let mut report = ColimitReport {
        node_count: diagram.nodes.len(),
        apexes_checked: 0,
        cocones_checked: 0,
        failures: Vec::new(),
    };
    for size in 0..=apex_limit {
        for apex in enumerate_objects(k.cat(), size)? {
            report.apexes_checked += 1;
            let candidates = hom_set(k, &apex)?;
            let candidate_tables: Vec<Vec<usize>> = candidates
                .iter()
                .map(|v| v.underlying().table().to_vec())
                .collect();
            // legs_of[v][i] is the carrier table of `v . m_i`.
            let legs_of: Vec<Vec<Vec<usize>>> = candidate_tables
                .iter()
                .map(|v| {
                    node_tables
                        .iter()
                        .map(|m| m.iter().map(|&e| v[e]).collect())
                        .collect()
                })
                .collect();
            for (u_idx, legs) in legs_of.iter().enumerate() {
                report.cocones_checked += 1;
                for (i, j, h) in &fill_in_tables {
                    let compatible = h
                        .iter()
                        .enumerate()
                        .all(|(e, &he)| legs[*j][he] == legs[*i][e]);
                    if !compatible {
                        report.failures.push(format!(
                            "induced family on apex {} is not a cocone at fill-in {i} -> {j}",
                            apex.carrier()
                        ));
                    }
                }
                let mediators = legs_of.iter().filter(|other| *other == legs).count();
                if mediators != 1 {
                    report.failures.push(format!(
                        "cocone of morphism {} on apex {} has {mediators} mediators instead of 1",
                        morphism_label(&candidates[u_idx]),
                        apex.carrier()
                    ));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::subobjects;
    use crate::finset::FinSet;
    use crate::label::Label;

    #[test]
    fn plain_set_diagram_lists_every_subset_once() {
        let k = CatObject::set(FinSet::indexed("k", 3));
        let diagram = canonical_subobject_diagram(&k).unwrap();
        assert_eq!(diagram.nodes().len(), 8);
        assert_eq!(diagram.nodes().len(), subobjects(&k).unwrap().len());
        assert!(diagram.is_directed());
        // The empty subobject sits below everything: one fill-in per node.
        let empty = diagram
            .nodes()
            .iter()
            .position(|m| m.src().carrier().is_empty())
            .unwrap();
        assert!((0..8).all(|j| diagram.fill_ins().contains_key(&(empty, j))));
    }

    #[test]
    fn chain_diagram_includes_weakened_orders() {
        let carrier = FinSet::atoms(["a", "b"]).unwrap();
        let k = CatObject::poset(carrier, &[(Label::atom("a"), Label::atom("b"))]).unwrap();
        let diagram = canonical_subobject_diagram(&k).unwrap();
        // Subsets: empty, {a}, {b}, and {a,b} with either the discrete or
        // the inherited order.
        assert_eq!(diagram.nodes().len(), 5);
        assert_eq!(diagram.nodes().len(), subobjects(&k).unwrap().len());
        // The discrete doubleton embeds into the ordered one, not back.
        let top = diagram.top_index();
        let discrete = diagram
            .nodes()
            .iter()
            .position(|m| {
                m.src().carrier().len() == 2 && !m.is_identity()
            })
            .unwrap();
        assert!(diagram.fill_ins().contains_key(&(discrete, top)));
        assert!(!diagram.fill_ins().contains_key(&(top, discrete)));
    }

    #[test]
    fn colimit_property_holds_for_small_sets() {
        let k = CatObject::set(FinSet::indexed("k", 2));
        let diagram = canonical_subobject_diagram(&k).unwrap();
        let report = verify_colimit_property(&diagram, 2).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert!(report.cocones_checked > 0);
    }

    #[test]
    fn colimit_property_holds_for_a_chain() {
        let carrier = FinSet::atoms(["a", "b"]).unwrap();
        let k = CatObject::poset(carrier, &[(Label::atom("a"), Label::atom("b"))]).unwrap();
        let diagram = canonical_subobject_diagram(&k).unwrap();
        let report = verify_colimit_property(&diagram, 2).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
    }

    #[test]
    fn empty_ambient_object_has_a_one_node_diagram() {
        let k = CatObject::set(FinSet::empty());
        let diagram = canonical_subobject_diagram(&k).unwrap();
        assert_eq!(diagram.nodes().len(), 1);
        assert_eq!(diagram.top_index(), 0);
        let report = verify_colimit_property(&diagram, 1).unwrap();
        assert!(report.passed());
    }
}
