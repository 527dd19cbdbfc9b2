//! Quotienting gluing trees by boundary symmetries.

use std::collections::BTreeMap;

use super::{CanonicalKey, Element, GluingTree};
use crate::polygon::{Symmetry, SymmetryGroup};

/// Canonical key of the tree after relabeling by `s`.
pub fn relabeled_key(t: &GluingTree, s: &Symmetry) -> CanonicalKey {
    let n = t.n;
    t.key_with(|e| match e {
        Element::Vertex(i) => Element::Vertex(s.map_vertex(i, n)),
        Element::Edge(i) => Element::Edge(s.map_edge(i, n)),
    })
}

/// Least key over the orbit of `t`.
pub fn orbit_key(t: &GluingTree, g: &SymmetryGroup) -> CanonicalKey {
    g.elements.iter().map(|s| relabeled_key(t, s)).min().expect("group contains the identity")
}

/// One representative per orbit, sorted by orbit key; the representative is
/// the member with the least own key.
pub fn quotient_by_symmetry(trees: &[GluingTree], g: &SymmetryGroup) -> Vec<GluingTree> {
    let mut best: BTreeMap<CanonicalKey, (CanonicalKey, usize)> = BTreeMap::new();
    for (i, t) in trees.iter().enumerate() {
        let orbit = orbit_key(t, g);
        let own = t.canonical_key();
        best.entry(orbit)
            .and_modify(|cur| {
                if own < cur.0 {
                    *cur = (own.clone(), i);
                }
            })
            .or_insert((own, i));
    }
    best.into_values().map(|(_, i)| trees[i].clone()).collect()
}
