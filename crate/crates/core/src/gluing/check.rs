//! Independent verification of gluing trees.
//!
//! `check_aleksandrov` looks only at the seams (the glued interval pairs) and
//! the polygon, rebuilds the point identification from scratch, and compares
//! the result with the node list the tree claims.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::{classify_shape, label_string, Element, GluingError, GluingTree, PointKind, Shape};
use crate::angle::AngleSum;
use crate::polygon::PolygonSpec;
use crate::Q;

#[derive(Clone, Debug, PartialEq)]
pub struct NodeCheck {
    pub label: String,
    pub angle_sum: AngleSum,
    pub within_full_turn: bool,
    /// Exactly 2π: a flat point, not a vertex of the polytope.
    pub flat: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidityReport {
    pub nodes: Vec<NodeCheck>,
    pub angles_ok: bool,
    /// Noncrossing identification whose quotient is a tree.
    pub sphere_ok: bool,
    /// The tree's node list agrees with the identification the seams induce.
    pub consistent: bool,
    pub issues: Vec<String>,
    pub valid: bool,
}

fn modulo(x: Q, l: Q) -> Q {
    let r = x - (x / l).floor() * l;
    if r.is_negative() {
        r + l
    } else {
        r
    }
}

/// Counterclockwise distance from `a` to `b` on a circle of length `l`.
fn ccw(a: Q, b: Q, l: Q) -> Q {
    modulo(b - a, l)
}

/// `x` lies strictly inside the ccw arc from `a` to `b`.
fn strictly_inside(x: Q, a: Q, b: Q, l: Q) -> bool {
    let d = ccw(a, x, l);
    d.is_positive() && d < ccw(a, b, l)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Verify the two Aleksandrov conditions plus length preservation.
pub fn check_aleksandrov(t: &GluingTree, p: &PolygonSpec) -> Result<ValidityReport, GluingError> {
    if t.seams.is_empty() {
        return Err(GluingError::IncompleteGluing("no glued intervals".into()));
    }
    let l = p.perimeter();
    let at = &t.representative;
    let eps = p.epsilon();
    let pos = |bp: &super::BoundaryPoint| modulo(bp.position(p, at), l);

    // Seam intervals (start, end) and length preservation.
    let mut intervals: Vec<(Q, Q, usize)> = Vec::new();
    for (i, s) in t.seams.iter().enumerate() {
        let (a, b) = (pos(&s.first[0]), pos(&s.first[1]));
        let (c, d) = (pos(&s.second[0]), pos(&s.second[1]));
        let (l1, l2) = (ccw(a, b, l), ccw(c, d, l));
        if l1.is_zero() || l2.is_zero() {
            return Err(GluingError::IncompleteGluing(format!("seam {} has an empty side", i)));
        }
        if l1 != l2 {
            return Err(GluingError::LengthMismatch(format!("seam {}: {} vs {}", i, l1, l2)));
        }
        intervals.push((a, b, i));
        intervals.push((c, d, i));
    }

    // Exact tiling of the boundary.
    let total = intervals.iter().fold(Q::zero(), |acc, (a, b, _)| acc + ccw(*a, *b, l));
    if total != l {
        return Err(GluingError::IncompleteGluing(format!("glued length {} ≠ perimeter {}", total, l)));
    }
    let mut sorted = intervals.clone();
    sorted.sort_by(|x, y| x.0.cmp(&y.0));
    for w in 0..sorted.len() {
        let next = &sorted[(w + 1) % sorted.len()];
        if sorted[w].1 != next.0 {
            return Err(GluingError::IncompleteGluing(format!(
                "gap or overlap between {} and {}",
                sorted[w].1, next.0
            )));
        }
    }

    let mut issues = Vec::new();

    // Every vertex must be an interval endpoint; otherwise it is glued
    // without being recorded as a node.
    for v in 0..p.n() {
        let x = p.vertex_offset(v);
        if sorted.iter().any(|(a, b, _)| strictly_inside(x, *a, *b, l)) {
            issues.push(format!("vertex v{} lies inside a glued interval", v + 1));
        }
    }

    // Point classes from the reversed gluing of each seam.
    let mut ids: BTreeMap<Q, usize> = BTreeMap::new();
    for (a, b, _) in &intervals {
        let k = ids.len();
        ids.entry(*a).or_insert(k);
        let k = ids.len();
        ids.entry(*b).or_insert(k);
    }
    let mut uf = UnionFind((0..ids.len()).collect());
    for s in &t.seams {
        let (a, b) = (ids[&pos(&s.first[0])], ids[&pos(&s.first[1])]);
        let (c, d) = (ids[&pos(&s.second[0])], ids[&pos(&s.second[1])]);
        uf.union(a, d);
        uf.union(b, c);
    }
    let mut classes: BTreeMap<usize, Vec<Q>> = BTreeMap::new();
    for (x, &id) in &ids {
        classes.entry(uf.find(id)).or_default().push(*x);
    }

    // Quotient graph: one edge per seam between the classes of its ends.
    let class_index: BTreeMap<usize, usize> = classes.keys().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut qdeg = vec![0usize; classes.len()];
    let mut forest = UnionFind((0..classes.len()).collect());
    let mut acyclic = true;
    for s in &t.seams {
        let u = class_index[&uf.find(ids[&pos(&s.first[0])])];
        let w = class_index[&uf.find(ids[&pos(&s.first[1])])];
        qdeg[u] += 1;
        qdeg[w] += 1;
        if u == w || !forest.union(u, w) {
            acyclic = false;
        }
    }
    let is_tree = acyclic && classes.len() == t.seams.len() + 1;

    // Noncrossing: the other seams sit on one side of every seam.
    let mut noncrossing = true;
    'outer: for (i, s) in t.seams.iter().enumerate() {
        let (b, c) = (pos(&s.first[1]), pos(&s.second[0]));
        for (j, o) in t.seams.iter().enumerate() {
            if i == j {
                continue;
            }
            let mid = |x: Q, y: Q| modulo(x + ccw(x, y, l) / Q::from_integer(2), l);
            let m1 = mid(pos(&o.first[0]), pos(&o.first[1]));
            let m2 = mid(pos(&o.second[0]), pos(&o.second[1]));
            if strictly_inside(m1, b, c, l) != strictly_inside(m2, b, c, l) {
                noncrossing = false;
                break 'outer;
            }
        }
    }
    if !noncrossing {
        issues.push("glued intervals cross".into());
    }
    if !is_tree {
        issues.push("quotient of the identification is not a tree".into());
    }

    // Angle per class, labels for comparison with the stored nodes.
    let vertex_at: BTreeMap<Q, usize> = (0..p.n()).map(|v| (p.vertex_offset(v), v)).collect();
    let edge_at = |x: Q| -> usize { (0..p.n()).rev().find(|&e| p.vertex_offset(e) <= x).unwrap_or(0) };
    let mut node_checks = Vec::new();
    let mut derived: BTreeMap<String, usize> = BTreeMap::new();
    for (ci, (_, pts)) in classes.iter().enumerate() {
        let mut sum = AngleSum::default();
        let mut label: Vec<Element> = Vec::new();
        for x in pts {
            match vertex_at.get(x) {
                Some(&v) => {
                    sum = sum.add(p.angle(v));
                    label.push(Element::Vertex(v));
                }
                None => {
                    sum = sum.add_straight();
                    label.push(Element::Edge(edge_at(*x)));
                }
            }
        }
        if qdeg[ci] != pts.len() {
            issues.push(format!("class {} has {} points but degree {}", label_string(&label), pts.len(), qdeg[ci]));
        }
        label.sort();
        let ls = label_string(&label);
        *derived.entry(ls.clone()).or_insert(0) += 1;
        let within = sum.within_full_turn(eps);
        node_checks.push(NodeCheck { label: ls, angle_sum: sum, within_full_turn: within, flat: sum.is_full_turn(eps) });
    }
    let angles_ok = node_checks.iter().all(|c| c.within_full_turn);

    // Compare with the nodes recorded in the tree.
    let mut claimed: BTreeMap<String, usize> = BTreeMap::new();
    let mut consistent = t.nodes.len() == classes.len();
    for nd in &t.nodes {
        *claimed.entry(nd.label_string()).or_insert(0) += 1;
        let cls: Vec<usize> = nd.points.iter().filter_map(|bp| ids.get(&pos(bp)).map(|&id| uf.find(id))).collect();
        if cls.len() != nd.points.len() || cls.windows(2).any(|w| w[0] != w[1]) {
            consistent = false;
        }
        for bp in &nd.points {
            let x = pos(bp);
            let is_vertex = vertex_at.contains_key(&x);
            if is_vertex != (bp.kind == PointKind::Vertex) {
                consistent = false;
            }
        }
    }
    if claimed != derived {
        consistent = false;
    }
    // arc i must join the classes at the two ends of seam i
    let node_class: Vec<Option<usize>> =
        t.nodes.iter().map(|nd| nd.points.first().and_then(|bp| ids.get(&pos(bp))).map(|&id| uf.find(id))).collect();
    if t.arcs.len() != t.seams.len() {
        consistent = false;
    }
    for (&(a, b), s) in t.arcs.iter().zip(&t.seams) {
        let ends = [uf.find(ids[&pos(&s.first[0])]), uf.find(ids[&pos(&s.first[1])])];
        let nodes = [node_class.get(a).copied().flatten(), node_class.get(b).copied().flatten()];
        let fwd = nodes == [Some(ends[0]), Some(ends[1])];
        let back = nodes == [Some(ends[1]), Some(ends[0])];
        if !(fwd || back) {
            consistent = false;
        }
    }
    if !consistent {
        issues.push("stored nodes disagree with the identification".into());
    }

    let sphere_ok = noncrossing && is_tree;
    let valid = angles_ok && sphere_ok && consistent && issues.is_empty();
    Ok(ValidityReport { nodes: node_checks, angles_ok, sphere_ok, consistent, issues, valid })
}

/// Outcome of the four structural properties every gluing tree satisfies.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformanceReport {
    /// At a node of degree ≠ 2, at most one edge-interior point.
    pub one_nonvertex_at_branch: bool,
    /// At most four fold-point leaves; four only for '+' or 'I' with four leaves.
    pub fold_leaves_bounded: bool,
    /// At most two rolling belts.
    pub belts_bounded: bool,
    /// Two rolling belts only in an 'I' tree.
    pub two_belts_shape_i: bool,
    pub violations: Vec<String>,
}

impl ConformanceReport {
    pub fn passed(&self) -> bool {
        self.one_nonvertex_at_branch && self.fold_leaves_bounded && self.belts_bounded && self.two_belts_shape_i
    }
}

pub fn structural_check(t: &GluingTree, _p: &PolygonSpec) -> ConformanceReport {
    let deg = t.degrees();
    let shape = classify_shape(t);
    let mut violations = Vec::new();

    let one_nonvertex_at_branch = t
        .nodes
        .iter()
        .enumerate()
        .filter(|(i, _)| deg[*i] != 2)
        .all(|(_, nd)| nd.interior_points() <= 1);
    if !one_nonvertex_at_branch {
        violations.push("a node of degree ≠ 2 glues two edge-interior points".to_string());
    }

    let folds = t.fold_leaves().len();
    let leaves = t.leaf_count();
    let fold_leaves_bounded = folds < 4 || (folds == 4 && leaves == 4 && matches!(shape, Shape::Plus | Shape::I));
    if !fold_leaves_bounded {
        violations.push(format!("{} fold-point leaves ({} leaves, shape {})", folds, leaves, shape));
    }

    let belts = t.rolling_belts();
    let belts_bounded = belts <= 2;
    if !belts_bounded {
        violations.push(format!("{} rolling belts", belts));
    }
    let two_belts_shape_i = belts != 2 || shape == Shape::I;
    if !two_belts_shape_i {
        violations.push(format!("two rolling belts in a '{}' tree", shape));
    }

    ConformanceReport { one_nonvertex_at_branch, fold_leaves_bounded, belts_bounded, two_belts_shape_i, violations }
}
