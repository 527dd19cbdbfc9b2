//! Gluing trees: which boundary points of a polygon are identified, and how.

mod check;
mod symmetry;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::angle::AngleSum;
use crate::param::{Affine, ParamRegion};
use crate::polygon::PolygonSpec;
use crate::Q;

pub use check::{check_aleksandrov, structural_check, ConformanceReport, NodeCheck, ValidityReport};
pub use symmetry::{orbit_key, quotient_by_symmetry, relabeled_key};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GluingError {
    #[error("boundary not covered exactly once: {0}")]
    IncompleteGluing(String),
    #[error("glued intervals differ in length: {0}")]
    LengthMismatch(String),
}

/// A vertex `v_i` or (a point in the interior of) edge `e_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Vertex(usize),
    Edge(usize),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(i) => write!(f, "v{}", i + 1),
            Element::Edge(i) => write!(f, "e{}", i + 1),
        }
    }
}

impl Element {
    pub fn parse(s: &str) -> Option<Element> {
        let (kind, idx) = s.split_at(1);
        let i: usize = idx.parse().ok()?;
        if i == 0 {
            return None;
        }
        match kind {
            "v" => Some(Element::Vertex(i - 1)),
            "e" => Some(Element::Edge(i - 1)),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointKind {
    Vertex,
    Interior,
}

/// A point of the boundary: vertex `v_edge` (offset 0) or a point at
/// `offset` along edge `e_edge`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundaryPoint {
    pub edge: usize,
    pub offset: Affine,
    pub kind: PointKind,
}

impl BoundaryPoint {
    pub fn vertex(i: usize) -> Self {
        BoundaryPoint { edge: i, offset: Affine::zero(), kind: PointKind::Vertex }
    }

    pub fn interior(edge: usize, offset: Affine) -> Self {
        BoundaryPoint { edge, offset, kind: PointKind::Interior }
    }

    pub fn element(&self) -> Element {
        match self.kind {
            PointKind::Vertex => Element::Vertex(self.edge),
            PointKind::Interior => Element::Edge(self.edge),
        }
    }

    /// Position along the boundary from `v_0` at parameter value `at`.
    pub fn position(&self, p: &PolygonSpec, at: &[Q]) -> Q {
        p.vertex_offset(self.edge) + self.offset.eval(at)
    }
}

/// Two boundary intervals glued in reverse: `first = [a, b]` and
/// `second = [c, d]`, both counterclockwise, with `a ≡ d` and `b ≡ c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seam {
    pub first: [BoundaryPoint; 2],
    pub second: [BoundaryPoint; 2],
}

#[derive(Clone, Debug, PartialEq)]
pub struct GluingNode {
    pub points: Vec<BoundaryPoint>,
    pub label: Vec<Element>,
    pub angle_sum: AngleSum,
}

impl GluingNode {
    pub fn new(points: Vec<BoundaryPoint>, p: &PolygonSpec) -> Self {
        let mut label: Vec<Element> = points.iter().map(BoundaryPoint::element).collect();
        label.sort();
        let angle_sum = points.iter().fold(AngleSum::default(), |s, pt| match pt.kind {
            PointKind::Vertex => s.add(p.angle(pt.edge)),
            PointKind::Interior => s.add_straight(),
        });
        GluingNode { points, label, angle_sum }
    }

    pub fn interior_points(&self) -> usize {
        self.points.iter().filter(|p| p.kind == PointKind::Interior).count()
    }

    pub fn label_string(&self) -> String {
        label_string(&self.label)
    }
}

pub(crate) fn label_string(label: &[Element]) -> String {
    let parts: Vec<String> = label.iter().map(Element::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

/// A path between two fold-point leaves whose fold positions slide together
/// over a positive-length interval.
#[derive(Clone, Debug, PartialEq)]
pub struct Belt {
    pub leaves: Vec<usize>,
    pub edges: Vec<usize>,
    /// Range of the first leaf's offset along its edge.
    pub interval: (Q, Q),
}

/// Combinatorial shape of a gluing tree, ignoring degree-2 nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Path,
    Y,
    I,
    Plus,
    Other,
}

impl Shape {
    pub fn symbol(&self) -> &'static str {
        match self {
            Shape::Path => "|",
            Shape::Y => "Y",
            Shape::I => "I",
            Shape::Plus => "+",
            Shape::Other => "Other",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Shape> {
        [Shape::Path, Shape::Y, Shape::I, Shape::Plus, Shape::Other].into_iter().find(|x| x.symbol() == s)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Canonical string of a labeled tree: equal iff the trees are isomorphic
/// with matching label sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub String);

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GluingTree {
    pub n: usize,
    pub nodes: Vec<GluingNode>,
    pub arcs: Vec<(usize, usize)>,
    /// `seams[i]` realizes `arcs[i]`.
    pub seams: Vec<Seam>,
    pub region: ParamRegion,
    pub representative: Vec<Q>,
    pub belts: Vec<Belt>,
}

impl GluingTree {
    /// Assemble a tree from node point lists and arcs with their seams.
    /// Computes labels, angle sums, a representative parameter point and
    /// rolling belts. Returns `None` when the region is empty.
    pub fn assemble(
        p: &PolygonSpec,
        node_points: Vec<Vec<BoundaryPoint>>,
        arcs: Vec<(usize, usize)>,
        seams: Vec<Seam>,
        region: ParamRegion,
    ) -> Option<GluingTree> {
        let representative = region.representative()?;
        let nodes = node_points.into_iter().map(|pts| GluingNode::new(pts, p)).collect();
        let mut t = GluingTree { n: p.n(), nodes, arcs, seams, region, representative, belts: Vec::new() };
        t.belts = t.find_belts();
        Some(t)
    }

    pub fn empty(n: usize) -> GluingTree {
        GluingTree {
            n,
            nodes: Vec::new(),
            arcs: Vec::new(),
            seams: Vec::new(),
            region: ParamRegion::new(0),
            representative: Vec::new(),
            belts: Vec::new(),
        }
    }

    pub fn params(&self) -> usize {
        self.region.params
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for &(a, b) in &self.arcs {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.arcs {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn leaves(&self) -> Vec<usize> {
        let deg = self.degrees();
        (0..self.nodes.len()).filter(|&i| deg[i] == 1).collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().len()
    }

    /// Leaves made of a single edge-interior point.
    pub fn fold_leaves(&self) -> Vec<usize> {
        self.leaves()
            .into_iter()
            .filter(|&i| self.nodes[i].points.len() == 1 && self.nodes[i].points[0].kind == PointKind::Interior)
            .collect()
    }

    pub fn rolling_belts(&self) -> usize {
        self.belts.len()
    }

    fn find_belts(&self) -> Vec<Belt> {
        // Fold leaves whose offsets move with the parameters, grouped by the
        // direction in which they move.
        let mut groups: Vec<(Vec<Q>, Vec<usize>)> = Vec::new();
        for leaf in self.fold_leaves() {
            let off = &self.nodes[leaf].points[0].offset;
            let grad: Vec<Q> = (0..self.params()).map(|i| off.coefficient(i)).collect();
            let Some(lead) = grad.iter().find(|c| !c.is_zero()).cloned() else { continue };
            let dir: Vec<Q> = grad.iter().map(|c| *c / lead).collect();
            match groups.iter_mut().find(|(d, _)| *d == dir) {
                Some((_, members)) => members.push(leaf),
                None => groups.push((dir, vec![leaf])),
            }
        }
        groups
            .into_iter()
            .map(|(_, leaves)| {
                let first = &self.nodes[leaves[0]].points[0].offset;
                let (lo, hi) = self.region.bounds(first);
                let edges = leaves.iter().map(|&l| self.nodes[l].points[0].edge).collect();
                Belt { leaves, edges, interval: (lo.unwrap_or_else(Q::zero), hi.unwrap_or_else(Q::zero)) }
            })
            .collect()
    }

    fn encode(&self, adj: &[Vec<usize>], labels: &[String], u: usize, parent: usize) -> String {
        let mut kids: Vec<String> =
            adj[u].iter().filter(|&&w| w != parent).map(|&w| self.encode(adj, labels, w, u)).collect();
        kids.sort();
        format!("{}({})", labels[u], kids.concat())
    }

    /// Canonical key with labels transformed by `relabel`.
    pub fn key_with(&self, relabel: impl Fn(Element) -> Element) -> CanonicalKey {
        if self.nodes.is_empty() {
            return CanonicalKey(String::new());
        }
        let adj = self.adjacency();
        let labels: Vec<String> = self
            .nodes
            .iter()
            .map(|nd| {
                let mut l: Vec<Element> = nd.label.iter().map(|e| relabel(*e)).collect();
                l.sort();
                label_string(&l)
            })
            .collect();
        let best = (0..self.nodes.len())
            .map(|root| self.encode(&adj, &labels, root, usize::MAX))
            .min()
            .expect("tree has nodes");
        CanonicalKey(best)
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        self.key_with(|e| e)
    }

    pub fn shape(&self) -> Shape {
        classify_shape(self)
    }
}

/// Canonical form of a labeled gluing tree.
pub fn canonical_form(t: &GluingTree) -> CanonicalKey {
    t.canonical_key()
}

/// Classify by the degrees of the branch nodes; degree-2 nodes are ignored.
pub fn classify_shape(t: &GluingTree) -> Shape {
    let deg = t.degrees();
    let max = deg.iter().copied().max().unwrap_or(0);
    if max <= 2 {
        return Shape::Path;
    }
    let branch: Vec<usize> = (0..deg.len()).filter(|&i| deg[i] >= 3).collect();
    let d3 = branch.iter().filter(|&&i| deg[i] == 3).count();
    let d4 = branch.iter().filter(|&&i| deg[i] == 4).count();
    match (branch.len(), d3, d4) {
        (1, 1, 0) => Shape::Y,
        (1, 0, 1) => Shape::Plus,
        (2, 2, 0) if branch_nodes_adjacent(t, &deg, branch[0], branch[1]) => Shape::I,
        _ => Shape::Other,
    }
}

/// The tree path between `a` and `b` passes only through degree-2 nodes.
fn branch_nodes_adjacent(t: &GluingTree, deg: &[usize], a: usize, b: usize) -> bool {
    let adj = t.adjacency();
    let mut prev = vec![usize::MAX; t.nodes.len()];
    let mut stack = vec![a];
    prev[a] = a;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if prev[w] == usize::MAX {
                prev[w] = u;
                stack.push(w);
            }
        }
    }
    let mut cur = prev[b];
    while cur != a {
        if deg[cur] != 2 {
            return false;
        }
        cur = prev[cur];
    }
    true
}

/// Graph description of the tree; rolling belts annotate their leaves.
pub fn to_dot(t: &GluingTree) -> Result<String, GluingError> {
    if t.nodes.is_empty() {
        return Err(GluingError::IncompleteGluing("tree has no nodes".into()));
    }
    let mut belt_of: BTreeMap<usize, (usize, &Belt)> = BTreeMap::new();
    for (i, b) in t.belts.iter().enumerate() {
        for &l in &b.leaves {
            belt_of.insert(l, (i, b));
        }
    }
    let mut out = String::from("graph gluing {\n  node [shape=box];\n");
    for (i, nd) in t.nodes.iter().enumerate() {
        let mut label = nd.label_string();
        if let Some((bi, b)) = belt_of.get(&i) {
            label.push_str(&format!("\\nbelt {} ({}, {})", bi + 1, b.interval.0, b.interval.1));
        }
        out.push_str(&format!("  n{} [label=\"{}\"];\n", i, label));
    }
    for (a, b) in &t.arcs {
        out.push_str(&format!("  n{} -- n{};\n", a, b));
    }
    out.push_str("}\n");
    Ok(out)
}

/// Histogram of leaf counts.
pub fn leaf_census<'a>(trees: impl IntoIterator<Item = &'a GluingTree>) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for t in trees {
        *h.entry(t.leaf_count()).or_insert(0) += 1;
    }
    h
}
