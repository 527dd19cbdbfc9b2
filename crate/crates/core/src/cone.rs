//! Truncated cones and a family of `2^(k-1)` cut trees whose developments
//! are pairwise incongruent simple polygons.
//!
//! The surface is the bottom k-gon, k lateral trapezoids, and the top k-gon
//! split by spokes from its center `c` into triangular sectors. The top rim
//! edge from `T_{k-1}` to `T_0` carries a marked midpoint `M`, and the last
//! sector is split by the segment `c M`.
//!
//! The base tree cuts every lateral edge and every spoke, except that `T_0`
//! is reached by the bent path `c M T_0` instead of its own spoke. The bend
//! marks one position of the otherwise rotation-symmetric cone, so patterns
//! that differ by a rotation no longer unfold to congruent polygons. Bit `i`
//! cuts top rim edge `i` and restores spoke `i+1`, so `T_{i+1}` hangs from
//! `T_i` along the rim. Cuts left dangling at `c` or `M` are dropped.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::f64::consts::PI;
use std::fmt::Write as _;

use thiserror::Error;

use crate::angle::q_to_f64;
use crate::geometry::is_simple_f;
use crate::Q;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConeError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("cut set is not a tree: {0}")]
    NotATree(String),
    #[error("development overlaps itself")]
    NonSimpleUnfolding,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Frustum {
    pub k: usize,
    pub r_bottom: Q,
    pub r_top: Q,
    pub h: Q,
}

impl Frustum {
    pub fn new(k: usize, r_bottom: Q, r_top: Q, h: Q) -> Result<Self, ConeError> {
        if k < 3 {
            return Err(ConeError::BadParameter(format!("k must be at least 3, got {k}")));
        }
        if !(r_bottom > r_top && r_top > Q::from_integer(0)) {
            return Err(ConeError::BadParameter("need r_bottom > r_top > 0".into()));
        }
        if h <= Q::from_integer(0) {
            return Err(ConeError::BadParameter("height must be positive".into()));
        }
        Ok(Frustum { k, r_bottom, r_top, h })
    }

    /// `r_bottom = 2`, `r_top = 1`, `h = 1`.
    pub fn with_defaults(k: usize) -> Result<Self, ConeError> {
        Self::new(k, Q::from_integer(2), Q::from_integer(1), Q::from_integer(1))
    }

    pub fn point(&self, v: SurfaceVertex) -> [f64; 3] {
        let angle = |i: usize| 2.0 * PI * i as f64 / self.k as f64;
        let (rb, rt, h) = (q_to_f64(&self.r_bottom), q_to_f64(&self.r_top), q_to_f64(&self.h));
        match v {
            SurfaceVertex::Bottom(i) => [rb * angle(i).cos(), rb * angle(i).sin(), 0.0],
            SurfaceVertex::Top(i) => [rt * angle(i).cos(), rt * angle(i).sin(), h],
            SurfaceVertex::Center => [0.0, 0.0, h],
            SurfaceVertex::Mark => {
                let (a, b) = (self.point(SurfaceVertex::Top(self.k - 1)), self.point(SurfaceVertex::Top(0)));
                [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0, h]
            }
        }
    }

    /// Faces as vertex lists, counterclockwise seen from outside: the
    /// bottom, then trapezoid `i` at index `1 + i`, then sector `i` at
    /// `1 + k + i`, the last sector in two halves.
    pub fn faces(&self) -> Vec<Vec<SurfaceVertex>> {
        use SurfaceVertex::*;
        let k = self.k;
        let mut faces = vec![(0..k).rev().map(Bottom).collect()];
        faces.extend((0..k - 1).map(|i| vec![Bottom(i), Bottom(i + 1), Top(i + 1), Top(i)]));
        faces.push(vec![Bottom(k - 1), Bottom(0), Top(0), Mark, Top(k - 1)]);
        faces.extend((0..k - 1).map(|i| vec![Center, Top(i), Top(i + 1)]));
        faces.push(vec![Center, Top(k - 1), Mark]);
        faces.push(vec![Center, Mark, Top(0)]);
        faces
    }

    fn edge_between(&self, a: SurfaceVertex, b: SurfaceVertex) -> SurfaceEdge {
        use SurfaceVertex::*;
        let k = self.k;
        let rim = |i: usize, j: usize| if (i + 1) % k == j { i } else { j };
        match (a, b) {
            (Bottom(i), Bottom(j)) => SurfaceEdge::BottomRim(rim(i, j)),
            (Top(i), Top(j)) => SurfaceEdge::TopRim(rim(i, j)),
            (Bottom(i), Top(_)) | (Top(_), Bottom(i)) => SurfaceEdge::Lateral(i),
            (Center, Top(i)) | (Top(i), Center) => SurfaceEdge::Spoke(i),
            (Center, Mark) | (Mark, Center) => SurfaceEdge::MarkSpoke,
            (Top(0), Mark) | (Mark, Top(0)) => SurfaceEdge::MarkRim(1),
            (Top(_), Mark) | (Mark, Top(_)) => SurfaceEdge::MarkRim(0),
            _ => unreachable!("no surface edge between {a:?} and {b:?}"),
        }
    }

    fn endpoints(&self, e: SurfaceEdge) -> (SurfaceVertex, SurfaceVertex) {
        use SurfaceVertex::*;
        let k = self.k;
        match e {
            SurfaceEdge::BottomRim(i) => (Bottom(i), Bottom((i + 1) % k)),
            SurfaceEdge::TopRim(i) => (Top(i), Top((i + 1) % k)),
            SurfaceEdge::Lateral(i) => (Bottom(i), Top(i)),
            SurfaceEdge::Spoke(i) => (Center, Top(i)),
            SurfaceEdge::MarkRim(0) => (Top(k - 1), Mark),
            SurfaceEdge::MarkRim(_) => (Mark, Top(0)),
            SurfaceEdge::MarkSpoke => (Center, Mark),
        }
    }

    pub fn edge_length(&self, e: SurfaceEdge) -> f64 {
        let (a, b) = self.endpoints(e);
        dist3(self.point(a), self.point(b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceVertex {
    Bottom(usize),
    Top(usize),
    /// Center of the top face: a node of cut trees, not a polytope vertex.
    Center,
    /// Midpoint of the top rim edge from `T_{k-1}` to `T_0`.
    Mark,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceEdge {
    Lateral(usize),
    /// From `T_i` to `T_{i+1}`.
    TopRim(usize),
    /// From the top center to `T_i`.
    Spoke(usize),
    BottomRim(usize),
    /// `T_{k-1} M` (0) and `M T_0` (1), the two halves of the last top rim edge.
    MarkRim(usize),
    /// From the top center to `M`.
    MarkSpoke,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutTree {
    pub k: usize,
    /// `bits[i]` is digit `m_i`.
    pub bits: Vec<bool>,
    pub edges: BTreeSet<SurfaceEdge>,
}

impl CutTree {
    /// Digits written most significant first, as in `T_1001101`.
    pub fn bit_string(&self) -> String {
        self.bits.iter().rev().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn degrees(&self, f: &Frustum) -> BTreeMap<SurfaceVertex, usize> {
        let mut deg = BTreeMap::new();
        for &e in &self.edges {
            let (a, b) = f.endpoints(e);
            *deg.entry(a).or_insert(0) += 1;
            *deg.entry(b).or_insert(0) += 1;
        }
        deg
    }

    pub fn cut_length(&self, f: &Frustum) -> f64 {
        self.edges.iter().map(|&e| f.edge_length(e)).sum()
    }
}

/// Parse a digit string, most significant digit first.
pub fn parse_bits(s: &str, k: usize) -> Result<Vec<bool>, ConeError> {
    if s.len() != k - 1 || !s.chars().all(|c| c == '0' || c == '1') {
        return Err(ConeError::BadParameter(format!("need {} binary digits, got {s:?}", k - 1)));
    }
    Ok(s.chars().rev().map(|c| c == '1').collect())
}

pub fn volcano_cut_tree(f: &Frustum, bits: &[bool]) -> Result<CutTree, ConeError> {
    let k = f.k;
    if bits.len() != k - 1 {
        return Err(ConeError::BadParameter(format!("need {} digits, got {}", k - 1, bits.len())));
    }
    let mut edges: BTreeSet<SurfaceEdge> = (0..k)
        .map(SurfaceEdge::Lateral)
        .chain((1..k).map(SurfaceEdge::Spoke))
        .chain([SurfaceEdge::MarkSpoke, SurfaceEdge::MarkRim(1)])
        .collect();
    for (i, &b) in bits.iter().enumerate() {
        if b {
            edges.insert(SurfaceEdge::TopRim(i));
            edges.remove(&SurfaceEdge::Spoke(i + 1));
        }
    }
    // a cut ending at a flat point opens nothing; with every spoke restored
    // the path c M T_0 dangles and the top face stays whole
    loop {
        let deg = CutTree { k, bits: Vec::new(), edges: edges.clone() }.degrees(f);
        let dangling = edges.iter().copied().find(|&e| {
            let (a, b) = f.endpoints(e);
            [a, b].iter().any(|v| matches!(v, SurfaceVertex::Center | SurfaceVertex::Mark) && deg[v] == 1)
        });
        match dangling {
            Some(e) => {
                edges.remove(&e);
            }
            None => break,
        }
    }
    let t = CutTree { k, bits: bits.to_vec(), edges };
    let report = validate_cut_tree(f, &t);
    if !report.passed() {
        return Err(ConeError::NotATree(report.violations.join("; ")));
    }
    Ok(t)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CutTreeReport {
    pub is_tree: bool,
    pub spans_vertices: bool,
    pub leaves_at_vertices: bool,
    /// A point of degree d appears d times on the developed boundary.
    pub degree_matches_preimages: bool,
    /// Every arc is a union of surface edges, hence polygonal.
    pub arcs_polygonal: bool,
    pub violations: Vec<String>,
}

impl CutTreeReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_cut_tree(f: &Frustum, t: &CutTree) -> CutTreeReport {
    let mut r = CutTreeReport { arcs_polygonal: true, ..Default::default() };
    let deg = t.degrees(f);
    // tree: connected on its vertices with one edge fewer than vertices
    let mut adj: BTreeMap<SurfaceVertex, Vec<SurfaceVertex>> = BTreeMap::new();
    for &e in &t.edges {
        let (a, b) = f.endpoints(e);
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let connected = match adj.keys().next() {
        None => false,
        Some(&start) => {
            let mut seen = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[&u] {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            seen.len() == adj.len()
        }
    };
    r.is_tree = connected && t.edges.len() + 1 == adj.len();
    if !r.is_tree {
        r.violations.push("cut edges do not form a tree".into());
    }
    let polytope_vertices =
        (0..f.k).map(SurfaceVertex::Bottom).chain((0..f.k).map(SurfaceVertex::Top));
    let missing: Vec<String> = polytope_vertices.filter(|v| !deg.contains_key(v)).map(|v| format!("{v:?}")).collect();
    r.spans_vertices = missing.is_empty();
    if !r.spans_vertices {
        r.violations.push(format!("vertices not reached: {}", missing.join(", ")));
    }
    r.leaves_at_vertices =
        deg.iter().all(|(v, &d)| d != 1 || !matches!(v, SurfaceVertex::Center | SurfaceVertex::Mark));
    if !r.leaves_at_vertices {
        r.violations.push("a leaf lies away from the polytope vertices".into());
    }
    if t.edges.iter().any(|e| matches!(e, SurfaceEdge::BottomRim(_))) {
        r.violations.push("bottom rim edges are never cut".into());
    }
    if r.is_tree {
        match trace_boundary(f, t) {
            Some(corners) => {
                let mut seen: BTreeMap<SurfaceVertex, usize> = BTreeMap::new();
                for &(_, v) in &corners {
                    *seen.entry(v).or_insert(0) += 1;
                }
                r.degree_matches_preimages = deg.iter().all(|(v, d)| seen.get(v) == Some(d));
                if !r.degree_matches_preimages {
                    r.violations.push("boundary preimage counts differ from degrees".into());
                }
            }
            None => r.violations.push("surface minus the cut is not a single disk".into()),
        }
    }
    r
}

/// Walk the boundary of the cut surface. Each corner is a face and the
/// surface vertex where the boundary turns, in counterclockwise order.
fn trace_boundary(f: &Frustum, t: &CutTree) -> Option<Vec<(usize, SurfaceVertex)>> {
    let faces = f.faces();
    let mut by_edge: BTreeMap<SurfaceEdge, Vec<(usize, usize)>> = BTreeMap::new();
    for (fi, vs) in faces.iter().enumerate() {
        for i in 0..vs.len() {
            by_edge.entry(f.edge_between(vs[i], vs[(i + 1) % vs.len()])).or_default().push((fi, i));
        }
    }
    let edge_of = |fi: usize, i: usize| {
        let vs = &faces[fi];
        f.edge_between(vs[i], vs[(i + 1) % vs.len()])
    };
    let start = faces
        .iter()
        .enumerate()
        .flat_map(|(fi, vs)| (0..vs.len()).map(move |i| (fi, i)))
        .find(|&(fi, i)| t.edges.contains(&edge_of(fi, i)))?;
    let total = 2 * t.edges.len();
    let mut corners = Vec::with_capacity(total);
    let (mut fi, mut i) = start;
    for _ in 0..=total {
        corners.push((fi, faces[fi][i]));
        // turn around the end vertex until the next cut edge
        let mut g = fi;
        let mut j = (i + 1) % faces[g].len();
        let mut guard = 0;
        while !t.edges.contains(&edge_of(g, j)) {
            let e = edge_of(g, j);
            let (h, hj) = *by_edge[&e].iter().find(|&&(h, _)| h != g)?;
            g = h;
            j = (hj + 1) % faces[g].len();
            guard += 1;
            if guard > faces.len() * 4 {
                return None;
            }
        }
        fi = g;
        i = j;
        if (fi, i) == start {
            break;
        }
    }
    if (fi, i) != start || corners.len() != total {
        return None;
    }
    Some(corners)
}

/// A planar polygon given counterclockwise.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarPolygon {
    pub points: Vec<[f64; 2]>,
}

const SIGNATURE_TOLERANCE: f64 = 1e-6;

impl PlanarPolygon {
    pub fn perimeter(&self) -> f64 {
        let n = self.points.len();
        (0..n).map(|i| dist2(self.points[i], self.points[(i + 1) % n])).sum()
    }

    pub fn area(&self) -> f64 {
        let n = self.points.len();
        0.5 * (0..n)
            .map(|i| {
                let (a, b) = (self.points[i], self.points[(i + 1) % n]);
                a[0] * b[1] - a[1] * b[0]
            })
            .sum::<f64>()
    }

    pub fn is_simple(&self, tol: f64) -> bool {
        is_simple_f(&self.points, tol)
    }

    /// Corners with collinear neighbours removed.
    fn corners(&self) -> Vec<[f64; 2]> {
        let n = self.points.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b, c) = (self.points[(i + n - 1) % n], self.points[i], self.points[(i + 1) % n]);
            if turn(a, b, c).abs() > SIGNATURE_TOLERANCE {
                out.push(b);
            }
        }
        out
    }

    /// Congruence signature: per corner, the quantized turn there and the
    /// length of the next edge, minimized over starting corner and mirror
    /// image.
    pub fn signature(&self) -> Vec<(i64, i64)> {
        let c = self.corners();
        let n = c.len();
        let quant = |x: f64| (x / SIGNATURE_TOLERANCE).round() as i64;
        let fwd: Vec<(i64, i64)> = (0..n)
            .map(|i| (quant(turn(c[(i + n - 1) % n], c[i], c[(i + 1) % n])), quant(dist2(c[i], c[(i + 1) % n]))))
            .collect();
        // the mirror image, traversed counterclockwise, reverses the order
        let back: Vec<(i64, i64)> = (0..n)
            .rev()
            .map(|i| (fwd[i].0, quant(dist2(c[i], c[(i + n - 1) % n]))))
            .collect();
        let mut best: Option<Vec<(i64, i64)>> = None;
        for seq in [fwd, back] {
            for s in 0..n {
                let rot: Vec<(i64, i64)> = seq[s..].iter().chain(&seq[..s]).copied().collect();
                if best.as_ref().map_or(true, |b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        best.unwrap_or_default()
    }

    /// One `<path>` in an SVG document, one unit per `unit` of length.
    pub fn to_svg(&self, unit: f64) -> String {
        let pts: Vec<[f64; 2]> = self.points.iter().map(|p| [p[0] / unit, -p[1] / unit]).collect();
        let (mut lo, mut hi) = ([f64::MAX; 2], [f64::MIN; 2]);
        for p in &pts {
            for d in 0..2 {
                lo[d] = lo[d].min(p[d]);
                hi[d] = hi[d].max(p[d]);
            }
        }
        let pad = 0.5;
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let _ = write!(d, "{}{:.6},{:.6} ", if i == 0 { "M" } else { "L" }, p[0], p[1]);
        }
        d.push('Z');
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\">\n  <path d=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"0.02\"/>\n</svg>\n",
            lo[0] - pad,
            lo[1] - pad,
            hi[0] - lo[0] + 2.0 * pad,
            hi[1] - lo[1] + 2.0 * pad,
            d
        )
    }
}

fn dist2(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn dist3(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

/// Signed exterior angle at `b`.
fn turn(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    let (u, v) = ([b[0] - a[0], b[1] - a[1]], [c[0] - b[0], c[1] - b[1]]);
    (u[0] * v[1] - u[1] * v[0]).atan2(u[0] * v[0] + u[1] * v[1])
}

fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn unit3(a: [f64; 3]) -> [f64; 3] {
    let l = dot3(a, a).sqrt();
    [a[0] / l, a[1] / l, a[2] / l]
}

/// Place a face in the plane so that `y ↦ py` and the direction to `x`
/// maps to the direction `py → px`, keeping counterclockwise order.
fn place_face(f: &Frustum, vs: &[SurfaceVertex], y: SurfaceVertex, x: SurfaceVertex, py: [f64; 2], px: [f64; 2]) -> Vec<[f64; 2]> {
    let p3: Vec<[f64; 3]> = vs.iter().map(|&v| f.point(v)).collect();
    let normal = unit3(cross3(sub3(p3[1], p3[0]), sub3(p3[2], p3[0])));
    let (oy, ox) = (f.point(y), f.point(x));
    let u = unit3(sub3(ox, oy));
    let w = cross3(normal, u);
    let d = [px[0] - py[0], px[1] - py[1]];
    let l = d[0].hypot(d[1]);
    let (du, dw) = ([d[0] / l, d[1] / l], [-d[1] / l, d[0] / l]);
    p3.iter()
        .map(|&p| {
            let r = sub3(p, oy);
            let (a, b) = (dot3(r, u), dot3(r, w));
            [py[0] + a * du[0] + b * dw[0], py[1] + a * du[1] + b * dw[1]]
        })
        .collect()
}

/// Face images in the plane, the bottom fixed.
pub fn develop_faces(f: &Frustum, t: &CutTree) -> Result<Vec<Vec<[f64; 2]>>, ConeError> {
    let faces = f.faces();
    let mut by_edge: BTreeMap<SurfaceEdge, Vec<(usize, usize)>> = BTreeMap::new();
    for (fi, vs) in faces.iter().enumerate() {
        for i in 0..vs.len() {
            by_edge.entry(f.edge_between(vs[i], vs[(i + 1) % vs.len()])).or_default().push((fi, i));
        }
    }
    let mut images: Vec<Option<Vec<[f64; 2]>>> = vec![None; faces.len()];
    let (b0, b1) = (faces[0][0], faces[0][1]);
    let l = dist3(f.point(b0), f.point(b1));
    images[0] = Some(place_face(f, &faces[0], b0, b1, [0.0, 0.0], [l, 0.0]));
    let mut queue = VecDeque::from([0usize]);
    while let Some(fi) = queue.pop_front() {
        let vs = &faces[fi];
        for i in 0..vs.len() {
            let (a, b) = (vs[i], vs[(i + 1) % vs.len()]);
            let e = f.edge_between(a, b);
            if t.edges.contains(&e) {
                continue;
            }
            for &(g, _) in &by_edge[&e] {
                if g == fi || images[g].is_some() {
                    continue;
                }
                let img = images[fi].as_ref().expect("placed before queued");
                let (pa, pb) = (img[i], img[(i + 1) % vs.len()]);
                // the shared edge runs b → a in the neighbour
                images[g] = Some(place_face(f, &faces[g], b, a, pb, pa));
                queue.push_back(g);
            }
        }
    }
    images
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| ConeError::NotATree("cut disconnects the surface".into()))
}

/// Develop the surface cut along `t` into a planar polygon.
pub fn unfold(f: &Frustum, t: &CutTree) -> Result<PlanarPolygon, ConeError> {
    let poly = development_boundary(f, t)?;
    if !poly.is_simple(1e-9 * q_to_f64(&f.r_bottom)) {
        return Err(ConeError::NonSimpleUnfolding);
    }
    Ok(poly)
}

/// Boundary of the development, simple or not.
pub fn development_boundary(f: &Frustum, t: &CutTree) -> Result<PlanarPolygon, ConeError> {
    let images = develop_faces(f, t)?;
    let corners = trace_boundary(f, t).ok_or_else(|| ConeError::NotATree("boundary walk failed".into()))?;
    let faces = f.faces();
    let points = corners
        .iter()
        .map(|&(fi, v)| {
            let i = faces[fi].iter().position(|&w| w == v).expect("corner lies on its face");
            images[fi][i]
        })
        .collect();
    Ok(PlanarPolygon { points })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnfoldingCensus {
    pub trees: usize,
    pub simple: usize,
    pub non_simple: usize,
    pub distinct: usize,
}

/// All `2^(k-1)` bit patterns: how many unfold simply, and how many
/// pairwise incongruent developments result.
pub fn distinct_unfoldings(f: &Frustum) -> UnfoldingCensus {
    let patterns: Vec<Vec<bool>> =
        (0u64..1 << (f.k - 1)).map(|m| (0..f.k - 1).map(|i| m >> i & 1 == 1).collect()).collect();
    let one = |bits: &Vec<bool>| -> Option<Vec<(i64, i64)>> {
        let t = volcano_cut_tree(f, bits).ok()?;
        unfold(f, &t).ok().map(|p| p.signature())
    };
    #[cfg(feature = "parallel")]
    let sigs: Vec<Option<Vec<(i64, i64)>>> = {
        use rayon::prelude::*;
        patterns.par_iter().map(one).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let sigs: Vec<Option<Vec<(i64, i64)>>> = patterns.iter().map(one).collect();
    let simple = sigs.iter().flatten().count();
    let distinct: HashSet<&Vec<(i64, i64)>> = sigs.iter().flatten().collect();
    UnfoldingCensus { trees: patterns.len(), simple, non_simple: patterns.len() - simple, distinct: distinct.len() }
}
