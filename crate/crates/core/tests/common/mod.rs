//! Oracles and generators shared by the integration tests. The oracles
//! here never call the enumerator or the checker; they recompute from the
//! polygon alone.

#![allow(dead_code)]

pub mod props;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, FileFailurePersistence, RngSeed};

use foldtree::gluing::GluingTree;
use foldtree::polygon::{polygon_from_coordinates, polygon_from_exact, PolygonSpec};
use foldtree::Q;

pub const SEED: u64 = 0x5eed_f01d;
pub const CASES: u32 = 1000;

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: Some(Box::new(FileFailurePersistence::Off)),
        ..Config::default()
    }
}

pub fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

pub fn keys(trees: &[GluingTree]) -> BTreeSet<String> {
    trees.iter().map(|t| t.canonical_key().0).collect()
}

/// Convex polygon whose edges run along the six directions of the
/// triangular lattice. `a[d]` is the length in direction `d·π/3`; the last
/// two are forced by closure. Angles are exact multiples of π/3.
pub fn hex_polygon(a0: Q, a1: Q, a2: Q, a3: Q) -> Option<PolygonSpec> {
    let a5 = a2 + a3 - a0;
    let a4 = a1 + a2 - a5;
    let lens = [a0, a1, a2, a3, a4, a5];
    if lens.iter().any(|l| *l < Q::zero()) {
        return None;
    }
    let dirs: Vec<usize> = (0..6).filter(|&d| !lens[d].is_zero()).collect();
    if dirs.len() < 3 {
        return None;
    }
    let m = dirs.len();
    let items: Vec<(Q, Q)> = (0..m)
        .map(|i| {
            let (prev, cur) = (dirs[(i + m - 1) % m], dirs[i]);
            let turn = ((cur + 6 - prev) % 6) as i128;
            (lens[cur], Q::one() - Q::new(turn, 3))
        })
        .collect();
    polygon_from_exact(&items).ok()
}

pub fn hex_polygon_strategy() -> impl Strategy<Value = PolygonSpec> {
    let side = (0i128..5, 1i128..4).prop_map(|(n, d)| Q::new(n, d));
    (side.clone(), side.clone(), side.clone(), side).prop_filter_map("closure needs nonnegative sides", |(a, b, c, d)| {
        hex_polygon(a, b, c, d)
    })
}

/// Axis-parallel polygon from a staircase of column heights; not convex in
/// general.
pub fn staircase(heights: &[i128]) -> Option<PolygonSpec> {
    let mut pts = vec![[Q::zero(), Q::zero()], [Q::from_integer(heights.len() as i128), Q::zero()]];
    let mut x = heights.len() as i128;
    let mut y = 0;
    for &h in heights.iter().rev() {
        if h != y {
            pts.push([Q::from_integer(x), Q::from_integer(h)]);
            y = h;
        }
        x -= 1;
        pts.push([Q::from_integer(x), Q::from_integer(h)]);
    }
    // drop collinear points
    let n = pts.len();
    let keep: Vec<[Q; 2]> = (0..n)
        .filter(|&i| {
            let (a, b, c) = (pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
            (b[0] - a[0]) * (c[1] - b[1]) != (b[1] - a[1]) * (c[0] - b[0])
        })
        .map(|i| pts[i])
        .collect();
    polygon_from_coordinates(&keep).ok()
}

fn angle_pi(p: &PolygonSpec, v: usize) -> Q {
    p.angle(v).pi_fraction().expect("oracles need exact angles")
}

fn find(uf: &mut [usize], mut x: usize) -> usize {
    while uf[x] != x {
        uf[x] = uf[uf[x]];
        x = uf[x];
    }
    x
}

fn union(uf: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(uf, a), find(uf, b));
    uf[ra] = rb;
}

/// Calls `emit` with every non-crossing perfect matching of `0..n`
/// (`mate[i]` is the partner of `i`), generated as Dyck paths.
pub fn noncrossing_matchings(n: usize, emit: &mut dyn FnMut(&[usize])) {
    fn walk(pos: usize, n: usize, open: &mut Vec<usize>, mate: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
        if pos == n {
            if open.is_empty() {
                emit(mate);
            }
            return;
        }
        if open.len() < n - pos {
            open.push(pos);
            walk(pos + 1, n, open, mate, emit);
            open.pop();
        }
        if let Some(top) = open.pop() {
            mate[top] = pos;
            mate[pos] = top;
            walk(pos + 1, n, open, mate, emit);
            open.push(top);
        }
    }
    let mut mate = vec![usize::MAX; n];
    walk(0, n, &mut Vec::new(), &mut mate, emit);
}

/// Every assignment of each edge to "folded" or "paired with an equal
/// edge", kept when the pairs do not cross and every vertex class has
/// angle at most 2π. Returns `(pairs, folded)`, both sorted.
pub fn brute_edge_to_edge(p: &PolygonSpec) -> BTreeSet<(Vec<(usize, usize)>, Vec<usize>)> {
    let n = p.n();
    let mut out = BTreeSet::new();
    let mut partner: Vec<Option<usize>> = vec![None; n];
    fn rec(
        p: &PolygonSpec,
        i: usize,
        partner: &mut Vec<Option<usize>>,
        out: &mut BTreeSet<(Vec<(usize, usize)>, Vec<usize>)>,
    ) {
        let n = p.n();
        if i == n {
            let pairs: Vec<(usize, usize)> =
                (0..n).filter_map(|a| partner[a].filter(|&b| b != a && a < b).map(|b| (a, b))).collect();
            let folded: Vec<usize> = (0..n).filter(|&a| partner[a] == Some(a)).collect();
            let crossing = pairs.iter().any(|&(a, b)| pairs.iter().any(|&(c, d)| a < c && c < b && b < d));
            if crossing {
                return;
            }
            let mut uf: Vec<usize> = (0..n).collect();
            for &(a, b) in &pairs {
                union(&mut uf, a, (b + 1) % n);
                union(&mut uf, (a + 1) % n, b);
            }
            for &a in &folded {
                union(&mut uf, a, (a + 1) % n);
            }
            let mut sums: BTreeMap<usize, Q> = BTreeMap::new();
            for v in 0..n {
                let r = find(&mut uf, v);
                *sums.entry(r).or_insert_with(Q::zero) += angle_pi(p, v);
            }
            if sums.values().all(|s| *s <= Q::from_integer(2)) {
                out.insert((pairs, folded));
            }
            return;
        }
        if partner[i].is_some() {
            return rec(p, i + 1, partner, out);
        }
        partner[i] = Some(i);
        rec(p, i + 1, partner, out);
        for k in i + 1..n {
            if partner[k].is_none() && p.length(i) == p.length(k) {
                partner[i] = Some(k);
                partner[k] = Some(i);
                rec(p, i + 1, partner, out);
                partner[k] = None;
            }
        }
        partner[i] = None;
    }
    rec(p, 0, &mut partner, &mut out);
    out
}

/// Label of one point class, in the same textual form as the library.
fn label_text(mut elems: Vec<(u8, usize)>) -> String {
    elems.sort();
    let parts: Vec<String> =
        elems.iter().map(|&(k, i)| format!("{}{}", if k == 0 { 'v' } else { 'e' }, i + 1)).collect();
    format!("{{{}}}", parts.join(","))
}

/// Rooted encodings minimized over the root: the textual canonical form.
pub fn tree_key(labels: &[String], arcs: &[(usize, usize)]) -> String {
    let k = labels.len();
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in arcs {
        adj[a].push(b);
        adj[b].push(a);
    }
    fn enc(adj: &[Vec<usize>], labels: &[String], u: usize, parent: usize) -> String {
        let mut kids: Vec<String> = adj[u].iter().filter(|&&w| w != parent).map(|&w| enc(adj, labels, w, u)).collect();
        kids.sort();
        format!("{}({})", labels[u], kids.concat())
    }
    (0..k).map(|r| enc(&adj, labels, r, usize::MAX)).min().unwrap_or_default()
}

/// Completeness oracle. Splits the boundary into `steps` equal pieces
/// (every vertex must fall on a grid point), tries every non-crossing
/// reversed pairing of the pieces, keeps those whose point classes have
/// angle at most 2π, and returns the canonical keys of the resulting trees.
pub fn grid_gluing_keys(p: &PolygonSpec, steps: usize) -> BTreeSet<String> {
    let l = p.perimeter();
    let h = l / Q::from_integer(steps as i128);
    let mut vertex_at: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..p.n() {
        let g = p.vertex_offset(v) / h;
        assert!(g.is_integer(), "vertex v{} is off the grid", v + 1);
        vertex_at.insert(g.to_integer() as usize, v);
    }
    let edge_of = |g: usize| -> usize { (0..p.n()).rev().find(|&e| p.vertex_offset(e) <= h * Q::from_integer(g as i128)).unwrap() };
    let point_angle: Vec<Q> =
        (0..steps).map(|g| vertex_at.get(&g).map_or(Q::one(), |&v| angle_pi(p, v))).collect();
    let mut keys = BTreeSet::new();
    let mut emit = |m: &[usize]| {
        let mut uf: Vec<usize> = (0..steps).collect();
        for a in 0..steps {
            let b = m[a];
            if a < b {
                union(&mut uf, a, (b + 1) % steps);
                union(&mut uf, (a + 1) % steps, b);
            }
        }
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for g in 0..steps {
            let r = find(&mut uf, g);
            classes.entry(r).or_default().push(g);
        }
        for pts in classes.values() {
            let s: Q = pts.iter().map(|&g| point_angle[g]).sum();
            if s > Q::from_integer(2) {
                return;
            }
        }
        // classes of two plain points are interior points of one seam
        let node_of: BTreeMap<usize, usize> = classes
            .iter()
            .filter(|(_, pts)| !(pts.len() == 2 && pts.iter().all(|g| !vertex_at.contains_key(g))))
            .enumerate()
            .map(|(i, (&r, _))| (r, i))
            .collect();
        let mut labels = vec![String::new(); node_of.len()];
        for (r, pts) in &classes {
            if let Some(&i) = node_of.get(r) {
                labels[i] = label_text(
                    pts.iter().map(|&g| vertex_at.get(&g).map_or((1, edge_of(g)), |&v| (0, v))).collect(),
                );
            }
        }
        let breaks: Vec<usize> = (0..steps).filter(|&g| node_of.contains_key(&find(&mut uf, g))).collect();
        let mut arcs = BTreeSet::new();
        for w in 0..breaks.len() {
            let (a, b) = (breaks[w], breaks[(w + 1) % breaks.len()]);
            let (x, y) = (node_of[&find(&mut uf, a)], node_of[&find(&mut uf, b)]);
            arcs.insert((x.min(y), x.max(y)));
        }
        let arcs: Vec<(usize, usize)> = arcs.into_iter().collect();
        assert_eq!(arcs.len() + 1, labels.len(), "non-crossing reversed pairings always give a tree");
        keys.insert(tree_key(&labels, &arcs));
    };
    noncrossing_matchings(steps, &mut emit);
    keys
}

/// The classic cube net: unit pieces of the Latin cross boundary, starting
/// at the bottom left corner, glued in these pairs.
pub const CUBE_PAIRS: [(usize, usize); 7] = [(0, 7), (1, 4), (2, 3), (5, 6), (8, 9), (10, 13), (11, 12)];

/// The Latin cross with a flat vertex at the middle of each long edge, so
/// that every edge has unit length.
pub fn unit_edge_cross() -> PolygonSpec {
    let pts: Vec<[Q; 2]> = [
        (0, 0),
        (1, 0),
        (1, 1),
        (1, 2),
        (2, 2),
        (2, 3),
        (1, 3),
        (1, 4),
        (0, 4),
        (0, 3),
        (-1, 3),
        (-1, 2),
        (0, 2),
        (0, 1),
    ]
    .iter()
    .map(|&(x, y)| [Q::from_integer(x), Q::from_integer(y)])
    .collect();
    polygon_from_coordinates(&pts).expect("valid polygon")
}
