//! Gluings in which every edge is either glued whole to another edge of the
//! same length or folded in half onto itself.
//!
//! Such gluings are non-crossing partial matchings of the edges. An interval
//! dynamic program over `C(i, j)` (edges `i..=j` whose outer vertices `v_i`
//! and `v_{j+1}` are already identified) enumerates them, tracking the angle
//! that interior vertices add to the outer class.

use std::collections::BTreeMap;

use crate::angle::AngleSum;
use crate::polygon::PolygonSpec;
use crate::Q;

use super::families::tree_from_concrete_seams;
use crate::gluing::GluingTree;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeMatching {
    /// Pairs `(i, k)` with `i < k`: `e_i` glued to `e_k`.
    pub pairs: Vec<(usize, usize)>,
    /// Edges folded at their midpoint.
    pub folded: Vec<usize>,
}

impl EdgeMatching {
    pub fn to_tree(&self, p: &PolygonSpec) -> GluingTree {
        let at = |v: usize| p.vertex_offset(v % p.n());
        let end = |v: usize| if v % p.n() == 0 { p.perimeter() } else { at(v) };
        let mut seams = Vec::new();
        for &(i, k) in &self.pairs {
            seams.push([at(i), end(i + 1), at(k), end(k + 1)]);
        }
        for &e in &self.folded {
            let mid = (at(e) + end(e + 1)) / Q::from_integer(2);
            seams.push([at(e), mid, mid, end(e + 1)]);
        }
        tree_from_concrete_seams(p, &seams)
    }
}

struct Dp<'a> {
    p: &'a PolygonSpec,
    eps: f64,
    memo: BTreeMap<(usize, usize), Vec<(EdgeMatching, AngleSum)>>,
}

impl Dp<'_> {
    fn angle(&self, v: usize) -> AngleSum {
        AngleSum::default().add(self.p.angle(v % self.p.n()))
    }

    fn join(a: AngleSum, b: AngleSum) -> AngleSum {
        a.merge(b)
    }

    /// Matchings of edges `i..=j` (empty when `i > j`) with the angle added
    /// to the class of `v_i ≡ v_{j+1}` by vertices strictly inside.
    fn solve(&mut self, i: usize, j: usize) -> Vec<(EdgeMatching, AngleSum)> {
        if i > j {
            return vec![(EdgeMatching::default(), AngleSum::default())];
        }
        if let Some(v) = self.memo.get(&(i, j)) {
            return v.clone();
        }
        let mut out = Vec::new();
        // fold e_i: v_i ≡ v_{i+1}
        for (m, rest) in self.solve(i + 1, j) {
            let add = if i == j { AngleSum::default() } else { Self::join(self.angle(i + 1), rest) };
            if add.within_full_turn(self.eps) {
                let mut m = m;
                m.folded.push(i);
                out.push((m, add));
            }
        }
        // glue e_i to e_k: v_i ≡ v_{k+1}, v_{i+1} ≡ v_k
        for k in i + 1..=j {
            if self.p.length(i) != self.p.length(k) {
                continue;
            }
            let inner = self.solve(i + 1, k - 1);
            let outer = self.solve(k + 1, j);
            for (mi, ai) in &inner {
                let class = if k == i + 1 {
                    self.angle(i + 1)
                } else {
                    Self::join(Self::join(self.angle(i + 1), self.angle(k)), *ai)
                };
                if !class.within_full_turn(self.eps) {
                    continue;
                }
                for (mo, ao) in &outer {
                    let add = if k == j { AngleSum::default() } else { Self::join(self.angle(k + 1), *ao) };
                    if !add.within_full_turn(self.eps) {
                        continue;
                    }
                    let mut m = EdgeMatching::default();
                    m.pairs.push((i, k));
                    m.pairs.extend(mi.pairs.iter().copied());
                    m.pairs.extend(mo.pairs.iter().copied());
                    m.folded.extend(mi.folded.iter().copied());
                    m.folded.extend(mo.folded.iter().copied());
                    out.push((m, add));
                }
            }
        }
        self.memo.insert((i, j), out.clone());
        out
    }
}

/// All edge-to-edge gluings of `p`, as matchings sorted for stable output.
pub fn enumerate_edge_to_edge(p: &PolygonSpec) -> Vec<EdgeMatching> {
    let n = p.n();
    let mut dp = Dp { p, eps: p.epsilon(), memo: BTreeMap::new() };
    let mut out: Vec<EdgeMatching> = dp
        .solve(0, n - 1)
        .into_iter()
        .filter(|(_, add)| Dp::join(dp.angle(0), *add).within_full_turn(dp.eps))
        .map(|(mut m, _)| {
            m.pairs.sort();
            m.folded.sort();
            m
        })
        .collect();
    out.sort();
    out
}

/// Number of edge-to-edge gluings, counted without listing them.
pub fn count_edge_to_edge(p: &PolygonSpec) -> u128 {
    let n = p.n();
    let mut memo = BTreeMap::new();
    let eps = p.epsilon();
    let top = count(p, eps, 0, n - 1, &mut memo);
    let root = AngleSum::default().add(p.angle(0));
    top.iter().filter(|(add, _)| root.merge(*add).within_full_turn(eps)).map(|(_, c)| c).sum()
}

type Tally = Vec<(AngleSum, u128)>;

fn count(p: &PolygonSpec, eps: f64, i: usize, j: usize, memo: &mut BTreeMap<(usize, usize), Tally>) -> Tally {
    if i > j {
        return vec![(AngleSum::default(), 1)];
    }
    if let Some(v) = memo.get(&(i, j)) {
        return v.clone();
    }
    let angle = |v: usize| AngleSum::default().add(p.angle(v % p.n()));
    let mut acc: Tally = Vec::new();
    let mut push = |s: AngleSum, c: u128| {
        if !s.within_full_turn(eps) {
            return;
        }
        match acc.iter_mut().find(|(t, _)| *t == s) {
            Some(e) => e.1 += c,
            None => acc.push((s, c)),
        }
    };
    for (rest, c) in count(p, eps, i + 1, j, memo) {
        push(if i == j { AngleSum::default() } else { angle(i + 1).merge(rest) }, c);
    }
    for k in i + 1..=j {
        if p.length(i) != p.length(k) {
            continue;
        }
        let inner = count(p, eps, i + 1, k - 1, memo);
        let outer = count(p, eps, k + 1, j, memo);
        for (ai, ci) in &inner {
            let class = if k == i + 1 { angle(i + 1) } else { angle(i + 1).merge(angle(k)).merge(*ai) };
            if !class.within_full_turn(eps) {
                continue;
            }
            for (ao, co) in &outer {
                push(if k == j { AngleSum::default() } else { angle(k + 1).merge(*ao) }, ci * co);
            }
        }
    }
    memo.insert((i, j), acc.clone());
    acc
}
