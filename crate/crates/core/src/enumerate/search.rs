//! Zip search over gluings.
//!
//! A partial gluing is grown from a root node. Every pending task is an arc
//! `[a, b]` of the boundary whose endpoints are already glued together; the
//! arc is zipped shut from both ends until one side reaches a vertex. There
//! the two current points become a node, optionally joined by further
//! vertices (and at most one edge-interior point) lying inside the arc, and
//! each sub-arc between consecutive node points becomes a new task.
//!
//! Positions are affine in the belt parameters introduced by free
//! edge-interior points. Comparisons that depend on parameters branch three
//! ways and record the outcome in the state's feasible region.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};

use num_traits::{One, Zero};

use super::{EnumerateOptions, Seed};
use crate::angle::AngleSum;
use crate::gluing::{BoundaryPoint, GluingTree, PointKind, Seam};
use crate::param::{solve_for_param, Affine, Constraint, ParamRegion};
use crate::polygon::PolygonSpec;
use crate::Q;

/// A boundary point on the unrolled boundary. Vertices carry their unrolled
/// vertex index, interior points the unrolled index of their edge.
#[derive(Clone, Debug)]
struct SPoint {
    idx: usize,
    vertex: bool,
    pos: Affine,
}

#[derive(Clone, Debug)]
struct SNode {
    points: Vec<SPoint>,
    angle: AngleSum,
    interior: usize,
}

#[derive(Clone, Debug)]
struct Task {
    a: SPoint,
    b: SPoint,
    parent: usize,
}

#[derive(Clone, Debug)]
pub(super) struct State {
    nodes: Vec<SNode>,
    arcs: Vec<(usize, usize)>,
    seams: Vec<[SPoint; 4]>,
    tasks: Vec<Task>,
    region: ParamRegion,
    next_param: usize,
    live: usize,
}

impl State {
    fn substitute(&mut self, var: usize, val: &Affine) {
        let fix = |p: &mut SPoint| p.pos = p.pos.substitute(var, val);
        for nd in &mut self.nodes {
            nd.points.iter_mut().for_each(fix);
        }
        for s in &mut self.seams {
            s.iter_mut().for_each(fix);
        }
        for t in &mut self.tasks {
            fix(&mut t.a);
            fix(&mut t.b);
        }
        self.region.substitute(var, val);
        self.region.simplify();
        self.live -= 1;
    }
}

#[derive(Debug, Default)]
pub(super) struct Counters {
    pub states: AtomicU64,
    pub pruned_region: AtomicU64,
    pub pruned_angle: AtomicU64,
    pub cells: AtomicU64,
    pub exhausted: AtomicBool,
}

pub(super) struct Search<'a> {
    poly: &'a PolygonSpec,
    n: usize,
    /// Unrolled vertex positions, indices `0..=2n+1`.
    at: Vec<Q>,
    perimeter: Q,
    eps: f64,
    opts: &'a EnumerateOptions,
    pub counters: Counters,
}

impl<'a> Search<'a> {
    pub fn new(poly: &'a PolygonSpec, opts: &'a EnumerateOptions) -> Self {
        let n = poly.n();
        let mut at = Vec::with_capacity(2 * n + 2);
        let mut acc = Q::zero();
        for k in 0..=2 * n + 1 {
            at.push(acc);
            acc += poly.length(k % n);
        }
        Search { poly, n, at, perimeter: poly.perimeter(), eps: poly.epsilon(), opts, counters: Counters::default() }
    }

    fn vpoint(&self, k: usize) -> SPoint {
        SPoint { idx: k, vertex: true, pos: Affine::constant(self.at[k]) }
    }

    fn add_point(&self, sum: AngleSum, p: &SPoint) -> AngleSum {
        if p.vertex {
            sum.add(self.poly.angle(p.idx % self.n))
        } else {
            sum.add_straight()
        }
    }

    fn node_of(&self, points: Vec<SPoint>) -> SNode {
        let angle = points.iter().fold(AngleSum::default(), |s, p| self.add_point(s, p));
        let interior = points.iter().filter(|p| !p.vertex).count();
        SNode { points, angle, interior }
    }

    fn degree_ok(&self, degree: usize) -> bool {
        self.opts.max_degree.map_or(true, |cap| degree <= cap)
    }

    /// Initial states for a seed.
    pub fn roots(&self, seed: Seed) -> Vec<State> {
        let empty = State {
            nodes: Vec::new(),
            arcs: Vec::new(),
            seams: Vec::new(),
            tasks: Vec::new(),
            region: ParamRegion::new(0),
            next_param: 0,
            live: 0,
        };
        let mut out = Vec::new();
        match seed {
            Seed::Vertex(i) => {
                let i = i % self.n;
                let root = self.vpoint(i);
                let end = self.vpoint(i + self.n);
                let mut st = empty;
                st.nodes.push(self.node_of(vec![root.clone()]));
                self.expand_node(st, 0, root, end, &mut out);
            }
            Seed::FoldPoint(j) => {
                let j = j % self.n;
                if self.opts.max_params == 0 {
                    return out;
                }
                let mut st = empty;
                let t = st.next_param;
                st.next_param += 1;
                st.live += 1;
                let off = Affine::param(t);
                st.region.push(Constraint::positive(off.clone()));
                st.region.push(Constraint::positive(Affine::constant(self.poly.length(j)).sub(&off)));
                let x = SPoint { idx: j, vertex: false, pos: off.add_const(self.at[j]) };
                let y = SPoint { idx: j + self.n, vertex: false, pos: x.pos.add_const(self.perimeter) };
                st.nodes.push(self.node_of(vec![x.clone()]));
                st.tasks.push(Task { a: x, b: y, parent: 0 });
                out.push(st);
            }
        }
        out
    }

    /// Split on the sign of `expr`, keeping only feasible outcomes.
    fn split_sign(&self, st: State, expr: &Affine) -> Vec<(Ordering, State)> {
        if let Some(c) = expr.as_constant() {
            return vec![(c.cmp(&Q::zero()), st)];
        }
        let mut out = Vec::with_capacity(3);
        let mut less = st.clone();
        less.region.push(Constraint::positive(expr.scale(-Q::one())));
        if less.region.is_feasible() {
            out.push((Ordering::Less, less));
        } else {
            self.counters.pruned_region.fetch_add(1, AtomicOrdering::Relaxed);
        }
        let mut eq = st.clone();
        let (var, val) = solve_for_param(expr).expect("non-constant expression");
        eq.substitute(var, &val);
        if eq.region.is_feasible() {
            out.push((Ordering::Equal, eq));
        } else {
            self.counters.pruned_region.fetch_add(1, AtomicOrdering::Relaxed);
        }
        let mut more = st;
        more.region.push(Constraint::positive(expr.clone()));
        if more.region.is_feasible() {
            out.push((Ordering::Greater, more));
        } else {
            self.counters.pruned_region.fetch_add(1, AtomicOrdering::Relaxed);
        }
        out
    }

    /// Attach a new node below `parent` through the seam `[a, lo]`/`[hi, b]`,
    /// then choose its extra points inside `(lo, hi)`.
    fn attach(&self, mut st: State, parent: usize, a: SPoint, b: SPoint, lo: SPoint, hi: SPoint, out: &mut Vec<State>) {
        let node = self.node_of(vec![lo.clone(), hi.clone()]);
        if !node.angle.within_full_turn(self.eps) {
            self.counters.pruned_angle.fetch_add(1, AtomicOrdering::Relaxed);
            return;
        }
        let id = st.nodes.len();
        st.nodes.push(node);
        st.arcs.push((parent, id));
        st.seams.push([a, lo.clone(), hi.clone(), b]);
        self.expand_node(st, id, lo, hi, out);
    }

    /// Enumerate extra points glued at node `id` strictly between `lo` and
    /// `hi`, pushing one successor per choice with the sub-arcs as tasks.
    fn expand_node(&self, st: State, id: usize, lo: SPoint, hi: SPoint, out: &mut Vec<State>) {
        let first = lo.idx + 1;
        let last = if hi.vertex { hi.idx - 1 } else { hi.idx };
        let candidates: Vec<usize> = (first..=last).collect();
        let mut chosen = Vec::new();
        self.choose_vertices(&st, id, &lo, &hi, &candidates, 0, &mut chosen, st.nodes[id].angle, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn choose_vertices(
        &self,
        st: &State,
        id: usize,
        lo: &SPoint,
        hi: &SPoint,
        candidates: &[usize],
        from: usize,
        chosen: &mut Vec<usize>,
        sum: AngleSum,
        out: &mut Vec<State>,
    ) {
        if from == candidates.len() {
            self.finish_node(st, id, lo, hi, chosen, sum, out);
            return;
        }
        // without candidates[from]
        self.choose_vertices(st, id, lo, hi, candidates, from + 1, chosen, sum, out);
        // with it
        let k = candidates[from];
        let with = sum.add(self.poly.angle(k % self.n));
        if with.within_full_turn(self.eps) {
            chosen.push(k);
            self.choose_vertices(st, id, lo, hi, candidates, from + 1, chosen, with, out);
            chosen.pop();
        } else {
            self.counters.pruned_angle.fetch_add(1, AtomicOrdering::Relaxed);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn finish_node(
        &self,
        st: &State,
        id: usize,
        lo: &SPoint,
        hi: &SPoint,
        chosen: &[usize],
        sum: AngleSum,
        out: &mut Vec<State>,
    ) {
        let base_degree = st.nodes[id].points.len() + chosen.len();
        if self.degree_ok(base_degree) {
            let extras: Vec<SPoint> = chosen.iter().map(|&k| self.vpoint(k)).collect();
            out.push(self.with_extras(st.clone(), id, lo, hi, extras));
        }
        // one edge-interior point, only where the node has none yet
        let may_add_interior = st.nodes[id].interior == 0
            && lo.vertex
            && hi.vertex
            && st.live < self.opts.max_params
            && sum.add_straight().within_full_turn(self.eps)
            && self.degree_ok(base_degree + 1);
        if !may_add_interior {
            return;
        }
        for e in lo.idx..hi.idx {
            let mut s2 = st.clone();
            let t = s2.next_param;
            s2.next_param += 1;
            s2.live += 1;
            let off = Affine::param(t);
            s2.region.push(Constraint::positive(off.clone()));
            s2.region.push(Constraint::positive(Affine::constant(self.poly.length(e % self.n)).sub(&off)));
            let c = SPoint { idx: e, vertex: false, pos: off.add_const(self.at[e]) };
            let mut extras: Vec<SPoint> = chosen.iter().map(|&k| self.vpoint(k)).collect();
            // keep boundary order: the point on e sits between vertices e and e+1
            let at = extras.iter().position(|v| v.idx > e).unwrap_or(extras.len());
            extras.insert(at, c);
            out.push(self.with_extras(s2, id, lo, hi, extras));
        }
    }

    fn with_extras(&self, mut st: State, id: usize, lo: &SPoint, hi: &SPoint, extras: Vec<SPoint>) -> State {
        let mut chain = Vec::with_capacity(extras.len() + 2);
        chain.push(lo.clone());
        chain.extend(extras.iter().cloned());
        chain.push(hi.clone());
        for p in extras {
            let nd = &mut st.nodes[id];
            nd.angle = self.add_point(nd.angle, &p);
            if !p.vertex {
                nd.interior += 1;
            }
            nd.points.push(p);
        }
        for w in chain.windows(2).rev() {
            st.tasks.push(Task { a: w[0].clone(), b: w[1].clone(), parent: id });
        }
        st
    }

    /// Process the next pending arc of `st`.
    pub fn step(&self, mut st: State, out: &mut Vec<State>) {
        let Task { a, b, parent } = st.tasks.pop().expect("step needs a pending task");
        let ka = a.idx + 1;
        let kb = if b.vertex { b.idx - 1 } else { b.idx };
        let two = Q::from_integer(2);
        if ka > kb {
            // no vertex inside: the arc folds at its midpoint
            let mid = a.pos.add(&b.pos).scale(Q::one() / two);
            let m = SPoint { idx: a.idx, vertex: false, pos: mid };
            let id = st.nodes.len();
            st.nodes.push(self.node_of(vec![m.clone()]));
            st.arcs.push((parent, id));
            st.seams.push([a, m.clone(), m, b]);
            out.push(st);
            return;
        }
        let da = Affine::constant(self.at[ka]).sub(&a.pos);
        let db = b.pos.sub(&Affine::constant(self.at[kb]));
        // keep the task in the state so an equality substitution reaches it
        st.tasks.push(Task { a, b, parent });
        for (ord, mut s) in self.split_sign(st, &da.sub(&db)) {
            let Task { a, b, parent } = s.tasks.pop().expect("task was pushed back");
            match ord {
                Ordering::Less => {
                    let da = Affine::constant(self.at[ka]).sub(&a.pos);
                    let lo = self.vpoint(ka);
                    let hi = SPoint { idx: kb, vertex: false, pos: b.pos.sub(&da) };
                    self.attach(s, parent, a, b, lo, hi, out);
                }
                Ordering::Greater => {
                    let db = b.pos.sub(&Affine::constant(self.at[kb]));
                    let lo = SPoint { idx: ka - 1, vertex: false, pos: a.pos.add(&db) };
                    let hi = self.vpoint(kb);
                    self.attach(s, parent, a, b, lo, hi, out);
                }
                Ordering::Equal if ka == kb => {
                    // both sides reach the same vertex: a vertex leaf
                    let v = self.vpoint(ka);
                    let id = s.nodes.len();
                    s.nodes.push(self.node_of(vec![v.clone()]));
                    s.arcs.push((parent, id));
                    s.seams.push([a, v.clone(), v, b]);
                    out.push(s);
                }
                Ordering::Equal => {
                    self.attach(s, parent, a, b, self.vpoint(ka), self.vpoint(kb), out);
                }
            }
        }
    }

    pub fn is_complete(st: &State) -> bool {
        st.tasks.is_empty()
    }

    /// Turn a finished state into a gluing tree with compacted parameters.
    pub fn finalize(&self, st: &State) -> Option<GluingTree> {
        let mut used = vec![false; st.next_param];
        let mut mark = |e: &Affine| e.support().for_each(|i| used[i] = true);
        for nd in &st.nodes {
            nd.points.iter().for_each(|p| mark(&p.pos));
        }
        for c in &st.region.constraints {
            mark(&c.expr);
        }
        let mut map = vec![None; st.next_param];
        let mut d = 0;
        for (i, u) in used.iter().enumerate() {
            if *u {
                map[i] = Some(d);
                d += 1;
            }
        }
        let conv = |p: &SPoint| -> BoundaryPoint {
            let edge = p.idx % self.n;
            if p.vertex {
                BoundaryPoint::vertex(edge)
            } else {
                let off = p.pos.sub(&Affine::constant(self.at[p.idx])).remap(&map);
                BoundaryPoint { edge, offset: off, kind: PointKind::Interior }
            }
        };
        let nodes: Vec<Vec<BoundaryPoint>> = st.nodes.iter().map(|nd| nd.points.iter().map(conv).collect()).collect();
        let seams = st
            .seams
            .iter()
            .map(|s| Seam { first: [conv(&s[0]), conv(&s[1])], second: [conv(&s[2]), conv(&s[3])] })
            .collect();
        let mut region = st.region.remap(&map, d);
        region.simplify();
        debug_assert!(region.is_feasible(), "finished state with an empty region");
        GluingTree::assemble(self.poly, nodes, st.arcs.clone(), seams, region)
    }

    /// Depth-first exhaustion of `start`, emitting finished trees in order.
    pub fn run(&self, start: State) -> Vec<GluingTree> {
        let mut found = Vec::new();
        let mut stack = vec![start];
        let mut next = Vec::new();
        while let Some(st) = stack.pop() {
            if self.counters.exhausted.load(AtomicOrdering::Relaxed) {
                break;
            }
            let seen = self.counters.states.fetch_add(1, AtomicOrdering::Relaxed) + 1;
            if seen > self.opts.budget {
                self.counters.exhausted.store(true, AtomicOrdering::Relaxed);
                break;
            }
            if Self::is_complete(&st) {
                self.counters.cells.fetch_add(1, AtomicOrdering::Relaxed);
                if let Some(t) = self.finalize(&st) {
                    found.push(t);
                }
                continue;
            }
            debug_assert!(st.region.is_feasible(), "infeasible state survived pruning");
            self.step(st, &mut next);
            // reverse so that the first successor is explored first
            stack.extend(next.drain(..).rev());
        }
        found
    }

    /// Breadth-first expansion until at least `width` states are available,
    /// preserving depth-first order among them.
    pub fn frontier(&self, mut states: Vec<State>, width: usize) -> (Vec<State>, Vec<GluingTree>) {
        let mut done = Vec::new();
        for _ in 0..8 {
            if states.len() >= width || states.iter().all(Self::is_complete) {
                break;
            }
            let mut next = Vec::new();
            for st in states {
                if Self::is_complete(&st) {
                    next.push(st);
                } else {
                    self.counters.states.fetch_add(1, AtomicOrdering::Relaxed);
                    self.step(st, &mut next);
                }
            }
            states = next;
        }
        // finished states keep their place via an empty-task marker
        let mut open = Vec::new();
        for st in states {
            if Self::is_complete(&st) {
                self.counters.cells.fetch_add(1, AtomicOrdering::Relaxed);
                if let Some(t) = self.finalize(&st) {
                    done.push(t);
                }
            } else {
                open.push(st);
            }
        }
        (open, done)
    }
}
