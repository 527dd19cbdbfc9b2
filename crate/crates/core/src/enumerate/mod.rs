//! Exhaustive enumeration of gluing trees, plus explicit constructions of
//! particular gluing families.

mod edge_to_edge;
mod families;
mod search;

use std::collections::HashSet;
use std::sync::atomic::Ordering as AtomicOrdering;

pub use edge_to_edge::{count_edge_to_edge, enumerate_edge_to_edge, EdgeMatching};
pub use families::{fold_rectangle_family, perimeter_halving, star_contraction_family, tree_from_concrete_seams};

use crate::gluing::GluingTree;
use crate::polygon::PolygonSpec;
use search::Search;

/// Where the search starts: the node containing a vertex, or a fold leaf at
/// a free point of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Seed {
    Vertex(usize),
    FoldPoint(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when the `parallel` feature is off.
    Parallel,
}

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    /// Explored search states before giving up.
    pub budget: u64,
    /// Live belt parameters allowed in one partial gluing.
    pub max_params: usize,
    pub max_degree: Option<usize>,
    /// Defaults to the node of `v1`, which every gluing contains.
    pub seeds: Option<Vec<Seed>>,
    pub execution: Execution,
    /// Worker cap for parallel runs; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            budget: 10_000_000,
            max_params: 2,
            max_degree: None,
            seeds: None,
            execution: Execution::Parallel,
            threads: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub states: u64,
    pub pruned_region: u64,
    pub pruned_angle: u64,
    /// Finished partial gluings, before deduplication.
    pub cells: u64,
    pub duplicates: u64,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    /// Distinct gluings, sorted by canonical key.
    pub trees: Vec<GluingTree>,
    /// False when the state budget ran out.
    pub exhaustive: bool,
    pub stats: SearchStats,
}

impl Enumeration {
    pub fn count(&self) -> usize {
        self.trees.len()
    }
}

const FRONTIER_WIDTH: usize = 256;

/// Enumerate all gluing trees of `p` up to the option limits.
pub fn enumerate_gluings(p: &PolygonSpec, opts: &EnumerateOptions) -> Enumeration {
    let seeds = opts.seeds.clone().unwrap_or_else(|| vec![Seed::Vertex(0)]);
    let search = Search::new(p, opts);
    let mut found = Vec::new();
    for seed in seeds {
        let roots = search.roots(seed);
        let (open, done) = search.frontier(roots, FRONTIER_WIDTH);
        found.extend(done);
        found.extend(run_all(&search, open, opts));
    }
    let c = &search.counters;
    let mut stats = SearchStats {
        states: c.states.load(AtomicOrdering::Relaxed),
        pruned_region: c.pruned_region.load(AtomicOrdering::Relaxed),
        pruned_angle: c.pruned_angle.load(AtomicOrdering::Relaxed),
        cells: c.cells.load(AtomicOrdering::Relaxed),
        duplicates: 0,
    };
    let mut seen = HashSet::new();
    let mut trees = Vec::new();
    for t in found {
        if seen.insert(t.canonical_key()) {
            trees.push(t);
        } else {
            stats.duplicates += 1;
        }
    }
    trees.sort_by_cached_key(|t| t.canonical_key());
    Enumeration { trees, exhaustive: !c.exhausted.load(AtomicOrdering::Relaxed), stats }
}

fn run_all(search: &Search<'_>, open: Vec<search::State>, opts: &EnumerateOptions) -> Vec<GluingTree> {
    match opts.execution {
        Execution::Sequential => open.into_iter().flat_map(|st| search.run(st)).collect(),
        Execution::Parallel => run_parallel(search, open, opts.threads),
    }
}

#[cfg(feature = "parallel")]
fn run_parallel(search: &Search<'_>, open: Vec<search::State>, threads: Option<usize>) -> Vec<GluingTree> {
    use rayon::prelude::*;
    let go = || open.into_par_iter().map(|st| search.run(st)).collect::<Vec<_>>().concat();
    match threads.and_then(|k| rayon::ThreadPoolBuilder::new().num_threads(k).build().ok()) {
        Some(pool) => pool.install(go),
        None => go(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_parallel(search: &Search<'_>, open: Vec<search::State>, _threads: Option<usize>) -> Vec<GluingTree> {
    open.into_iter().flat_map(|st| search.run(st)).collect()
}
