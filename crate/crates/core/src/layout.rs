//! Queue-number of abstract graphs: exact branch-and-bound over vertex
//! orderings and a seeded restart heuristic.
//!
//! The exact search builds an ordering left to right. Every vertex placed at
//! the right end only adds edges whose right endpoint is the new position, so
//! the nesting depth of an already placed edge never changes and a new edge
//! `(a, p)` gets depth `1 + max depth of live edges with left > a`. A branch
//! is cut when its lower bound meets the incumbent. The bound is the current
//! maximum depth, raised by every placed vertex that still has an unplaced
//! neighbour: that future edge will enclose all live edges starting to its
//! right.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicBool, AtomicU32, AtomicU64, AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::exec::{map_collect, Execution};
use crate::graph::{LabelledGraph, OrderedGraph};
use crate::rainbow::{greedy_partition, max_rainbow_size, QueueAssignment};
use crate::rng::SplitMix64;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Largest number of non-isolated vertices the exact search accepts.
pub const MAX_EXACT_VERTICES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayoutResult {
    pub queue_number: u32,
    /// `witness_order[i]` is the vertex placed at position `i + 1`.
    pub witness_order: Vec<u32>,
    pub witness_assignment: QueueAssignment,
    /// Set when `queue_number` is proven minimal.
    pub exact: bool,
    /// Partial orderings expanded (0 for the heuristic).
    pub nodes: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub node_budget: u64,
    /// Only explore orderings whose first vertex has a smaller label than the
    /// last one; the reverse of every skipped ordering is explored instead.
    pub reversal_pruning: bool,
    pub execution: Execution,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_budget: DEFAULT_NODE_BUDGET,
            reversal_pruning: true,
            execution: Execution::Sequential,
        }
    }
}

/// Queue count of a fixed ordering, i.e. its largest rainbow.
pub fn ordered_queue_number(g: &OrderedGraph) -> u32 {
    max_rainbow_size(g)
}

pub fn exact_queue_number(g: &LabelledGraph, node_budget: u64) -> Result<LayoutResult> {
    exact_queue_number_with(g, &SearchOptions { node_budget, ..SearchOptions::default() })
}

pub fn exact_queue_number_with(g: &LabelledGraph, opts: &SearchOptions) -> Result<LayoutResult> {
    if !g.is_simple() || g.has_loop() {
        return Err(Error::NotSimple);
    }
    if opts.node_budget == 0 {
        return Err(Error::InvalidArgument("node budget must be positive".into()));
    }
    let problem = Problem::new(g)?;

    // Incumbent from two deterministic orderings.
    let identity: Vec<u32> = (1..=g.n()).collect();
    let bfs = bfs_order(g);
    let mut best_order = identity;
    let mut best = ordered_queue_number(&g.apply_order(&best_order)?);
    let bfs_value = ordered_queue_number(&g.apply_order(&bfs)?);
    if bfs_value < best {
        best = bfs_value;
        best_order = bfs;
    }

    let mut nodes = 0;
    let mut exhausted = true;
    if best > problem.lower_bound {
        let outcome = problem.search(best, opts);
        nodes = outcome.nodes;
        exhausted = outcome.complete;
        if let Some((value, order)) = outcome.improved {
            best_order = problem.full_order(&order);
            debug_assert_eq!(ordered_queue_number(&g.apply_order(&best_order)?), value);
        }
    }

    finish(g, best_order, exhausted, nodes)
}

/// Upper bound from one breadth-first ordering plus `restarts` uniformly
/// random orderings drawn from a [`SplitMix64`] seeded with `seed`.
pub fn heuristic_queue_number(g: &LabelledGraph, restarts: u32, seed: u64) -> Result<LayoutResult> {
    if !g.is_simple() || g.has_loop() {
        return Err(Error::NotSimple);
    }
    let mut best_order = bfs_order(g);
    let mut best = ordered_queue_number(&g.apply_order(&best_order)?);
    let mut rng = SplitMix64::new(seed);
    let mut order: Vec<u32> = (1..=g.n()).collect();
    for _ in 0..restarts {
        if best == 0 {
            break;
        }
        rng.shuffle(&mut order);
        let value = ordered_queue_number(&g.apply_order(&order)?);
        if value < best {
            best = value;
            best_order = order.clone();
        }
    }
    finish(g, best_order, false, 0)
}

fn finish(g: &LabelledGraph, order: Vec<u32>, exact: bool, nodes: u64) -> Result<LayoutResult> {
    let ordered = g.apply_order(&order)?;
    let witness_assignment = greedy_partition(&ordered);
    Ok(LayoutResult {
        queue_number: witness_assignment.k(),
        witness_order: order,
        witness_assignment,
        exact,
        nodes,
    })
}

/// Breadth-first ordering: components in order of their smallest label,
/// neighbours visited in ascending label order.
pub fn bfs_order(g: &LabelledGraph) -> Vec<u32> {
    let n = g.n() as usize;
    let mut adj = g.adjacency();
    for list in &mut adj {
        list.sort_unstable();
    }
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            order.push(v as u32 + 1);
            for &w in &adj[v] {
                let w = (w - 1) as usize;
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// The non-isolated part of a simple graph, relabelled `0..a` in ascending
/// label order.
struct Problem {
    labels: Vec<u32>,
    isolated: Vec<u32>,
    adj: Vec<u64>,
    lower_bound: u32,
}

struct Outcome {
    improved: Option<(u32, Vec<usize>)>,
    complete: bool,
    nodes: u64,
}

impl Problem {
    fn new(g: &LabelledGraph) -> Result<Self> {
        let degrees = g.degrees();
        let mut index = vec![usize::MAX; g.n() as usize];
        let mut labels = Vec::new();
        let mut isolated = Vec::new();
        for (i, &d) in degrees.iter().enumerate() {
            if d > 0 {
                index[i] = labels.len();
                labels.push(i as u32 + 1);
            } else {
                isolated.push(i as u32 + 1);
            }
        }
        if labels.len() > MAX_EXACT_VERTICES {
            return Err(Error::LimitExceeded {
                what: "non-isolated vertices",
                value: labels.len() as u64,
                limit: MAX_EXACT_VERTICES as u64,
            });
        }
        let mut adj = vec![0u64; labels.len()];
        for &(u, v) in g.edges() {
            let (a, b) = (index[(u - 1) as usize], index[(v - 1) as usize]);
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        // A simple queue on a >= 2 vertices has at most 2a - 3 edges.
        let m = g.edge_count() as u32;
        let a = labels.len() as u32;
        let lower_bound = if m == 0 { 0 } else { m.div_ceil((2 * a).saturating_sub(3).max(1)) };
        Ok(Problem { labels, isolated, adj, lower_bound })
    }

    fn full_order(&self, order: &[usize]) -> Vec<u32> {
        order
            .iter()
            .map(|&i| self.labels[i])
            .chain(self.isolated.iter().copied())
            .collect()
    }

    /// Looks for an ordering strictly better than `incumbent`.
    fn search(&self, incumbent: u32, opts: &SearchOptions) -> Outcome {
        let a = self.labels.len();
        let shared = Shared {
            best: AtomicU32::new(incumbent),
            nodes: AtomicU64::new(0),
            budget: opts.node_budget,
            out_of_budget: AtomicBool::new(false),
            first_optimal_root: AtomicUsize::new(usize::MAX),
            lower_bound: self.lower_bound,
        };
        // Depth-1 subtrees: one per first vertex.
        let roots: Vec<usize> = (0..a).collect();
        let results = map_collect(opts.execution, &roots, |&root| {
            let mut dfs = Dfs::new(self, &shared, root, incumbent, opts.reversal_pruning);
            dfs.place(root);
            dfs.run();
            dfs.found.map(|order| (dfs.best, order))
        });
        // Every root reports the first ordering (in traversal order) reaching
        // its own optimum, so the lowest root at the global optimum does not
        // depend on scheduling.
        let improved = results
            .into_iter()
            .flatten()
            .min_by_key(|(value, _)| *value);
        Outcome {
            improved,
            complete: !shared.out_of_budget.load(Ordering::Relaxed),
            nodes: shared.nodes.load(Ordering::Relaxed),
        }
    }
}

struct Shared {
    best: AtomicU32,
    nodes: AtomicU64,
    budget: u64,
    out_of_budget: AtomicBool,
    /// Smallest root whose subtree reached `lower_bound`; later roots stop.
    first_optimal_root: AtomicUsize,
    lower_bound: u32,
}

struct Dfs<'a> {
    problem: &'a Problem,
    shared: &'a Shared,
    root: usize,
    reversal: bool,
    /// Position (1-based) of each vertex, 0 when unplaced.
    pos: Vec<u32>,
    order: Vec<usize>,
    unplaced: u64,
    /// Max depth of live edges by left endpoint position (index 0 unused).
    depth_at_left: Vec<u32>,
    undo: Vec<(u32, u32)>,
    current: u32,
    best: u32,
    found: Option<Vec<usize>>,
}

impl<'a> Dfs<'a> {
    fn new(problem: &'a Problem, shared: &'a Shared, root: usize, incumbent: u32, reversal: bool) -> Self {
        let a = problem.labels.len();
        Dfs {
            problem,
            shared,
            root,
            reversal,
            pos: vec![0; a],
            order: Vec::with_capacity(a),
            unplaced: if a == 64 { u64::MAX } else { (1u64 << a) - 1 },
            depth_at_left: vec![0; a + 2],
            undo: Vec::new(),
            current: 0,
            best: incumbent,
            found: None,
        }
    }

    /// Places `v` at the next position; returns the undo-stack mark and the
    /// previous maximum depth.
    fn place(&mut self, v: usize) -> (usize, u32) {
        let mark = self.undo.len();
        let prev = self.current;
        let p = self.order.len() as u32 + 1;
        let mut placed_nbrs = self.problem.adj[v] & !self.unplaced;
        // New edges share the right endpoint p, so none nests another; compute
        // all depths before touching the table.
        let mut new_edges: Vec<(u32, u32)> = Vec::new();
        while placed_nbrs != 0 {
            let u = placed_nbrs.trailing_zeros() as usize;
            placed_nbrs &= placed_nbrs - 1;
            let left = self.pos[u];
            let inner = self.depth_at_left[(left + 1) as usize..p as usize].iter().copied().max().unwrap_or(0);
            new_edges.push((left, inner + 1));
        }
        for (left, d) in new_edges {
            let slot = &mut self.depth_at_left[left as usize];
            if d > *slot {
                self.undo.push((left, *slot));
                *slot = d;
            }
            self.current = self.current.max(d);
        }
        self.pos[v] = p;
        self.order.push(v);
        self.unplaced &= !(1u64 << v);
        (mark, prev)
    }

    fn unplace(&mut self, v: usize, (mark, prev): (usize, u32)) {
        while self.undo.len() > mark {
            let (left, old) = self.undo.pop().unwrap();
            self.depth_at_left[left as usize] = old;
        }
        self.current = prev;
        self.pos[v] = 0;
        self.order.pop();
        self.unplaced |= 1u64 << v;
    }

    fn lower_bound(&self) -> u32 {
        let p = self.order.len();
        let mut bound = self.current;
        // suffix[x] = max depth over live edges with left >= x
        let mut suffix = vec![0u32; p + 2];
        for x in (1..=p).rev() {
            suffix[x] = suffix[x + 1].max(self.depth_at_left[x]);
        }
        for &u in &self.order {
            if self.problem.adj[u] & self.unplaced != 0 {
                bound = bound.max(1 + suffix[self.pos[u] as usize + 1]);
            }
        }
        bound
    }

    fn should_stop(&self) -> bool {
        self.shared.out_of_budget.load(Ordering::Relaxed)
            || self.shared.first_optimal_root.load(Ordering::Relaxed) < self.root
            || self.best <= self.shared.lower_bound
    }

    fn run(&mut self) {
        if self.should_stop() {
            return;
        }
        let expanded = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if expanded > self.shared.budget {
            self.shared.out_of_budget.store(true, Ordering::Relaxed);
            return;
        }
        if self.unplaced == 0 {
            if self.current < self.best {
                self.best = self.current;
                self.found = Some(self.order.clone());
                self.shared.best.fetch_min(self.current, Ordering::Relaxed);
                if self.best <= self.shared.lower_bound {
                    self.shared.first_optimal_root.fetch_min(self.root, Ordering::Relaxed);
                }
            }
            return;
        }
        let bound = self.lower_bound();
        if bound >= self.best || bound > self.shared.best.load(Ordering::Relaxed) {
            return;
        }
        if self.reversal && (self.unplaced >> (self.root + 1)) == 0 {
            // The last vertex must carry a larger label than the first.
            return;
        }
        let mut candidates = self.unplaced;
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            let saved = self.place(v);
            self.run();
            self.unplace(v, saved);
            if self.should_stop() {
                return;
            }
        }
    }
}
