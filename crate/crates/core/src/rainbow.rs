//! Rainbows, nesting depth and the greedy queue partition.
//!
//! A rainbow is a set of pairwise nested edges. An ordered graph splits into
//! `k` queues exactly when it has no rainbow of `k + 1` edges, and assigning
//! every edge to the queue given by its nesting depth achieves this bound.

use crate::graph::{is_nested, OrderedEdge, OrderedGraph};

/// A rainbow listed from the outermost edge inwards: every edge is nested
/// inside all edges before it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RainbowCertificate {
    pub edges: Vec<OrderedEdge>,
}

impl RainbowCertificate {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks the chain invariant. Nesting is transitive, so consecutive
    /// pairs suffice.
    pub fn is_valid(&self) -> bool {
        self.edges.windows(2).all(|w| is_nested(w[0], w[1]))
    }
}

/// Nesting depth of every edge of `g`, aligned with `g.edges()`.
///
/// `depth(e)` is one more than the size of the largest rainbow strictly inside
/// `e`. Computed in `O(m log m)` as a longest strictly increasing subsequence
/// of right endpoints over the edges taken in reverse canonical order (left
/// descending, right descending), so that each chain ends at its outermost
/// edge. Equal-left edges appear with decreasing right endpoints and so can
/// never extend one another.
pub fn nesting_depth(g: &OrderedGraph) -> Vec<u32> {
    depths_of(g.edges())
}

pub(crate) fn depths_of(edges: &[OrderedEdge]) -> Vec<u32> {
    let mut depth = vec![0u32; edges.len()];
    // tails[i]: smallest right endpoint closing a chain of i + 1 edges
    let mut tails: Vec<u32> = Vec::new();
    for (i, e) in edges.iter().enumerate().rev() {
        let pos = tails.partition_point(|&t| t < e.right);
        if pos == tails.len() {
            tails.push(e.right);
        } else {
            tails[pos] = e.right;
        }
        depth[i] = pos as u32 + 1;
    }
    depth
}

/// Size of the largest rainbow only, without building a certificate.
pub fn max_rainbow_size(g: &OrderedGraph) -> u32 {
    rainbow_size_of(g.edges())
}

/// Largest rainbow of canonically sorted `edges`.
pub(crate) fn rainbow_size_of(edges: &[OrderedEdge]) -> u32 {
    // Longest strictly decreasing subsequence of right endpoints in canonical
    // order; tails hold negated values so the search is an ascending one.
    let mut tails: Vec<i64> = Vec::new();
    for e in edges {
        let key = -(e.right as i64);
        let pos = tails.partition_point(|&t| t < key);
        if pos == tails.len() {
            tails.push(key);
        } else {
            tails[pos] = key;
        }
    }
    tails.len() as u32
}

/// The largest rainbow of `g` with a certificate.
///
/// Among all rainbows of maximum size the certificate is the
/// lexicographically smallest edge sequence in canonical edge order.
pub fn max_rainbow(g: &OrderedGraph) -> (u32, RainbowCertificate) {
    let depth = nesting_depth(g);
    let size = depth.iter().copied().max().unwrap_or(0);
    let mut chain: Vec<OrderedEdge> = Vec::with_capacity(size as usize);
    let mut need = size;
    // Edges nested inside the current tail have strictly larger left
    // endpoints, hence come later in canonical order; one scan picks the
    // smallest feasible edge at every step.
    for (&e, &d) in g.edges().iter().zip(&depth) {
        if need == 0 {
            break;
        }
        if d == need && chain.last().is_none_or(|&outer| is_nested(outer, e)) {
            chain.push(e);
            need -= 1;
        }
    }
    debug_assert_eq!(chain.len(), size as usize);
    (size, RainbowCertificate { edges: chain })
}

/// A partition of an ordered graph's edges into numbered queues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueueAssignment {
    graph: OrderedGraph,
    /// Queue index in `1..=k` for each edge, aligned with `graph.edges()`.
    queue_of: Vec<u32>,
    k: u32,
}

impl QueueAssignment {
    /// Returns `None` unless every edge gets an index in `1..=k`.
    pub fn new(graph: OrderedGraph, queue_of: Vec<u32>, k: u32) -> Option<Self> {
        if queue_of.len() != graph.edge_count() || queue_of.iter().any(|&q| q == 0 || q > k) {
            return None;
        }
        Some(QueueAssignment { graph, queue_of, k })
    }

    /// Builds an assignment from explicit `(edge, queue)` pairs; the edge set
    /// defines the graph. `k` is the largest queue index used.
    pub fn from_pairs(n: u32, pairs: &[(OrderedEdge, u32)]) -> Option<Self> {
        let graph = OrderedGraph::new(n, pairs.iter().map(|p| p.0)).ok()?;
        let mut queue_of = vec![0; graph.edge_count()];
        for &(e, q) in pairs {
            let i = graph.edges().binary_search(&e).ok()?;
            queue_of[i] = q;
        }
        let k = queue_of.iter().copied().max().unwrap_or(0);
        Self::new(graph, queue_of, k)
    }

    pub fn graph(&self) -> &OrderedGraph {
        &self.graph
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn queue_of(&self) -> &[u32] {
        &self.queue_of
    }

    pub fn queue_of_edge(&self, e: OrderedEdge) -> Option<u32> {
        let i = self.graph.edges().binary_search(&e).ok()?;
        Some(self.queue_of[i])
    }

    /// Edges of queue `q` (1-based), in canonical order.
    pub fn queue(&self, q: u32) -> Vec<OrderedEdge> {
        self.graph
            .edges()
            .iter()
            .zip(&self.queue_of)
            .filter(|&(_, &x)| x == q)
            .map(|(&e, _)| e)
            .collect()
    }
}

/// Assigns every edge to the queue numbered by its nesting depth.
pub fn greedy_partition(g: &OrderedGraph) -> QueueAssignment {
    let depth = nesting_depth(g);
    let k = depth.iter().copied().max().unwrap_or(0);
    QueueAssignment { graph: g.clone(), queue_of: depth, k }
}

/// True iff no queue contains a nested pair. All pairs are checked.
pub fn validate_assignment(a: &QueueAssignment) -> bool {
    let edges = a.graph.edges();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if a.queue_of[i] == a.queue_of[j] && crate::graph::are_nested(edges[i], edges[j]) {
                return false;
            }
        }
    }
    true
}
