//! The doubling operation, its inverse quotient, and the edge-count maximum
//! of queues.

use num_bigint::BigUint;
use num_traits::Pow;

use super::{BitIter, Candidates, Census};
use crate::error::{Error, Result};
use crate::graph::{are_nested, normalize_edge, OrderedEdge, OrderedGraph};

/// A nonempty nesting-free edge set between two doubled vertex pairs.
///
/// Stored on the template vertices: `{1, 2}` and `{3, 4}` for an edge of the
/// quotient, `{1, 2}` alone for a loop.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DoublingPattern {
    pub is_loop: bool,
    pub edges: Vec<OrderedEdge>,
}

impl DoublingPattern {
    /// Instantiates the pattern for quotient edge `(v, w)`: template vertex
    /// `x` in `{1, 2}` becomes `2v - 2 + x`, and `x` in `{3, 4}` becomes
    /// `2w - 4 + x`.
    pub fn apply(&self, quotient_edge: OrderedEdge) -> Vec<OrderedEdge> {
        let (v, w) = (quotient_edge.left, quotient_edge.right);
        let map = |x: u32| if x <= 2 { 2 * v - 2 + x } else { 2 * w - 4 + x };
        let mut out: Vec<OrderedEdge> =
            self.edges.iter().map(|e| normalize_edge(map(e.left), map(e.right))).collect();
        out.sort_unstable();
        out
    }
}

/// All nonempty nesting-free edge sets between `{2v-1, 2v}` and
/// `{2w-1, 2w}` (11 of them), or inside `{2v-1, 2v}` for a loop (7), found by
/// brute force over the candidate subsets.
pub fn doubling_patterns(is_loop: bool) -> Vec<DoublingPattern> {
    let candidates: Vec<OrderedEdge> = if is_loop {
        vec![normalize_edge(1, 1), normalize_edge(1, 2), normalize_edge(2, 2)]
    } else {
        vec![normalize_edge(1, 3), normalize_edge(1, 4), normalize_edge(2, 3), normalize_edge(2, 4)]
    };
    (1u32..1 << candidates.len())
        .map(|mask| {
            BitIter(mask as u64).map(|i| candidates[i]).collect::<Vec<_>>()
        })
        .filter(|set| {
            set.iter().enumerate().all(|(i, &a)| set[i + 1..].iter().all(|&b| !are_nested(a, b)))
        })
        .map(|edges| DoublingPattern { is_loop, edges })
        .collect()
}

/// Merges vertices `2v-1` and `2v` into `v`. Intra-pair edges become loops
/// and parallel images collapse.
pub fn quotient(g: &OrderedGraph) -> Result<OrderedGraph> {
    if !g.n().is_multiple_of(2) {
        return Err(Error::OddVertexCount(g.n()));
    }
    let half = |x: u32| x.div_ceil(2);
    OrderedGraph::new(g.n() / 2, dedup(g.edges().iter().map(|e| normalize_edge(half(e.left), half(e.right)))))
}

fn dedup(edges: impl Iterator<Item = OrderedEdge>) -> Vec<OrderedEdge> {
    let mut v: Vec<_> = edges.collect();
    v.sort_unstable();
    v.dedup();
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublingReport {
    pub n: u32,
    pub g_n: BigUint,
    pub g_2n: BigUint,
    /// `11^(2n-1) * g(n)`
    pub bound: BigUint,
    pub recurrence_holds: bool,
    /// Queues on `2n` vertices examined.
    pub checked: u64,
    /// Queues whose quotient has a nested pair.
    pub nested_quotients: u64,
    /// Queues not rebuilt by re-doubling their quotient with one pattern per
    /// quotient edge.
    pub coverage_failures: u64,
    pub max_quotient_edges: u32,
    /// Some queue on `2n` vertices that failed a check, if any.
    pub counterexample: Option<OrderedGraph>,
}

impl DoublingReport {
    pub fn holds(&self) -> bool {
        self.recurrence_holds
            && self.nested_quotients == 0
            && self.coverage_failures == 0
            && self.max_quotient_edges < 2 * self.n
    }
}

#[derive(Clone, Debug, Default)]
struct Tally {
    checked: u64,
    nested: u64,
    uncovered: u64,
    max_edges: u32,
    counterexample: Option<u64>,
}

fn merge(a: Tally, b: Tally) -> Tally {
    Tally {
        checked: a.checked + b.checked,
        nested: a.nested + b.nested,
        uncovered: a.uncovered + b.uncovered,
        max_edges: a.max_edges.max(b.max_edges),
        counterexample: a.counterexample.or(b.counterexample),
    }
}

/// Checks, on every queue with `2n` vertices: that its quotient is a queue
/// with at most `2n - 1` edges, and that re-doubling the quotient with the
/// matching pattern per edge rebuilds it. Also compares `g(2n)` against
/// `11^(2n-1) g(n)` exactly.
pub fn verify_doubling(census: &Census, n: u32) -> Result<DoublingReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let g_n = census.enumerate_queues(n)?;
    let cands = Candidates::new(2 * n);
    let edge_patterns = doubling_patterns(false);
    let loop_patterns = doubling_patterns(true);

    let tally = census.fold_queues(
        2 * n,
        Tally::default(),
        |t, mask| {
            let g2 = cands.graph(mask);
            let q = quotient(&g2).expect("even vertex count");
            let mut bad = false;
            if !q.is_queue() {
                t.nested += 1;
                bad = true;
            }
            t.max_edges = t.max_edges.max(q.edge_count() as u32);
            if !redoubles(&g2, &q, &edge_patterns, &loop_patterns) {
                t.uncovered += 1;
                bad = true;
            }
            if bad && t.counterexample.is_none() {
                t.counterexample = Some(mask);
            }
            t.checked += 1;
        },
        merge,
    )?;

    let g_2n = BigUint::from(tally.checked);
    let bound = BigUint::from(11u32).pow(2 * n - 1) * &g_n;
    Ok(DoublingReport {
        n,
        recurrence_holds: g_2n <= bound,
        g_n,
        g_2n,
        bound,
        checked: tally.checked,
        nested_quotients: tally.nested,
        coverage_failures: tally.uncovered,
        max_quotient_edges: tally.max_edges,
        counterexample: tally.counterexample.map(|m| cands.graph(m)),
    })
}

/// Rebuilds `g2` from its quotient `q` by choosing, for every quotient edge,
/// the pattern whose image equals that edge's preimage in `g2`.
fn redoubles(
    g2: &OrderedGraph,
    q: &OrderedGraph,
    edge_patterns: &[DoublingPattern],
    loop_patterns: &[DoublingPattern],
) -> bool {
    let half = |x: u32| x.div_ceil(2);
    let mut rebuilt: Vec<OrderedEdge> = Vec::with_capacity(g2.edge_count());
    for &qe in q.edges() {
        let preimage: Vec<OrderedEdge> = g2
            .edges()
            .iter()
            .copied()
            .filter(|e| normalize_edge(half(e.left), half(e.right)) == qe)
            .collect();
        let patterns = if qe.is_loop() { loop_patterns } else { edge_patterns };
        match patterns.iter().map(|p| p.apply(qe)).find(|image| *image == preimage) {
            Some(image) => rebuilt.extend(image),
            None => return false,
        }
    }
    rebuilt.sort_unstable();
    rebuilt == g2.edges()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxEdgesReport {
    pub n: u32,
    pub max_edges: u32,
    pub witness: OrderedGraph,
    /// All `left + right` sums in the witness are distinct and in `2..=2n`.
    pub sums_distinct: bool,
}

impl MaxEdgesReport {
    pub fn holds(&self) -> bool {
        self.sums_distinct && self.max_edges < 2 * self.n
    }
}

/// Largest queue on `n` vertices, by exhaustive branch and bound.
///
/// Candidates are tried shortest first (loops, then consecutive pairs, ...),
/// including before excluding, so the first maximum found, and the witness
/// returned, is the loops-plus-path queue.
pub fn max_queue_edges(census: &Census, n: u32) -> Result<MaxEdgesReport> {
    super::check_limit("n", n, census.limit)?;
    let base = Candidates::new(n);
    let mut order: Vec<usize> = (0..base.len()).collect();
    order.sort_by_key(|&i| {
        let e = base.edges[i];
        (e.right - e.left, e.left)
    });

    struct Search<'a> {
        cands: &'a Candidates,
        order: &'a [usize],
        best: u32,
        best_mask: u64,
    }
    impl Search<'_> {
        fn run(&mut self, depth: usize, mask: u64, banned: u64, size: u32) {
            if size > self.best {
                self.best = size;
                self.best_mask = mask;
            }
            if depth == self.order.len() || size + (self.order.len() - depth) as u32 <= self.best {
                return;
            }
            let i = self.order[depth];
            if banned >> i & 1 == 0 {
                self.run(depth + 1, mask | 1 << i, banned | self.cands.conflicts[i], size + 1);
            }
            self.run(depth + 1, mask, banned, size);
        }
    }
    let mut search = Search { cands: &base, order: &order, best: 0, best_mask: 0 };
    search.run(0, 0, 0, 0);

    let witness = base.graph(search.best_mask);
    let mut sums: Vec<u32> = witness.edges().iter().map(|e| e.endpoint_sum()).collect();
    sums.sort_unstable();
    let in_range = sums.iter().all(|&s| (2..=2 * n).contains(&s));
    sums.dedup();
    Ok(MaxEdgesReport {
        n,
        max_edges: search.best,
        sums_distinct: in_range && sums.len() == witness.edge_count(),
        witness,
    })
}
