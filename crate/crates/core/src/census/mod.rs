//! Exhaustive censuses of ordered and labelled graphs.
//!
//! Ordered graphs on `n` vertices are subsets of the `n(n+1)/2` candidate
//! edges `(u, v)`, `u <= v`, indexed in canonical order so that a `u64` mask
//! is a graph and iterating its set bits yields the edges already sorted.
//! Queues are the independent sets of the nesting-conflict graph on the
//! candidates; they are enumerated by backtracking with conflict masks, with
//! the decisions on a fixed edge prefix split into independent tasks.

mod cache;
mod doubling;
mod labelled;

pub use cache::{CensusCache, CensusKind, CensusTable};
pub use doubling::{
    doubling_patterns, max_queue_edges, quotient, verify_doubling, DoublingPattern, DoublingReport, MaxEdgesReport,
};
pub use labelled::{
    count_labelled_qn_le, count_labelled_regular, labelled_qn_table, LabelledQnReport, RegularCensus,
};
pub(crate) use labelled::qn_report;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::exec::{add_counts, map_reduce, Execution};
use crate::graph::{are_nested, OrderedEdge, OrderedGraph};

/// Default vertex limit for ordered enumerations (21 candidate edges).
pub const DEFAULT_LIMIT: u32 = 6;
/// Vertex limit for the exact class-size partition search.
pub const SIZES_LIMIT: u32 = 4;
/// Vertex limit for censuses that run an exact queue-number search per graph.
pub const LABELLED_LIMIT: u32 = 6;
/// Vertex limit for the labelled regular-graph backtracking.
pub const REGULAR_LIMIT: u32 = 12;

/// Hard ceiling: candidate masks are `u64`.
const MASK_LIMIT: u32 = 10;

/// Enumeration settings shared by the census operations.
#[derive(Clone, Copy, Debug)]
pub struct Census {
    /// Largest `n` accepted by the ordered enumerations.
    pub limit: u32,
    pub execution: Execution,
}

impl Default for Census {
    fn default() -> Self {
        Census { limit: DEFAULT_LIMIT, execution: Execution::default() }
    }
}

/// The candidate edges on `n` vertices with their nesting conflicts.
#[derive(Clone, Debug)]
pub struct Candidates {
    pub n: u32,
    pub edges: Vec<OrderedEdge>,
    /// `conflicts[i]`: mask of candidates nested with candidate `i`.
    pub conflicts: Vec<u64>,
}

impl Candidates {
    pub fn new(n: u32) -> Self {
        let edges: Vec<OrderedEdge> =
            (1..=n).flat_map(|u| (u..=n).map(move |v| OrderedEdge { left: u, right: v })).collect();
        let conflicts = edges
            .iter()
            .map(|&e| {
                edges
                    .iter()
                    .enumerate()
                    .filter(|&(_, &f)| are_nested(e, f))
                    .fold(0u64, |m, (j, _)| m | 1 << j)
            })
            .collect();
        Candidates { n, edges, conflicts }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn index_of(&self, e: OrderedEdge) -> usize {
        // rows u = 1..left-1 hold n - u + 1 candidates each
        let (l, r, n) = (e.left as usize, e.right as usize, self.n as usize);
        (l - 1) * (n + 1) - (l - 1) * l / 2 + (r - l)
    }

    pub fn graph(&self, mask: u64) -> OrderedGraph {
        let edges = BitIter(mask).map(|i| self.edges[i]).collect();
        OrderedGraph::from_sorted_unchecked(self.n, edges)
    }

    pub fn mask_of(&self, g: &OrderedGraph) -> u64 {
        g.edges().iter().fold(0, |m, &e| m | 1 << self.index_of(e))
    }

    pub fn is_queue(&self, mask: u64) -> bool {
        BitIter(mask).all(|i| self.conflicts[i] & mask == 0)
    }

    /// Largest rainbow of the graph `mask`: longest strictly decreasing run of
    /// right endpoints over the edges in canonical order.
    pub fn rainbow(&self, mask: u64) -> u32 {
        let mut tails = [0u32; 64];
        let mut len = 0usize;
        for i in BitIter(mask) {
            // tails[..len] is strictly decreasing; find the first tail <= right
            let r = self.edges[i].right;
            let pos = tails[..len].partition_point(|&t| t > r);
            tails[pos] = r;
            if pos == len {
                len += 1;
            }
        }
        len as u32
    }
}

/// Iterator over set bit positions, ascending.
#[derive(Clone, Copy)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

fn check_limit(what: &'static str, n: u32, limit: u32) -> Result<()> {
    if n > limit.min(MASK_LIMIT) {
        return Err(Error::LimitExceeded { what, value: n as u64, limit: limit.min(MASK_LIMIT) as u64 });
    }
    Ok(())
}

/// Number of candidate edges fixed per parallel task.
fn prefix_len(total: usize) -> usize {
    total.min(10)
}

impl Census {
    pub fn sequential() -> Self {
        Census { execution: Execution::Sequential, ..Census::default() }
    }

    /// Folds `visit` over every queue on `n` vertices (as a candidate mask).
    /// Each task starts from `identity` and results combine with `reduce`.
    pub fn fold_queues<R, V, F>(&self, n: u32, identity: R, visit: V, reduce: F) -> Result<R>
    where
        R: Send + Sync + Clone,
        V: Fn(&mut R, u64) + Send + Sync,
        F: Fn(R, R) -> R + Send + Sync,
    {
        check_limit("n", n, self.limit)?;
        let cands = Candidates::new(n);
        let total = cands.len();
        let p = prefix_len(total);
        Ok(map_reduce(
            self.execution,
            1u64 << p,
            identity.clone(),
            |prefix| {
                let mut acc = identity.clone();
                if !cands.is_queue(prefix) {
                    return acc;
                }
                let banned = BitIter(prefix).fold(0u64, |b, i| b | cands.conflicts[i]);
                dfs_queues(&cands, p, prefix, banned, &mut |mask| visit(&mut acc, mask));
                acc
            },
            reduce,
        ))
    }

    /// `g(n, m)` for every `m`: index `m` holds the number of queues with `m`
    /// edges.
    pub fn queues_by_edges(&self, n: u32) -> Result<Vec<u64>> {
        let mut counts = self.fold_queues(
            n,
            Vec::new(),
            |acc: &mut Vec<u64>, mask| {
                let m = mask.count_ones() as usize;
                if acc.len() <= m {
                    acc.resize(m + 1, 0);
                }
                acc[m] += 1;
            },
            add_counts,
        )?;
        counts.resize(Candidates::new(n).len() + 1, 0);
        Ok(counts)
    }

    pub fn enumerate_queues(&self, n: u32) -> Result<BigUint> {
        Ok(BigUint::from(self.queues_by_edges(n)?.iter().sum::<u64>()))
    }

    pub fn count_queues_by_edges(&self, n: u32, m: u32) -> Result<BigUint> {
        let table = self.queues_by_edges(n)?;
        Ok(BigUint::from(table.get(m as usize).copied().unwrap_or(0)))
    }

    /// `table[m][r]`: ordered graphs on `n` vertices with `m` edges whose
    /// largest rainbow has exactly `r` edges. Walks all `2^(n(n+1)/2)` subsets.
    pub fn rainbow_table(&self, n: u32) -> Result<Vec<Vec<u64>>> {
        check_limit("n", n, self.limit)?;
        let cands = Candidates::new(n);
        let total = cands.len();
        let width = total + 1;
        let low = total.saturating_sub(prefix_len(total));
        let flat = map_reduce(
            self.execution,
            1u64 << (total - low),
            vec![0u64; width * width],
            |high| {
                let mut acc = vec![0u64; width * width];
                for lowbits in 0..(1u64 << low) {
                    let mask = high << low | lowbits;
                    let m = mask.count_ones() as usize;
                    acc[m * width + cands.rainbow(mask) as usize] += 1;
                }
                acc
            },
            add_counts,
        );
        Ok(flat.chunks(width).map(|row| row.to_vec()).collect())
    }

    /// `g(n, m, k)`: ordered graphs with `m` edges and no `(k+1)`-edge
    /// rainbow.
    pub fn count_kqueues(&self, n: u32, m: u32, k: u32) -> Result<BigUint> {
        let table = self.rainbow_table(n)?;
        Ok(BigUint::from(kqueues_from_table(&table, m, k)))
    }

    /// `g(n; m_1, ..., m_k)`: ordered graphs whose edges split into
    /// nesting-free classes of exactly the given sizes.
    pub fn count_kqueues_with_sizes(&self, n: u32, sizes: &[u32]) -> Result<BigUint> {
        check_limit("n", n, self.limit.min(SIZES_LIMIT))?;
        let cands = Candidates::new(n);
        let mut sizes = sizes.to_vec();
        sizes.sort_unstable();
        let m: u32 = sizes.iter().sum();
        let total = cands.len();
        if m as usize > total {
            return Ok(BigUint::from(0u32));
        }
        let count = map_reduce(
            self.execution,
            1u64 << total,
            0u64,
            |mask| {
                let fits = mask.count_ones() == m && splits_into(&cands, mask, &sizes);
                fits as u64
            },
            |a, b| a + b,
        );
        Ok(BigUint::from(count))
    }
}

pub(crate) fn kqueues_from_table(table: &[Vec<u64>], m: u32, k: u32) -> u64 {
    table
        .get(m as usize)
        .map(|row| row.iter().take(k as usize + 1).sum())
        .unwrap_or(0)
}

/// Include-or-exclude backtracking over candidates `from..`.
fn dfs_queues(cands: &Candidates, from: usize, mask: u64, banned: u64, visit: &mut dyn FnMut(u64)) {
    if from == cands.len() {
        visit(mask);
        return;
    }
    dfs_queues(cands, from + 1, mask, banned, visit);
    if banned >> from & 1 == 0 {
        dfs_queues(cands, from + 1, mask | 1 << from, banned | cands.conflicts[from], visit);
    }
}

/// Can the edges of `mask` be split into nesting-free classes with exactly
/// the given sizes (ascending)?
fn splits_into(cands: &Candidates, mask: u64, sizes: &[u32]) -> bool {
    let edges: Vec<usize> = BitIter(mask).collect();
    let mut remaining = sizes.to_vec();
    let mut classes = vec![0u64; sizes.len()];
    fn rec(cands: &Candidates, edges: &[usize], remaining: &mut [u32], classes: &mut [u64]) -> bool {
        let Some((&e, rest)) = edges.split_first() else {
            return remaining.iter().all(|&r| r == 0);
        };
        for c in 0..classes.len() {
            if remaining[c] == 0 || classes[c] & cands.conflicts[e] != 0 {
                continue;
            }
            // Empty classes of equal remaining capacity are interchangeable.
            if classes[c] == 0 && (0..c).any(|d| classes[d] == 0 && remaining[d] == remaining[c]) {
                continue;
            }
            remaining[c] -= 1;
            classes[c] |= 1 << e;
            let ok = rec(cands, rest, remaining, classes);
            remaining[c] += 1;
            classes[c] &= !(1 << e);
            if ok {
                return true;
            }
        }
        false
    }
    rec(cands, &edges, &mut remaining, &mut classes)
}

pub fn enumerate_queues(n: u32) -> Result<BigUint> {
    Census::default().enumerate_queues(n)
}

pub fn count_queues_by_edges(n: u32, m: u32) -> Result<BigUint> {
    Census::default().count_queues_by_edges(n, m)
}

pub fn count_kqueues(n: u32, m: u32, k: u32) -> Result<BigUint> {
    Census::default().count_kqueues(n, m, k)
}

pub fn count_kqueues_with_sizes(n: u32, sizes: &[u32]) -> Result<BigUint> {
    Census::default().count_kqueues_with_sizes(n, sizes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rainbow::max_rainbow_size;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn candidate_indexing() {
        for n in 1..=8 {
            let c = Candidates::new(n);
            assert_eq!(c.len() as u32, n * (n + 1) / 2);
            for (i, &e) in c.edges.iter().enumerate() {
                assert_eq!(c.index_of(e), i);
            }
        }
    }

    #[test]
    fn mask_rainbow_matches_graph_rainbow() {
        let c = Candidates::new(5);
        for mask in (0..1u64 << c.len()).step_by(7) {
            assert_eq!(c.rainbow(mask), max_rainbow_size(&c.graph(mask)));
            assert_eq!(c.is_queue(mask), c.graph(mask).is_queue());
        }
    }

    #[test]
    fn queue_counts() {
        assert_eq!(enumerate_queues(1).unwrap(), big(2));
        assert_eq!(enumerate_queues(2).unwrap(), big(8));
        assert_eq!(enumerate_queues(3).unwrap(), big(48));
        assert_eq!(enumerate_queues(4).unwrap(), big(352));
        assert_eq!(enumerate_queues(5).unwrap(), big(2880));
        assert!(matches!(enumerate_queues(7), Err(Error::LimitExceeded { .. })));
        let wide = Census { limit: 7, ..Census::default() };
        assert!(wide.enumerate_queues(7).is_ok());
    }

    #[test]
    fn queue_counts_by_edges() {
        assert_eq!(count_queues_by_edges(2, 0).unwrap(), big(1));
        assert_eq!(count_queues_by_edges(2, 3).unwrap(), big(1));
        let table = Census::default().queues_by_edges(3).unwrap();
        assert_eq!(table, vec![1, 6, 14, 16, 9, 2, 0]);
        assert_eq!(table.iter().sum::<u64>(), 48);
        assert_eq!(
            Census::default().queues_by_edges(5).unwrap()[..10],
            [1, 15, 90, 295, 594, 771, 650, 345, 105, 14]
        );
    }

    #[test]
    fn sequential_and_parallel_agree() {
        for n in 1..=5 {
            assert_eq!(
                Census::sequential().queues_by_edges(n).unwrap(),
                Census::default().queues_by_edges(n).unwrap()
            );
            assert_eq!(
                Census::sequential().rainbow_table(n).unwrap(),
                Census::default().rainbow_table(n).unwrap()
            );
        }
    }

    #[test]
    fn kqueue_counts() {
        assert_eq!(count_kqueues(3, 6, 2).unwrap(), big(1));
        assert_eq!(count_kqueues(3, 6, 1).unwrap(), big(0));
        assert_eq!(count_kqueues(2, 2, 2).unwrap(), big(3));
        assert_eq!(count_kqueues(2, 2, 1).unwrap(), big(3));
        // rainbow-exactly-r rows at n = 4 from an independent brute force
        let t = Census::default().rainbow_table(4).unwrap();
        assert_eq!(t[5][..3], [0, 76, 176]);
        assert_eq!(t[10][..3], [0, 0, 1]);
    }

    #[test]
    fn kqueue_invariants() {
        let census = Census::default();
        for n in 1..=5 {
            let table = census.rainbow_table(n).unwrap();
            let by_edges = census.queues_by_edges(n).unwrap();
            let total = Candidates::new(n).len() as u32;
            for m in 0..=total {
                let all = binomial(total as u64, m as u64);
                let mut prev = 0;
                for k in 0..=total {
                    let c = kqueues_from_table(&table, m, k);
                    assert!(c >= prev);
                    prev = c;
                    if k >= m {
                        assert_eq!(c, all);
                    }
                }
                assert_eq!(kqueues_from_table(&table, m, 1), by_edges[m as usize]);
            }
        }
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn sized_partitions() {
        assert_eq!(count_kqueues_with_sizes(2, &[1, 1]).unwrap(), big(3));
        assert_eq!(count_kqueues_with_sizes(3, &[0, 0, 0]).unwrap(), big(1));
        // unsorted input is accepted
        assert_eq!(count_kqueues_with_sizes(3, &[2, 0]).unwrap(), count_kqueues_with_sizes(3, &[0, 2]).unwrap());
        assert!(count_kqueues_with_sizes(5, &[1]).is_err());
    }

    #[test]
    fn sized_partitions_obey_product_bound() {
        let census = Census::default();
        for n in 1..=4u32 {
            let by_edges = census.queues_by_edges(n).unwrap();
            let total = Candidates::new(n).len() as u32;
            for a in 0..=total.min(5) {
                for b in a..=total.min(5) {
                    let count = census.count_kqueues_with_sizes(n, &[a, b]).unwrap();
                    let prod = big(by_edges[a as usize]) * big(by_edges[b as usize]);
                    assert!(count <= prod, "n={n} sizes=({a},{b})");
                }
            }
            // single class: exactly the queues of that size
            for a in 0..=total {
                assert_eq!(census.count_kqueues_with_sizes(n, &[a]).unwrap(), big(by_edges[a as usize]));
            }
        }
    }
}
