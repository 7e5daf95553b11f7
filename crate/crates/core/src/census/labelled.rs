//! Censuses of labelled simple graphs: by queue-number, and regular ones.

use num_bigint::BigUint;

use super::{kqueues_from_table, BitIter, Census, LABELLED_LIMIT, REGULAR_LIMIT};
use crate::bounds::{self, BoundReport, KQUEUE_PROOF_CONSTANT};
use crate::error::{Error, Result};
use crate::exec::{add_counts, map_reduce};
use crate::graph::LabelledGraph;
use crate::layout::{exact_queue_number, DEFAULT_NODE_BUDGET};

fn pairs(n: u32) -> Vec<(u32, u32)> {
    (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect()
}

/// `table[m][q]`: labelled simple graphs on `n` vertices with `m` edges and
/// queue-number exactly `q`, from an exact search on every graph.
pub fn labelled_qn_table(census: &Census, n: u32) -> Result<Vec<Vec<u64>>> {
    if n > LABELLED_LIMIT {
        return Err(Error::LimitExceeded { what: "n", value: n as u64, limit: LABELLED_LIMIT as u64 });
    }
    let pairs = pairs(n);
    let total = pairs.len();
    let width = total + 1;
    let flat = map_reduce(
        census.execution,
        1u64 << total,
        vec![0u64; width * width],
        |mask| {
            let g = LabelledGraph::simple(n, BitIter(mask).map(|i| pairs[i])).expect("valid pairs");
            let r = exact_queue_number(&g, DEFAULT_NODE_BUDGET).expect("simple graph");
            assert!(r.exact, "node budget exhausted at n = {n}");
            let mut acc = vec![0u64; width * width];
            acc[g.edge_count() * width + r.queue_number as usize] = 1;
            acc
        },
        add_counts,
    );
    Ok(flat.chunks(width).map(|row| row.to_vec()).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabelledQnReport {
    pub n: u32,
    pub m: u32,
    pub k: u32,
    /// Labelled simple graphs with `m` edges and queue-number at most `k`.
    pub count: BigUint,
    /// Ordered graphs (loops allowed) with `m` edges and no `(k+1)`-rainbow.
    pub ordered_count: BigUint,
    /// `ordered_count * n!`
    pub ordered_times_factorial: BigUint,
    /// Against the closed form with the proof constant, when `k` is in range.
    pub closed_form: Option<BoundReport>,
}

impl LabelledQnReport {
    pub fn holds(&self) -> bool {
        self.count <= self.ordered_times_factorial && self.closed_form.as_ref().is_none_or(|b| b.verdict)
    }
}

pub fn count_labelled_qn_le(census: &Census, n: u32, m: u32, k: u32) -> Result<LabelledQnReport> {
    let labelled = labelled_qn_table(census, n)?;
    let ordered = census.rainbow_table(n)?;
    Ok(qn_report(&labelled, &ordered, n, m, k))
}

pub(crate) fn qn_report(labelled: &[Vec<u64>], ordered: &[Vec<u64>], n: u32, m: u32, k: u32) -> LabelledQnReport {
    let count = BigUint::from(kqueues_from_table(labelled, m, k));
    let ordered_count = BigUint::from(kqueues_from_table(ordered, m, k));
    let ordered_times_factorial = &ordered_count * bounds::factorial(n);
    let closed_form = bounds::labelled_count_bound_log(n, m, k, KQUEUE_PROOF_CONSTANT)
        .ok()
        .map(|rhs| BoundReport::new(bounds::big_ln(&count), rhs));
    LabelledQnReport { n, m, k, count, ordered_count, ordered_times_factorial, closed_form }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularCensus {
    pub n: u32,
    pub degree: u32,
    pub count: BigUint,
    /// Set when `n * degree` is odd, so no such graph exists.
    pub odd_parity: bool,
    /// `ln` of the lower bound `(n / 3Δ)^(Δn/2)`.
    pub bound_log: f64,
    /// The count meets the lower bound.
    pub bound_met: bool,
}

/// Counts labelled simple `degree`-regular graphs on `n` vertices by
/// backtracking: each vertex, in label order, picks its missing neighbours
/// among later vertices with spare degree.
pub fn count_labelled_regular(n: u32, degree: u32) -> Result<RegularCensus> {
    if n > REGULAR_LIMIT {
        return Err(Error::LimitExceeded { what: "n", value: n as u64, limit: REGULAR_LIMIT as u64 });
    }
    let odd_parity = (n * degree) % 2 == 1;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let count = if odd_parity || degree >= n {
        0
    } else {
        let mut spare = vec![degree; n as usize];
        count_regular_rec(&mut spare, 0)
    };
    let count = BigUint::from(count);
    let bound_log = bounds::regular_count_lower_bound_log(n, degree);
    let bound_met = bounds::big_ln(&count) >= bound_log - 1e-9 * bound_log.abs().max(1.0);
    Ok(RegularCensus { n, degree, count, odd_parity, bound_log, bound_met })
}

fn count_regular_rec(spare: &mut [u32], v: usize) -> u64 {
    let n = spare.len();
    if v == n {
        return 1;
    }
    let need = spare[v] as usize;
    if need == 0 {
        return count_regular_rec(spare, v + 1);
    }
    let later: Vec<usize> = (v + 1..n).filter(|&w| spare[w] > 0).collect();
    if later.len() < need {
        return 0;
    }
    let mut total = 0;
    let mut chosen = Vec::with_capacity(need);
    choose(&later, need, 0, &mut chosen, &mut |picked| {
        for &w in picked {
            spare[w] -= 1;
        }
        let saved = spare[v];
        spare[v] = 0;
        total += count_regular_rec(spare, v + 1);
        spare[v] = saved;
        for &w in picked {
            spare[w] += 1;
        }
    });
    total
}

fn choose(items: &[usize], k: usize, from: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in from..items.len() {
        if items.len() - i < k - cur.len() {
            break;
        }
        cur.push(items[i]);
        choose(items, k, i + 1, cur, f);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent count: every edge set of the right size, degrees checked.
    fn brute_regular(n: u32, degree: u32) -> u64 {
        let pairs = pairs(n);
        let m = n * degree / 2;
        (0u64..1 << pairs.len())
            .filter(|mask| mask.count_ones() == m)
            .filter(|&mask| {
                let mut deg = vec![0; n as usize];
                for i in BitIter(mask) {
                    deg[(pairs[i].0 - 1) as usize] += 1;
                    deg[(pairs[i].1 - 1) as usize] += 1;
                }
                deg.iter().all(|&d| d == degree)
            })
            .count() as u64
    }

    #[test]
    fn regular_counts() {
        assert_eq!(count_labelled_regular(4, 3).unwrap().count, BigUint::from(1u32));
        let odd = count_labelled_regular(5, 3).unwrap();
        assert!(odd.odd_parity);
        assert_eq!(odd.count, BigUint::from(0u32));
        assert_eq!(count_labelled_regular(6, 3).unwrap().count, BigUint::from(70u32));
        assert_eq!(count_labelled_regular(8, 3).unwrap().count, BigUint::from(19355u32));
        assert_eq!(count_labelled_regular(3, 3).unwrap().count, BigUint::from(0u32));
        assert_eq!(count_labelled_regular(4, 0).unwrap().count, BigUint::from(1u32));
        for (n, d) in [(5, 2), (6, 2), (6, 3), (7, 2), (7, 4), (6, 4)] {
            assert_eq!(
                count_labelled_regular(n, d).unwrap().count,
                BigUint::from(brute_regular(n, d)),
                "n={n} d={d}"
            );
        }
    }

    /// Simple perfect matchings of the `n * degree` stubs. Each labelled
    /// regular graph arises from exactly `(degree!)^n` of them.
    fn simple_pairings(n: u32, degree: u32) -> u64 {
        fn rec(stubs: &mut Vec<u32>, adj: &mut Vec<Vec<bool>>) -> u64 {
            let Some(u) = stubs.pop() else {
                return 1;
            };
            let mut total = 0;
            for i in 0..stubs.len() {
                let v = stubs[i];
                if v == u || adj[u as usize][v as usize] {
                    continue;
                }
                stubs.swap_remove(i);
                adj[u as usize][v as usize] = true;
                adj[v as usize][u as usize] = true;
                total += rec(stubs, adj);
                adj[u as usize][v as usize] = false;
                adj[v as usize][u as usize] = false;
                stubs.push(v);
                let last = stubs.len() - 1;
                stubs.swap(i, last);
            }
            stubs.push(u);
            total
        }
        let mut stubs: Vec<u32> = (0..n).flat_map(|v| std::iter::repeat_n(v, degree as usize)).collect();
        rec(&mut stubs, &mut vec![vec![false; n as usize]; n as usize])
    }

    #[test]
    fn regular_counts_match_pairing_model() {
        for (n, d) in [(4, 3), (6, 3), (6, 2), (5, 2)] {
            let per_graph = (1..=d as u64).product::<u64>().pow(n);
            let pairings = simple_pairings(n, d);
            assert_eq!(pairings % per_graph, 0);
            assert_eq!(count_labelled_regular(n, d).unwrap().count, BigUint::from(pairings / per_graph), "n={n} d={d}");
        }
    }

    #[test]
    fn regular_bound_reported() {
        let r = count_labelled_regular(6, 3).unwrap();
        assert!((r.bound_log - 9.0 * (2.0f64 / 3.0).ln()).abs() < 1e-12);
        assert!(r.bound_met);
    }

    #[test]
    fn labelled_qn_examples() {
        let census = Census::default();
        let t3 = labelled_qn_table(&census, 3).unwrap();
        for m in 0..=3u32 {
            let all = [1u64, 3, 3, 1][m as usize];
            assert_eq!(kqueues_from_table(&t3, m, 1), all);
        }
        let r = count_labelled_qn_le(&census, 4, 6, 1).unwrap();
        assert_eq!(r.count, BigUint::from(0u32));
        let r = count_labelled_qn_le(&census, 4, 6, 2).unwrap();
        assert_eq!(r.count, BigUint::from(1u32));
        assert!(r.holds());
        let t5 = labelled_qn_table(&census, 5).unwrap();
        // the five 6-edge graphs needing two queues, from an independent count
        assert_eq!(t5[6][..3], [0, 205, 5]);
        assert_eq!(t5[10][..3], [0, 0, 1]);
    }
}
