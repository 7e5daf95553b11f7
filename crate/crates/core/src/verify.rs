//! Small-scale exhaustive checks of the counting lemmas.

use std::fmt;

use num_bigint::BigUint;

use crate::bounds::{self, BoundReport, KQUEUE_PROOF_CONSTANT, NESTED_PROOF_CONSTANT};
use crate::census::{
    self, doubling_patterns, labelled_qn_table, max_queue_edges, verify_doubling, Candidates, Census,
};
use crate::error::{Error, Result};
use crate::exec::map_reduce;
use crate::rainbow::{greedy_partition, max_rainbow, validate_assignment};

/// Largest `n` for the per-graph queue-number census inside the lemma run.
pub const LABELLED_VERIFY_LIMIT: u32 = 5;
/// Largest `n` for the class-size partition check.
pub const SIZES_VERIFY_LIMIT: u32 = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// One `key=value` line describing the first failure.
    pub counterexample: Option<String>,
}

impl LemmaCheck {
    fn new(name: &'static str, detail: String, counterexample: Option<String>) -> Self {
        LemmaCheck { name, passed: counterexample.is_none(), detail, counterexample }
    }
}

impl fmt::Display for LemmaCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "ok  " } else { "FAIL" };
        write!(f, "{status} {:<22} {}", self.name, self.detail)?;
        if let Some(c) = &self.counterexample {
            write!(f, "\ncounterexample: check={} {c}", self.name)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub max_n: u32,
    pub checks: Vec<LemmaCheck>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs every lemma check on all ordered graphs with at most `max_n`
/// vertices. Per-graph queue-number searches stop at
/// [`LABELLED_VERIFY_LIMIT`] vertices and class-size searches at
/// [`SIZES_VERIFY_LIMIT`].
pub fn verify_lemmas(census: &Census, max_n: u32) -> Result<VerifyReport> {
    if max_n == 0 || max_n > census.limit {
        return Err(Error::LimitExceeded { what: "max-n", value: max_n as u64, limit: census.limit as u64 });
    }
    let tables: Vec<Vec<Vec<u64>>> = (1..=max_n).map(|n| census.rainbow_table(n)).collect::<Result<_>>()?;
    let queue_counts: Vec<Vec<u64>> = (1..=max_n).map(|n| census.queues_by_edges(n)).collect::<Result<_>>()?;
    let checks = vec![
        rainbow_check(census, max_n.min(4)),
        edges_check(census, max_n)?,
        patterns_check(),
        doubling_check(census, max_n)?,
        nested_check(&queue_counts),
        number_edges_check(&queue_counts),
        rainbow_edges_check(&tables),
        sizes_check(census, max_n.min(SIZES_VERIFY_LIMIT), &queue_counts)?,
        partitions_check()?,
        binomial_check()?,
        labelled_check(census, max_n.min(LABELLED_VERIFY_LIMIT), &tables)?,
        regular_check(max_n)?,
        theorem_check(),
    ];
    Ok(VerifyReport { max_n, checks })
}

/// Greedy partition is valid and uses exactly as many queues as the largest
/// rainbow, whose certificate is a genuine rainbow. Since a rainbow needs one
/// queue per edge, this makes the rainbow size the minimum queue count.
fn rainbow_check(census: &Census, max_n: u32) -> LemmaCheck {
    let mut graphs = 0u64;
    let mut bad = None;
    for n in 1..=max_n {
        let cands = Candidates::new(n);
        graphs += 1u64 << cands.len();
        let failure = map_reduce(
            census.execution,
            1u64 << cands.len(),
            None,
            |mask| {
                let g = cands.graph(mask);
                let (r, cert) = max_rainbow(&g);
                let a = greedy_partition(&g);
                let ok = validate_assignment(&a) && a.k() == r && cert.is_valid() && cert.len() == r as usize;
                (!ok).then_some(mask)
            },
            |a, b| a.or(b),
        );
        if let Some(mask) = failure {
            bad.get_or_insert(format!("n={n} edges={}", edge_list(&cands, mask)));
        }
    }
    LemmaCheck::new("rainbow", format!("{graphs} ordered graphs, n <= {max_n}"), bad)
}

fn edge_list(cands: &Candidates, mask: u64) -> String {
    let edges: Vec<String> = cands.graph(mask).edges().iter().map(|e| e.to_string()).collect();
    edges.join("")
}

fn edges_check(census: &Census, max_n: u32) -> Result<LemmaCheck> {
    let mut bad = None;
    let mut maxima = Vec::new();
    for n in 1..=max_n {
        let r = max_queue_edges(census, n)?;
        maxima.push(r.max_edges.to_string());
        if !r.holds() || r.max_edges != 2 * n - 1 {
            bad.get_or_insert(format!("n={n} max_edges={} expected={}", r.max_edges, 2 * n - 1));
        }
    }
    Ok(LemmaCheck::new("edges", format!("max queue edges {}", maxima.join(",")), bad))
}

fn patterns_check() -> LemmaCheck {
    let plain = doubling_patterns(false).len();
    let looped = doubling_patterns(true).len();
    let bad = (plain != 11 || looped != 7).then(|| format!("non_loop={plain} loop={looped}"));
    LemmaCheck::new("doubling-patterns", format!("{plain} non-loop, {looped} loop"), bad)
}

fn doubling_check(census: &Census, max_n: u32) -> Result<LemmaCheck> {
    let mut bad = None;
    let mut parts = Vec::new();
    for n in 1..=max_n / 2 {
        let r = verify_doubling(census, n)?;
        parts.push(format!("g({})={} <= {}", 2 * n, r.g_2n, r.bound));
        if !r.holds() {
            let witness = r.counterexample.as_ref().map(|g| g.to_text().replace('\n', " ")).unwrap_or_default();
            bad.get_or_insert(format!(
                "n={n} g2n={} bound={} nested_quotients={} coverage_failures={} graph=\"{}\"",
                r.g_2n,
                r.bound,
                r.nested_quotients,
                r.coverage_failures,
                witness.trim()
            ));
        }
    }
    Ok(LemmaCheck::new("doubling", parts.join("; "), bad))
}

fn nested_check(queue_counts: &[Vec<u64>]) -> LemmaCheck {
    let mut bad = None;
    let mut parts = Vec::new();
    for (i, row) in queue_counts.iter().enumerate() {
        let n = i as u32 + 1;
        let g: u64 = row.iter().sum();
        parts.push(g.to_string());
        let r = BoundReport::new((g as f64).ln(), bounds::queue_count_bound_log(n, NESTED_PROOF_CONSTANT));
        if !r.verdict {
            bad.get_or_insert(format!("n={n} g={g}"));
        }
    }
    LemmaCheck::new("number-nested", format!("g(n) = {} <= 121^n", parts.join(",")), bad)
}

fn number_edges_check(queue_counts: &[Vec<u64>]) -> LemmaCheck {
    let mut bad = None;
    let mut checked = 0;
    for (i, row) in queue_counts.iter().enumerate() {
        let n = i as u32 + 1;
        for (m, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            checked += 1;
            let rhs = bounds::queue_edges_bound_log(n, m as u32, NESTED_PROOF_CONSTANT);
            if !BoundReport::new((count as f64).ln(), rhs).verdict {
                bad.get_or_insert(format!("n={n} m={m} count={count}"));
            }
        }
    }
    LemmaCheck::new("number-edges", format!("{checked} (n, m) pairs"), bad)
}

fn rainbow_edges_check(tables: &[Vec<Vec<u64>>]) -> LemmaCheck {
    let mut bad = None;
    let mut checked = 0;
    for (i, table) in tables.iter().enumerate() {
        let n = i as u32 + 1;
        for m in 1..table.len() as u32 {
            for k in 1..=m {
                let Ok(rhs) = bounds::kqueue_count_bound_log(n, m, k, KQUEUE_PROOF_CONSTANT) else {
                    continue;
                };
                checked += 1;
                let count = census::kqueues_from_table(table, m, k);
                if !BoundReport::new((count as f64).ln(), rhs).verdict {
                    bad.get_or_insert(format!("n={n} m={m} k={k} count={count}"));
                }
            }
        }
    }
    LemmaCheck::new("number-rainbow-edges", format!("{checked} (n, m, k) triples"), bad)
}

/// `g(n; m_1, m_2) <= g(n, m_1) g(n, m_2)` for every size pair.
fn sizes_check(census: &Census, max_n: u32, queue_counts: &[Vec<u64>]) -> Result<LemmaCheck> {
    let mut bad = None;
    let mut checked = 0;
    for n in 1..=max_n {
        let row = &queue_counts[n as usize - 1];
        let total = row.len() as u32 - 1;
        for a in 0..=total {
            for b in a..=total - a {
                checked += 1;
                let count = census.count_kqueues_with_sizes(n, &[a, b])?;
                let product = BigUint::from(row[a as usize]) * row[b as usize];
                if count > product {
                    bad.get_or_insert(format!("n={n} sizes={a},{b} count={count} product={product}"));
                }
            }
        }
    }
    Ok(LemmaCheck::new("class-sizes", format!("{checked} size pairs, n <= {max_n}"), bad))
}

fn partitions_check() -> Result<LemmaCheck> {
    let mut bad = None;
    for m in 1..=12 {
        for k in 1..=m {
            let r = bounds::partition_count_check(m, k)?;
            if !r.chain_holds || !r.report.verdict {
                bad.get_or_insert(format!("m={m} k={k} count={}", r.count));
            }
        }
    }
    Ok(LemmaCheck::new("size-profiles", "m <= 12, k <= m".into(), bad))
}

fn binomial_check() -> Result<LemmaCheck> {
    let mut bad = None;
    for n in 1..=60 {
        for t in 1..=n {
            if !bounds::binom_bound_check(n, t)?.verdict {
                bad.get_or_insert(format!("n={n} t={t}"));
            }
        }
    }
    Ok(LemmaCheck::new("binomial", "n <= 60, 1 <= t <= n".into(), bad))
}

fn labelled_check(census: &Census, max_n: u32, tables: &[Vec<Vec<u64>>]) -> Result<LemmaCheck> {
    let mut bad = None;
    let mut checked = 0;
    for n in 1..=max_n {
        let labelled = labelled_qn_table(census, n)?;
        let ordered = &tables[n as usize - 1];
        for m in 1..labelled.len() as u32 {
            for k in 1..=m {
                checked += 1;
                let r = census::qn_report(&labelled, ordered, n, m, k);
                if !r.holds() {
                    bad.get_or_insert(format!(
                        "n={n} m={m} k={k} count={} ordered_times_factorial={}",
                        r.count, r.ordered_times_factorial
                    ));
                }
            }
        }
    }
    Ok(LemmaCheck::new("number-queue", format!("{checked} (n, m, k) triples, n <= {max_n}"), bad))
}

/// Reports regular counts against their lower bound. The bound is an
/// asymptotic statement, so shortfalls at small `n` are listed, not failed.
fn regular_check(max_n: u32) -> Result<LemmaCheck> {
    let top = (2 * max_n).clamp(4, 8);
    let mut below = Vec::new();
    let mut checked = 0;
    for n in 4..=top {
        for delta in 3..n {
            let r = census::count_labelled_regular(n, delta)?;
            if r.odd_parity {
                continue;
            }
            checked += 1;
            if !r.bound_met {
                below.push(format!("({n},{delta})"));
            }
        }
    }
    let detail = if below.is_empty() {
        format!("{checked} (n, delta) pairs, all at or above the bound")
    } else {
        format!("{checked} (n, delta) pairs, below the bound: {}", below.join(""))
    };
    Ok(LemmaCheck::new("number-regular", detail, None))
}

fn theorem_check() -> LemmaCheck {
    let mut bad = None;
    for delta in [3, 4, 5, 10] {
        for n in [100, 1_000, 10_000] {
            for c in [1.0, 121.0] {
                let k = bounds::solve_min_k(n, delta, c);
                let lower = bounds::theorem_lower(n, delta, c).ceil();
                if (k as f64 - lower).abs() > 1.0 {
                    bad.get_or_insert(format!("n={n} delta={delta} c={c} k={k} lower={lower}"));
                }
            }
        }
    }
    LemmaCheck::new("theorem-algebra", "delta in {3,4,5,10}, n in {1e2,1e3,1e4}, c in {1,121}".into(), bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let report = verify_lemmas(&Census::default(), 4).unwrap();
        for c in &report.checks {
            assert!(c.passed, "{c}");
        }
        assert_eq!(report.checks.len(), 13);
    }

    #[test]
    fn rejects_large_n() {
        assert!(verify_lemmas(&Census::default(), 7).is_err());
        assert!(verify_lemmas(&Census::default(), 0).is_err());
    }

    #[test]
    fn counterexample_line() {
        let c = LemmaCheck::new("edges", "x".into(), Some("n=2 max_edges=4 expected=3".into()));
        assert!(!c.passed);
        assert!(c.to_string().ends_with("counterexample: check=edges n=2 max_edges=4 expected=3"));
    }
}
