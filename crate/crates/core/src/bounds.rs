//! Closed-form counting bounds, evaluated in natural-log space, with exact
//! big-integer cross-checks at small parameters.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Base of the queue-count bound `g(n) <= 121^n` extracted from doubling.
pub const NESTED_PROOF_CONSTANT: f64 = 121.0;

/// Constant `2e * 121` of the `k`-queue count bound as the proof produces it.
pub const KQUEUE_PROOF_CONSTANT: f64 = 2.0 * std::f64::consts::E * 121.0;

/// Relative guard applied to every log-space comparison.
pub const LOG_TOLERANCE: f64 = 1e-9;

/// Largest `n` for which `ln n!` is summed term by term.
const LN_FACTORIAL_SUM_LIMIT: u64 = 1_000_000;

/// `lhs <= rhs`, both as natural logarithms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundReport {
    pub lhs_log: f64,
    pub rhs_log: f64,
    pub verdict: bool,
    pub slack_log: f64,
}

impl BoundReport {
    pub fn new(lhs_log: f64, rhs_log: f64) -> Self {
        let slack_log = rhs_log - lhs_log;
        let scale = lhs_log.abs().max(rhs_log.abs()).max(1.0);
        let verdict = if slack_log.is_nan() { false } else { slack_log >= -LOG_TOLERANCE * scale };
        BoundReport { lhs_log, rhs_log, verdict, slack_log }
    }
}

/// Natural log of a big integer; `-inf` for zero.
pub fn big_ln(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().expect("fits in 64 bits") as f64).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn factorial(n: u32) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `ln n!`: summed exactly up to 10^6, Stirling series beyond.
pub fn ln_factorial(n: u64) -> f64 {
    if n <= LN_FACTORIAL_SUM_LIMIT {
        return (2..=n).map(|i| (i as f64).ln()).sum();
    }
    let x = n as f64;
    x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln() + 1.0 / (12.0 * x) - 1.0 / (360.0 * x.powi(3))
}

/// `ln` of the lower bound `(n / 3Δ)^(Δn/2)` on labelled simple
/// `Δ`-regular graphs.
pub fn regular_count_lower_bound_log(n: u32, delta: u32) -> f64 {
    if delta == 0 {
        return 0.0;
    }
    let (n, d) = (n as f64, delta as f64);
    d * n / 2.0 * (n / (3.0 * d)).ln()
}

fn check_k_range(n: u32, m: u32, k: u32) -> Result<()> {
    // 2m/n <= k <= m, compared in integers
    if n == 0 || m == 0 || 2 * m as u64 > k as u64 * n as u64 || k > m {
        return Err(Error::KOutOfRange { k: k as u64, lo: 2.0 * m as f64 / n.max(1) as f64, hi: m as u64 });
    }
    Ok(())
}

/// `ln` of `(c k n / m)^(2m)`, the bound on `k`-queues with `n` vertices and
/// `m` edges. Requires `2m/n <= k <= m`.
pub fn kqueue_count_bound_log(n: u32, m: u32, k: u32, c: f64) -> Result<f64> {
    check_k_range(n, m, k)?;
    let (n, m, k) = (n as f64, m as f64, k as f64);
    Ok(2.0 * m * (c * k * n / m).ln())
}

/// The `k`-queue bound times `n!`: labelled graphs with queue-number at most
/// `k`.
pub fn labelled_count_bound_log(n: u32, m: u32, k: u32, c: f64) -> Result<f64> {
    Ok(kqueue_count_bound_log(n, m, k, c)? + ln_factorial(n as u64))
}

/// `ln` of `c^n`, the bound on all queues with `n` vertices.
pub fn queue_count_bound_log(n: u32, c: f64) -> f64 {
    n as f64 * c.ln()
}

/// `ln` of the bound on queues with `n` vertices and `m` edges:
/// `C(n, 2m) c^(2m)` when `m <= n/2`, `c^n` otherwise.
pub fn queue_edges_bound_log(n: u32, m: u32, c: f64) -> f64 {
    if 2 * m <= n {
        big_ln(&binomial(n as u64, 2 * m as u64)) + 2.0 * m as f64 * c.ln()
    } else {
        n as f64 * c.ln()
    }
}

/// `e * sqrt(Δn/2)`, the universal queue-number upper bound.
pub fn universal_upper(n: u32, delta: u32) -> f64 {
    std::f64::consts::E * (delta as f64 * n as f64 / 2.0).sqrt()
}

/// `sqrt(Δ) n^(1/2 - 1/Δ) / (sqrt(3) c)`.
pub fn theorem_lower(n: u32, delta: u32, c: f64) -> f64 {
    let (n, d) = (n as f64, delta as f64);
    d.sqrt() * n.powf(0.5 - 1.0 / d) / (3f64.sqrt() * c)
}

/// How `n!` enters the right-hand side of the final inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorialForm {
    /// `n!` itself.
    Exact,
    /// The looser `n^n`.
    Power,
}

/// Compares `(n/3Δ)^(Δn/2)` against `(ck/Δ)^(Δn) · n!` (or `· n^n`).
pub fn theorem_inequality(n: u32, delta: u32, k: u64, c: f64, form: FactorialForm) -> BoundReport {
    let lhs = regular_count_lower_bound_log(n, delta);
    let rhs = theorem_rhs_log(n, delta, k, c, form);
    BoundReport::new(lhs, rhs)
}

fn theorem_rhs_log(n: u32, delta: u32, k: u64, c: f64, form: FactorialForm) -> f64 {
    let (nf, d) = (n as f64, delta as f64);
    let factorial_term = match form {
        FactorialForm::Exact => ln_factorial(n as u64),
        FactorialForm::Power => nf * nf.ln(),
    };
    d * nf * (c * k as f64 / d).ln() + factorial_term
}

/// Smallest positive integer `k` with `(n/3Δ)^(Δn/2) <= (ck/Δ)^(Δn) n^n`,
/// by doubling then bisection on the monotone log-space inequality.
pub fn solve_min_k(n: u32, delta: u32, c: f64) -> u64 {
    solve_min_k_with(n, delta, c, FactorialForm::Power)
}

pub fn solve_min_k_with(n: u32, delta: u32, c: f64, form: FactorialForm) -> u64 {
    let lhs = regular_count_lower_bound_log(n, delta);
    let holds = |k: u64| theorem_rhs_log(n, delta, k, c, form) >= lhs;
    if lhs <= 0.0 || holds(1) {
        return 1;
    }
    let mut hi = 2u64;
    while !holds(hi) {
        hi *= 2;
    }
    let mut lo = hi / 2; // fails
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Checks `C(n, t) < (en/t)^t` with the binomial computed exactly.
pub fn binom_bound_check(n: u64, t: u64) -> Result<BoundReport> {
    if t == 0 || t > n {
        return Err(Error::InvalidArgument(format!("need 1 <= t <= n, got n = {n}, t = {t}")));
    }
    let lhs = big_ln(&binomial(n, t));
    let rhs = t as f64 * (std::f64::consts::E * n as f64 / t as f64).ln();
    Ok(BoundReport::new(lhs, rhs))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartitionReport {
    pub m: u32,
    pub k: u32,
    /// Non-decreasing sequences of `k` non-negative integers summing to `m`.
    pub count: BigUint,
    pub multiset_bound: BigUint,
    pub central_binomial: BigUint,
    pub power_of_four: BigUint,
    /// `count <= C(k+m-1, m) < C(2m, m) < 4^m`, exactly.
    pub chain_holds: bool,
    /// `count` against `4^m` in log space.
    pub report: BoundReport,
}

/// Counts the size profiles `m_1 <= ... <= m_k` summing to `m` (partitions
/// of `m` into at most `k` parts) and checks them against
/// `C(k+m-1, m) < C(2m, m) < 2^(2m)`.
pub fn partition_count_check(m: u32, k: u32) -> Result<PartitionReport> {
    if k == 0 || k > m {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= m, got m = {m}, k = {k}")));
    }
    let count = partitions_at_most(m as usize, k as usize);
    let multiset_bound = binomial((k + m - 1) as u64, m as u64);
    let central_binomial = binomial(2 * m as u64, m as u64);
    let power_of_four = BigUint::one() << (2 * m as usize);
    let chain_holds = count <= multiset_bound && multiset_bound < central_binomial && central_binomial < power_of_four;
    let report = BoundReport::new(big_ln(&count), 2.0 * m as f64 * std::f64::consts::LN_2);
    Ok(PartitionReport { m, k, count, multiset_bound, central_binomial, power_of_four, chain_holds, report })
}

/// Partitions of `m` into at most `k` parts: `p[j][s]` over part sizes up to
/// `k` (conjugate view: parts of size at most `k`).
fn partitions_at_most(m: usize, k: usize) -> BigUint {
    let mut ways = vec![BigUint::zero(); m + 1];
    ways[0] = BigUint::one();
    for part in 1..=k {
        for s in part..=m {
            let add = ways[s - part].clone();
            ways[s] += add;
        }
    }
    ways[m].clone()
}
