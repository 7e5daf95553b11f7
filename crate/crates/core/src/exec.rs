//! Data-parallel helpers with a sequential fallback.
//!
//! Every parallel entry point in the crate takes an [`Execution`]. With the
//! `parallel` feature disabled, [`Execution::Parallel`] runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Maps every index in `0..len` and folds the results with an associative
/// `reduce`. The fold order is fixed, so non-commutative reductions still
/// give schedule-independent output.
pub fn map_reduce<R, M, F>(exec: Execution, len: u64, identity: R, map: M, reduce: F) -> R
where
    R: Send + Clone + Sync,
    M: Fn(u64) -> R + Send + Sync,
    F: Fn(R, R) -> R + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len)
            .into_par_iter()
            .map(&map)
            .reduce(|| identity.clone(), &reduce);
    }
    let _ = exec;
    (0..len).map(map).fold(identity, reduce)
}

/// Maps a slice into a vector, preserving order.
pub fn map_collect<T, R, M>(exec: Execution, items: &[T], map: M) -> Vec<R>
where
    T: Sync,
    R: Send,
    M: Fn(&T) -> R + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(map).collect();
    }
    let _ = exec;
    items.iter().map(map).collect()
}

/// Element-wise sum of two count vectors, padding the shorter one.
pub(crate) fn add_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let s = map_reduce(exec, 1000, 0u64, |i| i * i, |a, b| a + b);
            assert_eq!(s, (0..1000u64).map(|i| i * i).sum::<u64>());
            let v = map_collect(exec, &[1, 2, 3], |x| x * 10);
            assert_eq!(v, vec![10, 20, 30]);
        }
    }

    #[test]
    fn count_vectors_pad() {
        assert_eq!(add_counts(vec![1, 2], vec![3, 4, 5]), vec![4, 6, 5]);
        assert_eq!(add_counts(vec![1, 2, 3], vec![1]), vec![2, 2, 3]);
    }
}
