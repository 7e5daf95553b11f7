//! Seeded random simple regular graphs from the pairing model.
//!
//! Vertex `v` contributes `Δ` stubs, the stub list `1,..,1,2,..,2,..,n` is
//! shuffled with [`SplitMix64`], and consecutive stubs are paired. A pairing
//! with a loop or a repeated pair is discarded and the generator draws again
//! from the same stream. Every simple `Δ`-regular graph arises from exactly
//! `(Δ!)^n` pairings, so accepted outputs are uniform over labelled graphs.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exec::{map_collect, Execution};
use crate::graph::LabelledGraph;
use crate::rng::SplitMix64;

pub const DEFAULT_REJECTION_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularSample {
    pub n: u32,
    pub degree: u32,
    pub seed: u64,
    pub graph: LabelledGraph,
    /// Pairings discarded before the accepted one.
    pub rejections: u64,
}

pub fn gen_regular(n: u32, degree: u32, seed: u64) -> Result<RegularSample> {
    gen_regular_capped(n, degree, seed, DEFAULT_REJECTION_CAP)
}

pub fn gen_regular_capped(n: u32, degree: u32, seed: u64, cap: u64) -> Result<RegularSample> {
    if (n as u64 * degree as u64) % 2 == 1 {
        return Err(Error::OddDegreeSum { n, degree });
    }
    if degree >= n {
        return Err(Error::DegreeTooLarge { n, degree });
    }
    let mut rng = SplitMix64::new(seed);
    let mut stubs: Vec<u32> = (1..=n).flat_map(|v| std::iter::repeat_n(v, degree as usize)).collect();
    for rejections in 0..cap {
        rng.shuffle(&mut stubs);
        if let Some(edges) = simple_pairing(&stubs) {
            let graph = LabelledGraph::simple(n, edges).expect("pairing is simple");
            return Ok(RegularSample { n, degree, seed, graph, rejections });
        }
    }
    Err(Error::RejectionCapExceeded(cap))
}

fn simple_pairing(stubs: &[u32]) -> Option<BTreeSet<(u32, u32)>> {
    let mut edges = BTreeSet::new();
    for pair in stubs.chunks_exact(2) {
        let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        if u == v || !edges.insert((u, v)) {
            return None;
        }
    }
    Some(edges)
}

/// `samples` graphs with seeds `seed, seed + 1, ...`, in seed order.
pub fn gen_regular_batch(n: u32, degree: u32, seed: u64, samples: u64, exec: Execution) -> Vec<Result<RegularSample>> {
    let seeds: Vec<u64> = (0..samples).map(|i| seed.wrapping_add(i)).collect();
    map_collect(exec, &seeds, |&s| gen_regular(n, degree, s))
}

/// Simple and every vertex of degree exactly `degree`.
pub fn degree_check(g: &LabelledGraph, degree: u32) -> bool {
    !g.has_loop() && g.is_regular(degree)
}
