//! SplitMix64, the fixed pseudo-random generator behind every seeded
//! operation in the crate.
//!
//! The state advances by the golden-ratio increment `0x9E3779B97F4A7C15` and
//! each output is the state passed through the standard SplitMix64 finalizer.
//! Seeding with `1234567` yields `6457827717110365317`, `3203168211198807973`,
//! `9817491932198370423`, `4593380528125082431`, `16408922859458223821`.
//!
//! Bounded integers use rejection: a draw `x` is accepted when
//! `x >= 2^64 mod bound` and mapped to `x % bound`.

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform integer in `0..bound`. `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let reject_below = bound.wrapping_neg() % bound;
        loop {
            let x = self.next_u64();
            if x >= reject_below {
                return x % bound;
            }
        }
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}
