//! Binomial random graphs from a counter-based generator.
//!
//! The generator is SplitMix64 evaluated as a pure function of
//! `(seed, counter)`: the output for counter `i` is the SplitMix64 finalizer
//! applied to `seed + (i + 1) * GOLDEN`. Sampling a graph reads counter
//! `edge_index(u, v)` for every pair, so the result depends only on
//! `(n, p, seed)` — the same on every platform, and trivially parallel
//! because no generator state is shared.

use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_VERTICES};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GnpError {
    #[error("edge probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// SplitMix64 finalizer.
#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-mode SplitMix64.
#[derive(Debug, Clone, Copy)]
pub struct CounterRng {
    seed: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        CounterRng { seed }
    }

    /// The 64-bit output at `counter`; a pure function of `(seed, counter)`.
    #[inline]
    pub fn value(&self, counter: u64) -> u64 {
        mix(self
            .seed
            .wrapping_add(counter.wrapping_add(1).wrapping_mul(GOLDEN)))
    }

    /// Derives an independent sub-seed for stream `stream` (per-trial seeds
    /// in Monte Carlo runs, per-graph seeds in batch sampling).
    pub fn derive(&self, stream: u64) -> u64 {
        mix(self.value(stream) ^ GOLDEN)
    }

    /// Uniform value in `0..bound` by rejection-free multiply-shift; good
    /// enough for subset sampling (bias < 2^-32 for bound < 2^32).
    pub fn below(&self, counter: u64, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        ((self.value(counter) as u128 * bound as u128) >> 64) as u64
    }
}

/// `G(n, p)`: each of the `n(n-1)/2` edges present independently with
/// probability `p`, deterministically for a fixed seed.
pub fn sample_gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GnpError> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(GnpError::BadProbability(p));
    }
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n).into());
    }
    // threshold in 1/2^64 units; p = 1 maps to 2^64 which every draw undercuts
    let threshold = (p * 18_446_744_073_709_551_616.0) as u128;
    let rng = CounterRng::new(seed);
    let mut rows = vec![0u64; n];
    for v in 1..n {
        for u in 0..v {
            let idx = Graph::edge_index(u, v) as u64;
            if (rng.value(idx) as u128) < threshold {
                rows[u] |= 1u64 << v;
                rows[v] |= 1u64 << u;
            }
        }
    }
    Ok(Graph::from_rows(n, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extreme_probabilities() {
        let g = sample_gnp(10, 0.0, 7).unwrap();
        assert_eq!(g.edge_count(), 0);
        let g = sample_gnp(10, 1.0, 7).unwrap();
        assert_eq!(g.edge_count(), 45);
    }

    #[test]
    fn rejects_bad_probability() {
        assert!(sample_gnp(5, -0.1, 0).is_err());
        assert!(sample_gnp(5, 1.1, 0).is_err());
        assert!(sample_gnp(5, f64::NAN, 0).is_err());
    }

    #[test]
    fn deterministic_in_seed() {
        let a = sample_gnp(20, 0.37, 123).unwrap();
        let b = sample_gnp(20, 0.37, 123).unwrap();
        assert_eq!(a, b);
        let c = sample_gnp(20, 0.37, 124).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn mean_edge_count_within_three_sigma() {
        // n=50, p=0.5: per-graph edge count ~ Bin(1225, 1/2),
        // mean 612.5, sd 17.5; the mean of 1000 draws has sd ~0.5534.
        let mut total = 0usize;
        let trials = 1000u64;
        for s in 0..trials {
            total += sample_gnp(50, 0.5, s).unwrap().edge_count();
        }
        let mean = total as f64 / trials as f64;
        let sd_mean = 17.5 / (trials as f64).sqrt();
        assert!(
            (mean - 612.5).abs() <= 3.0 * sd_mean,
            "mean {mean} too far from 612.5"
        );
    }

    #[test]
    fn counter_outputs_look_independent_of_order() {
        let rng = CounterRng::new(42);
        let forward: Vec<u64> = (0..10).map(|i| rng.value(i)).collect();
        let backward: Vec<u64> = (0..10).rev().map(|i| rng.value(i)).collect();
        assert_eq!(
            forward,
            backward.into_iter().rev().collect::<Vec<_>>()
        );
    }
}
