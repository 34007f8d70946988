//! Sampling estimate of `Stab_rho(f) = E[f(x) f(y)]` with `y ~ N_rho(x)`.
//!
//! Each coordinate of `y` copies `x_i` with probability `rho` and is otherwise
//! redrawn uniformly, so `E[x_i y_i] = rho`. This is the reading under which the
//! sampled stability matches `sum_k rho^k W^(k)[f]`.
//!
//! Samples are split into fixed-size chunks. Chunk `c` draws from a ChaCha8
//! stream seeded with `seed` and stream id `c`, so results do not depend on
//! the number of worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::truth_table::TruthTable;

const CHUNK: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    /// Standard error of the mean; infinite for a single sample.
    pub stderr: f64,
    pub samples: u64,
}

impl McEstimate {
    /// Distance from `exact` in units of standard error (0 when both agree
    /// exactly with zero spread).
    pub fn z_score(&self, exact: f64) -> f64 {
        let diff = (self.estimate - exact).abs();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.stderr
        }
    }
}

fn chunk_sum(tt: &TruthTable, rho: f64, seed: u64, chunk: u64, count: u64) -> i64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let n = tt.n();
    let mask = (1u64 << n) - 1;
    let mut sum = 0i64;
    for _ in 0..count {
        let x = rng.gen::<u64>() & mask;
        let mut y = x;
        for i in 0..n {
            if rng.gen::<f64>() >= rho {
                y = (y & !(1 << i)) | (rng.gen::<u64>() & 1) << i;
            }
        }
        sum += if tt.get(x as usize) == tt.get(y as usize) {
            1
        } else {
            -1
        };
    }
    sum
}

/// Deterministic for a fixed `seed`.
pub fn monte_carlo_stability(
    tt: &TruthTable,
    rho: f64,
    samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    if !(0.0..=1.0).contains(&rho) {
        return invalid(format!("rho must lie in [0, 1], got {rho}"));
    }
    if samples == 0 {
        return invalid("need at least one sample");
    }
    let chunks = samples.div_ceil(CHUNK);
    let sum: i64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let count = CHUNK.min(samples - c * CHUNK);
            chunk_sum(tt, rho, seed, c, count)
        })
        .sum();
    let n = samples as f64;
    let mean = sum as f64 / n;
    // each product is +-1, so the sample variance is (1 - mean^2) * n / (n - 1)
    let stderr = if samples == 1 {
        f64::INFINITY
    } else {
        ((1.0 - mean * mean).max(0.0) / (n - 1.0)).sqrt()
    };
    Ok(McEstimate {
        estimate: mean,
        stderr,
        samples,
    })
}
