//! Sampling oracle for the effective-capacity expectation: draws fades from
//! the exact unit-exponential law with a seeded deterministic generator and
//! estimates the inner expectation the quadrature routes integrate.
//!
//! Determinism contract: the sample stream is fixed by (seed, samples) alone.
//! Work is split into fixed-size shards, each with its own derived seed and
//! running-moment accumulator; shard results are merged in shard order, so
//! single-threaded and multi-worker runs produce bit-identical estimates.

use rand::distributions::OpenClosed01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channel::rate_given_q_inv;
use crate::effective_capacity::{EcEvaluation, EcMethod};
use crate::error::{Error, Result};
use crate::numerics::gaussian_q_inv;

/// Fixed shard length of the deterministic sampling plan. Changing this
/// constant changes every Monte Carlo result, so it is part of the
/// reproducibility contract.
const SHARD_SIZE: u64 = 65_536;

/// Summary statistics of a Monte Carlo run over the inner expectation.
#[derive(Debug, Clone, Copy)]
pub struct McEstimate {
    /// Sample mean of ε + (1−ε)·e^(−θ T_f r(z)).
    pub mean: f64,
    /// Standard error of `mean`.
    pub std_error: f64,
    /// Number of fades drawn.
    pub samples: u64,
    /// Seed the sample stream derives from.
    pub seed: u64,
    /// True when every sample was identical and the standard error is
    /// uninformative.
    pub degenerate: bool,
}

/// Per-shard running moments (Welford), merged pairwise in shard order.
#[derive(Debug, Clone, Copy)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn merge(self, other: Moments) -> Moments {
        if other.count == 0 {
            return self;
        }
        if self.count == 0 {
            return other;
        }
        let total = self.count + other.count;
        let delta = other.mean - self.mean;
        let nb_over_n = other.count as f64 / total as f64;
        Moments {
            count: total,
            mean: self.mean + delta * nb_over_n,
            m2: self.m2 + other.m2 + delta * delta * (self.count as f64) * nb_over_n,
        }
    }
}

/// Operating point shared by every shard of one estimation run.
#[derive(Clone, Copy)]
struct ShardModel {
    sinr: f64,
    theta: f64,
    epsilon: f64,
    blocklength: f64,
    q_inv: f64,
}

fn sample_shard(shard_index: u64, shard_len: u64, seed: u64, model: ShardModel) -> Moments {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(shard_index));
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for i in 0..shard_len {
        let u: f64 = rng.sample(OpenClosed01);
        let z = -u.ln(); // inverse CDF of the unit exponential
        let r = rate_given_q_inv(model.sinr, z, model.blocklength, model.q_inv);
        let y =
            model.epsilon + (1.0 - model.epsilon) * (-model.theta * model.blocklength * r).exp();
        let k = (i + 1) as f64;
        let delta = y - mean;
        mean += delta / k;
        m2 += delta * (y - mean);
    }
    Moments {
        count: shard_len,
        mean,
        m2,
    }
}

/// Monte Carlo evaluation of the effective capacity: estimates the inner
/// expectation by sampling fades, then maps through −ln(·)/(θ T_f). Returns
/// the EC evaluation together with the sampling statistics of the inner
/// expectation.
pub fn ec_monte_carlo(
    sinr: f64,
    theta: f64,
    epsilon: f64,
    blocklength: u32,
    samples: u64,
    seed: u64,
) -> Result<(EcEvaluation, McEstimate)> {
    if !(sinr > 0.0) || !sinr.is_finite() {
        return Err(Error::domain("sinr must be finite and > 0"));
    }
    if !(theta > 0.0) || !theta.is_finite() {
        return Err(Error::domain("theta must be finite and > 0"));
    }
    if blocklength < 1 {
        return Err(Error::domain("blocklength must be at least 1 symbol"));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::domain(
            "Monte Carlo evaluation requires epsilon strictly inside (0, 1)",
        ));
    }
    if samples < 1_000 {
        return Err(Error::domain(
            "fewer than 1000 samples cannot give a usable standard error",
        ));
    }

    let tf = blocklength as f64;
    let model = ShardModel {
        sinr,
        theta,
        epsilon,
        blocklength: tf,
        q_inv: gaussian_q_inv(epsilon)?,
    };
    let full_shards = samples / SHARD_SIZE;
    let remainder = samples % SHARD_SIZE;
    let shard_count = full_shards + u64::from(remainder > 0);

    let shard_moments: Vec<Moments> = (0..shard_count)
        .into_par_iter()
        .map(|shard_index| {
            let len = if shard_index < full_shards {
                SHARD_SIZE
            } else {
                remainder
            };
            sample_shard(shard_index, len, seed, model)
        })
        .collect();

    let combined = shard_moments.into_iter().fold(
        Moments {
            count: 0,
            mean: 0.0,
            m2: 0.0,
        },
        Moments::merge,
    );

    let n = combined.count as f64;
    let degenerate = combined.m2 == 0.0;
    let std_error = (combined.m2 / (n - 1.0) / n).sqrt();
    let estimate = McEstimate {
        mean: combined.mean,
        std_error,
        samples,
        seed,
        degenerate,
    };
    let evaluation = EcEvaluation {
        ec: -combined.mean.ln() / (theta * tf),
        epsilon,
        method: EcMethod::MonteCarlo { samples, seed },
        inner_expectation: combined.mean,
        quadrature_error: std_error,
    };
    Ok((evaluation, estimate))
}
