//! Seeded Monte Carlo estimates for random-graph events, with Wilson
//! confidence intervals. Trials run in parallel over per-trial derived
//! seeds, so the counts are independent of scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrow::{arrows, ArrowVerdict, Budget, SearchMode};
use crate::gnp::{sample_gnp, CounterRng, GnpError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum McError {
    #[error("trials must be positive")]
    NoTrials,
    #[error(transparent)]
    Gnp(#[from] GnpError),
}

/// Events whose probability gets estimated over `G(n, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum McEvent {
    /// The sample contains no clique on `k + 1` vertices.
    CliqueFree { n: usize, p: f64, k: u32 },
    /// The sample arrows `(K_k)_r`; only sensible at sizes where the
    /// arrowing search finishes inside the per-trial budget.
    Arrowing { n: usize, p: f64, k: u32, r: u32 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McResult {
    pub event: McEvent,
    pub trials: u64,
    pub successes: u64,
    /// Trials whose arrowing search hit its budget; excluded from the
    /// estimate and flagged via `partial`.
    pub indeterminate: u64,
    pub estimate: f64,
    pub ci95: [f64; 2],
    pub partial: bool,
    pub runtime_ms: u64,
}

/// Wilson 95% interval for `succ` successes out of `n` decided trials.
pub fn wilson_ci95(succ: u64, n: u64) -> [f64; 2] {
    if n == 0 {
        return [0.0, 1.0];
    }
    let z = 1.959963984540054f64;
    let n = n as f64;
    let phat = succ as f64 / n;
    let z2 = z * z;
    let center = (phat + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n);
    [(center - half).max(0.0), (center + half).min(1.0)]
}

/// Estimates the event frequency over `trials` seeded samples; deterministic
/// for a fixed seed.
pub fn mc_estimate(
    event: McEvent,
    trials: u64,
    seed: u64,
    per_trial_budget: Budget,
) -> Result<McResult, McError> {
    if trials == 0 {
        return Err(McError::NoTrials);
    }
    // validate parameters once up front
    match event {
        McEvent::CliqueFree { n, p, .. } | McEvent::Arrowing { n, p, .. } => {
            sample_gnp(n.min(1), p, 0)?;
            let _ = n;
        }
    }
    let start = std::time::Instant::now();
    let rng = CounterRng::new(seed);
    let (successes, indeterminate) = (0..trials)
        .into_par_iter()
        .map(|t| {
            let trial_seed = rng.derive(t);
            match event {
                McEvent::CliqueFree { n, p, k } => {
                    let g = sample_gnp(n, p, trial_seed).expect("validated");
                    (u64::from(!g.has_clique(k as usize + 1)), 0u64)
                }
                McEvent::Arrowing { n, p, k, r } => {
                    let g = sample_gnp(n, p, trial_seed).expect("validated");
                    let cert = arrows(&g, k, r, SearchMode::Deterministic, per_trial_budget);
                    match cert.verdict {
                        ArrowVerdict::Arrows => (1, 0),
                        ArrowVerdict::NonArrowing => (0, 0),
                        ArrowVerdict::Indeterminate => (0, 1),
                    }
                }
            }
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let decided = trials - indeterminate;
    let estimate = if decided == 0 {
        f64::NAN
    } else {
        successes as f64 / decided as f64
    };
    Ok(McResult {
        event,
        trials,
        successes,
        indeterminate,
        estimate,
        ci95: wilson_ci95(successes, decided),
        partial: indeterminate > 0,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}
