//! Seeded random experiments: the clique-freeness Monte Carlo check against
//! the FKG-type lower bound, and the canonical-sequence property suite.

use anyhow::Result;
use rayon::prelude::*;
use serde_json::json;

use folkman_core::arrow::Budget;
use folkman_core::bounds::fkg_lower_bound;
use folkman_core::coloring::EdgeColoring;
use folkman_core::density::{canonical_sequence, mono_clique_from_canonical, Fraction};
use folkman_core::gnp::CounterRng;
use folkman_core::interval::LogInterval;
use folkman_core::mc::{mc_estimate, McEvent};
use folkman_core::Graph;

use super::{timed, Experiment, ExperimentReport};

pub struct FkgMonteCarlo;

impl Experiment for FkgMonteCarlo {
    fn name(&self) -> &'static str {
        "fkg-monte-carlo"
    }

    fn summary(&self) -> &'static str {
        "the empirical K4-freeness frequency of G(40, 0.1) over 10^4 seeded \
         trials exceeds the exp(-C^6 n) lower bound, Wilson-adjusted"
    }

    fn run(&self, seed: u64) -> Result<ExperimentReport> {
        timed(self.name(), seed, |report| {
            let n = 40usize;
            let p = 0.1f64;
            let k = 3u32;
            let trials = 10_000u64;
            // p = C n^(-2/(k+1))  =>  C = p sqrt(n) for k = 3
            let c = LogInterval::from_f64(p * (n as f64).sqrt())?;
            let bound = fkg_lower_bound(&LogInterval::from_u64(n as u64), k as u64, &c)?;
            let bound_hi = 2f64.powf(bound.hi());

            let mc = mc_estimate(
                McEvent::CliqueFree { n, p, k },
                trials,
                seed,
                Budget::UNLIMITED,
            )?;
            report.passed = !mc.partial && mc.ci95[0] > bound_hi && mc.estimate > bound_hi;
            report.params = json!({ "n": n, "p": p, "k": k, "bound_log2": [bound.lo(), bound.hi()] });
            report.trials = Some(trials);
            report.estimate = Some(mc.estimate);
            report.ci95 = Some(mc.ci95);
            report.details = json!({
                "bound": bound_hi,
                "successes": mc.successes,
                "wilson_lower": mc.ci95[0],
            });
            Ok(())
        })
    }
}

pub struct CanonicalSequences;

impl Experiment for CanonicalSequences {
    fn name(&self) -> &'static str {
        "canonical-sequences"
    }

    fn summary(&self) -> &'static str {
        "on complete hosts of order at least (2/d)^(2k-4) with d = 0.9, \
         greedy canonical sequences of length 2k-2 appear in every random \
         2-coloring and always pin a verified monochromatic clique"
    }

    fn run(&self, seed: u64) -> Result<ExperimentReport> {
        timed(self.name(), seed, |report| {
            let d = Fraction::new(9, 10)?;
            let trials_per_k = 500u64;
            // hosts satisfying n >= (2/d)^(2k-4): thresholds 4.94 and 24.4;
            // powers of two keep the worst-case halving walk alive to the end
            let cases = [(3u32, 8usize), (4u32, 32usize)];
            let mut failures = Vec::new();
            let mut total = 0u64;
            for (k, n) in cases {
                let host = Graph::complete(n)?;
                let m = host.edge_count();
                let ell = (2 * k - 2) as usize;
                let rng = CounterRng::new(seed ^ (k as u64) << 32);
                let fails: Vec<u64> = (0..trials_per_k)
                    .into_par_iter()
                    .filter_map(|t| {
                        let sub = CounterRng::new(rng.derive(t));
                        let colors: Vec<u8> =
                            (0..m).map(|i| (sub.value(i as u64) & 1) as u8 + 1).collect();
                        let c = EdgeColoring::new(2, colors).ok()?;
                        let run = canonical_sequence(&host, &c, ell, d).ok()?;
                        let seq = match run.sequence {
                            Some(s) => s,
                            None => return Some(t),
                        };
                        if !seq.verify(&host, &c) {
                            return Some(t);
                        }
                        match mono_clique_from_canonical(&host, &c, &seq, k as usize) {
                            Ok(w) if w.verify(&host, &c) => None,
                            _ => Some(t),
                        }
                    })
                    .collect();
                total += trials_per_k;
                if !fails.is_empty() {
                    failures.push(json!({ "k": k, "n": n, "failed_trials": fails }));
                }
            }
            report.passed = failures.is_empty();
            report.params = json!({
                "d": "9/10", "cases": [{ "k": 3, "n": 8 }, { "k": 4, "n": 32 }],
                "trials_per_case": trials_per_k,
            });
            report.trials = Some(total);
            report.details = json!({ "failures": failures });
            Ok(())
        })
    }
}
