//! Named experiments behind a common trait, registered by name and selected
//! at runtime (`folkman experiment <name>`). Each one reproduces one of the
//! headline checks: arrowing ground truth, the Graham certificate, the
//! exhaustive dichotomy sweep, the co-degree majorant grid, the certified
//! chain grid, the clique-freeness Monte Carlo run, the canonical-sequence
//! property suite, the independence bijection, and oracle equivalence.

pub mod oracles;

mod counting;
mod grids;
mod random_runs;
mod search;

use std::time::Instant;

use anyhow::Result;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use folkman_core::Graph;

/// Result envelope; Monte Carlo experiments also fill `trials`, `estimate`,
/// and `ci95`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub params: Value,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ci95: Option<[f64; 2]>,
    pub passed: bool,
    pub details: Value,
    pub runtime_ms: u64,
}

impl ExperimentReport {
    fn new(name: &str, seed: u64) -> ExperimentReport {
        ExperimentReport {
            experiment: name.into(),
            params: json!({}),
            seed,
            trials: None,
            estimate: None,
            ci95: None,
            passed: false,
            details: json!({}),
            runtime_ms: 0,
        }
    }
}

pub trait Experiment: Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn run(&self, seed: u64) -> Result<ExperimentReport>;
}

/// Runs the body with timing filled into the report.
fn timed(
    name: &str,
    seed: u64,
    body: impl FnOnce(&mut ExperimentReport) -> Result<()>,
) -> Result<ExperimentReport> {
    let start = Instant::now();
    let mut report = ExperimentReport::new(name, seed);
    body(&mut report)?;
    report.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

static REGISTRY: &[&dyn Experiment] = &[
    &search::ArrowingGroundTruth,
    &search::GrahamFolkman,
    &counting::DichotomyExhaustive,
    &grids::CodegreeClaimGrid,
    &grids::ChainGrid,
    &random_runs::FkgMonteCarlo,
    &random_runs::CanonicalSequences,
    &counting::IndependenceBijection,
    &search::OracleEquivalence,
];

pub fn registry() -> &'static [&'static dyn Experiment] {
    REGISTRY
}

pub fn find(name: &str) -> Option<&'static dyn Experiment> {
    REGISTRY.iter().copied().find(|e| e.name() == name)
}

/// The 8-vertex host: `K_8` minus the 5-cycle on vertices 0..=4.
pub fn graham_graph() -> Graph {
    let removed: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    let mut edges = Vec::new();
    for v in 1..8 {
        for u in 0..v {
            if !removed.iter().any(|&(a, b)| (a.min(b), a.max(b)) == (u, v)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(8, edges).expect("8 vertices")
}
