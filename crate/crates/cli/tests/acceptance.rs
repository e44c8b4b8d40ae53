//! Acceptance suite: one test per headline criterion, each printing a
//! pass/fail line. Run with `cargo test -p folkman-cli --test acceptance`
//! (add `-- --nocapture` to see the lines; the per-test ok/FAILED status
//! mirrors them either way).

use folkman_cli::experiments::{find, ExperimentReport};

fn run(name: &str, seed: u64) -> ExperimentReport {
    let exp = find(name).unwrap_or_else(|| panic!("experiment {name} not registered"));
    exp.run(seed).unwrap_or_else(|e| panic!("{name} errored: {e:#}"))
}

fn announce(criterion: u32, label: &str, report: &ExperimentReport, budget_ms: u64) {
    let status = if report.passed { "PASS" } else { "FAIL" };
    println!(
        "ACCEPTANCE {criterion}: {status} — {label} ({} ms)",
        report.runtime_ms
    );
    assert!(
        report.passed,
        "criterion {criterion} failed: {}",
        serde_json::to_string_pretty(&report.details).unwrap()
    );
    assert!(
        report.runtime_ms <= budget_ms,
        "criterion {criterion} exceeded its {budget_ms} ms budget: {} ms",
        report.runtime_ms
    );
}

#[test]
fn criterion_1_arrowing_ground_truth() {
    // K6 arrows (K3)_2, K5 does not (with verifying witness), both
    // cross-checked against full enumeration; < 1 s per decision (the
    // experiment enforces the per-decision budget itself).
    let report = run("arrowing-ground-truth", 0);
    announce(1, "arrowing ground truth on K5/K6 vs full enumeration", &report, 60_000);
    assert_eq!(report.details["k6_proper_colorings"], 0);
    assert_eq!(report.details["k5_proper_colorings"], 12);
}

#[test]
fn criterion_2_graham_folkman_certificate() {
    // K8 minus a 5-cycle is K6-free and arrows (K3)_2: f(3,6) <= 8.
    let report = run("graham-folkman", 0);
    announce(2, "8-vertex host certifies f(3,6) <= 8", &report, 60_000);
    assert_eq!(report.details["folkman"], true);
}

#[test]
fn criterion_3_dichotomy_exhaustive() {
    // all 3^15 colorings of K6 satisfy the dichotomy; < 10 min.
    let report = run("dichotomy-exhaustive", 0);
    announce(3, "exhaustive dichotomy over 3^15 colorings of K6", &report, 600_000);
    assert_eq!(report.details["neither"], 0);
    assert_eq!(report.details["colorings_checked"], 14_348_907u64);
}

#[test]
fn criterion_4_codegree_majorant_grid() {
    // exact co-degree <= closed form on the full (n, k, tau) grid; < 1 min.
    let report = run("codegree-claim-grid", 0);
    announce(4, "co-degree majorant on {5..9} x {3,4} x 4 taus", &report, 60_000);
    assert_eq!(report.details["cells_checked"], 40);
}

#[test]
fn criterion_5_chain_grid() {
    // certified chain on {3..6} x {2..4} with the Skolem bound, plus the
    // R = 6 cell pinning log2 n to 52283.4 +- 1; < 10 s.
    let report = run("chain-grid", 0);
    announce(5, "certified inequality chain over the (k, r) grid", &report, 10_000);
    let log2_n = report.details["special_log2_n"].as_f64().unwrap();
    assert!((log2_n - 52283.4).abs() <= 1.0, "log2 n = {log2_n}");
}

#[test]
fn criterion_6_fkg_monte_carlo() {
    // empirical K4-freeness of G(40, 0.1) over 10^4 trials beats the
    // exp(-C^6 n) ~ 0.078 bound with Wilson margin; < 2 min.
    let report = run("fkg-monte-carlo", 2024);
    announce(6, "clique-freeness Monte Carlo vs analytic lower bound", &report, 120_000);
    assert_eq!(report.trials, Some(10_000));
    let bound = report.details["bound"].as_f64().unwrap();
    assert!((bound - 0.078).abs() < 2e-3, "bound = {bound}");
    assert!(report.ci95.unwrap()[0] > bound);
}

#[test]
fn criterion_7_canonical_sequences() {
    // 500 seeded 2-colorings per k in {3,4} on hosts meeting the order
    // threshold: canonical sequence of length 2k-2 plus verified clique in
    // every trial; < 2 min.
    let report = run("canonical-sequences", 7);
    announce(7, "canonical-sequence property suite (zero failures)", &report, 120_000);
    assert_eq!(report.trials, Some(1000));
}

#[test]
fn criterion_8_independence_bijection() {
    // independence in H(6,3) coincides with triangle-freeness over all
    // 2^15 subsets; < 1 min.
    let report = run("independence-bijection", 0);
    announce(8, "independent sets = triangle-free graphs on K6", &report, 60_000);
    assert_eq!(report.details["mismatches"], 0);
}

#[test]
fn criterion_9_oracle_equivalence() {
    // 1000 random hosts with <= 16 edges: search verdict equals brute
    // force; clique enumeration equals the naive oracle up to 10 vertices;
    // < 5 min.
    let report = run("oracle-equivalence", 99);
    announce(9, "search and enumeration agree with brute-force oracles", &report, 300_000);
    assert_eq!(report.details["arrow_mismatches"], 0);
    assert_eq!(report.details["clique_mismatches"], 0);
}
