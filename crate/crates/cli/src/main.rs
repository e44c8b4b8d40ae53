//! `folkman`: arrowing certificates, Folkman-property bundles, certified
//! bound chains, co-degree checks, dichotomy sweeps, canonical sequences,
//! random-graph sampling, and named experiments.
//!
//! Exit codes: 0 = positive verdict produced, 1 = negative verdict
//! (non-arrowing, CertifiedFalse, violation found), 2 = usage or input
//! error, 3 = indeterminate (budget exhausted or overlapping enclosures).

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use folkman_cli::experiments;
use folkman_cli::io::{emit_report, load_coloring, load_graph};
use folkman_cli::manifest::RunManifest;
use folkman_cli::report::{
    exit_code_for_arrow, exit_code_for_verdict, verify_any, ArrowDoc, FolkmanDoc,
};
use folkman_core::arrow::{is_folkman, strategy_by_name, Budget};
use folkman_core::bounds::{
    check_chain, derive_params, ramsey_lower_product, ramsey_upper_skolem, ChainReport,
};
use folkman_core::density::{canonical_sequence, mono_clique_from_canonical, Fraction};
use folkman_core::dichotomy::{dichotomy_exhaustive, dichotomy_sampled};
use folkman_core::gnp::sample_gnp;
use folkman_core::hypergraph::{
    check_claim_codegree_majorant, codegree_function, codegree_majorant, CliqueHypergraph, CodegreeForm,
};
use folkman_core::interval::{Interval, LogInterval, Verdict};
use folkman_core::graph6;

/// Environment variable holding the default node budget for searches.
const BUDGET_ENV: &str = "FOLKMAN_BUDGET";

#[derive(Parser)]
#[command(
    name = "folkman",
    version,
    about = "Ramsey arrowing certificates and certified Folkman-number bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutArgs {
    /// Write the JSON report here as well as to stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Manifest path (default: `<out>.manifest.json` or `folkman-manifest.json`)
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the host arrows (K_k)_r and emit a certificate
    Arrow {
        /// Host graph file (graph6 or edge-list text)
        #[arg(long)]
        graph: PathBuf,
        #[arg(short, long)]
        k: u32,
        #[arg(short, long)]
        r: u32,
        /// Search strategy: det | par
        #[arg(long, default_value = "det")]
        mode: String,
        /// Node budget (default: FOLKMAN_BUDGET or unlimited)
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check the Folkman property: arrows (K_k)_r and contains no K_l
    Folkman {
        #[arg(long)]
        graph: PathBuf,
        #[arg(short, long)]
        k: u32,
        #[arg(short, long)]
        r: u32,
        #[arg(short, long)]
        l: u32,
        #[arg(long, default_value = "det")]
        mode: String,
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Certify the bound chain at one (k, r) cell or over a grid
    Bounds {
        /// Clique size, a value or inclusive range like 3..6
        #[arg(long)]
        k: String,
        /// Color count, a value or inclusive range like 2..4
        #[arg(long)]
        r: String,
        /// Ramsey bound: skolem | value:<x> | product (with --base entries)
        #[arg(long = "R", default_value = "skolem")]
        ramsey: String,
        /// Base values for the product rule, as colors=value pairs
        #[arg(long)]
        base: Vec<String>,
        /// Override the order as log2(n); default is the derived threshold
        #[arg(long)]
        log2n: Option<f64>,
        /// Iterate over the full k x r grid
        #[arg(long)]
        grid: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Co-degree function values and the closed-form majorant claim
    Codegree {
        #[arg(long)]
        n: u64,
        #[arg(short, long)]
        k: u64,
        #[arg(long)]
        tau: f64,
        /// Only evaluate the exact co-degree function
        #[arg(long)]
        exact: bool,
        /// Only evaluate the closed-form majorant
        #[arg(long = "closed-form")]
        closed_form: bool,
        /// Drop the pair powers from the denominator (bounding form)
        #[arg(long = "dropped-pair-powers")]
        dropped_pair_powers: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Dichotomy sweep over (r+1)-colorings of K_n
    Dichotomy {
        #[arg(long)]
        n: u64,
        #[arg(short, long)]
        k: u64,
        #[arg(short, long)]
        r: u64,
        #[arg(long = "R")]
        ramsey: u64,
        /// Check every coloring (capped at 3^15)
        #[arg(long)]
        exhaustive: bool,
        /// Check this many seeded random colorings instead
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Greedy canonical sequence and its pigeonhole clique
    Canonical {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        /// Target sequence length
        #[arg(long)]
        ell: usize,
        /// Degree fraction d, as a/b or a decimal
        #[arg(long)]
        d: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sample G(n, p) and print graph6 lines
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        /// Number of graphs; graph i uses seed + i
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run a named experiment (see --list)
    Experiment {
        name: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// List registered experiments
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Re-check a certificate JSON without re-running any search
    Verify {
        certificate: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn budget_from(cli_budget: Option<u64>) -> Budget {
    let nodes = cli_budget.or_else(|| {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
    });
    Budget {
        max_nodes: nodes,
        max_wall: None,
    }
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Arrow {
            graph,
            k,
            r,
            mode,
            budget,
            out,
        } => {
            if k < 2 || !(1..=16).contains(&r) {
                bail!("need k >= 2 and 1 <= r <= 16");
            }
            let g = load_graph(&graph)?;
            let strategy = strategy_by_name(&mode)
                .ok_or_else(|| anyhow!("unknown mode {mode:?} (expected det or par)"))?;
            let cert = strategy.search(&g, k, r, budget_from(budget));
            let doc = ArrowDoc::new(&g, &cert)?;
            emit_report(&doc, out.out.as_deref())?;
            let mut manifest = RunManifest::new("arrow");
            manifest
                .param("k", k)
                .param("r", r)
                .param("mode", &mode)
                .param("budget", budget);
            manifest.input(&graph)?;
            finish_manifest(manifest, &out)?;
            Ok(exit_code_for_arrow(cert.verdict))
        }

        Command::Folkman {
            graph,
            k,
            r,
            l,
            mode,
            budget,
            out,
        } => {
            if k < 2 || !(1..=16).contains(&r) {
                bail!("need k >= 2 and 1 <= r <= 16");
            }
            if l < k + 1 {
                bail!("need l >= k + 1");
            }
            let g = load_graph(&graph)?;
            let strategy = strategy_by_name(&mode)
                .ok_or_else(|| anyhow!("unknown mode {mode:?} (expected det or par)"))?;
            let mode_enum = match strategy.name() {
                "par" => folkman_core::SearchMode::Parallel,
                _ => folkman_core::SearchMode::Deterministic,
            };
            let bundle = is_folkman(&g, k, r, l, mode_enum, budget_from(budget));
            let doc = FolkmanDoc::new(&g, &bundle)?;
            emit_report(&doc, out.out.as_deref())?;
            let mut manifest = RunManifest::new("folkman");
            manifest
                .param("k", k)
                .param("r", r)
                .param("l", l)
                .param("mode", &mode)
                .param("budget", budget);
            manifest.input(&graph)?;
            finish_manifest(manifest, &out)?;
            Ok(match bundle.folkman {
                Some(true) => 0,
                Some(false) => 1,
                None => 3,
            })
        }

        Command::Bounds {
            k,
            r,
            ramsey,
            base,
            log2n,
            grid,
            out,
        } => {
            let ks = parse_range(&k)?;
            let rs = parse_range(&r)?;
            if !grid && (ks.len() > 1 || rs.len() > 1) {
                bail!("ranges require --grid");
            }
            let base_map = parse_base(&base)?;
            let mut reports: Vec<ChainReport> = Vec::new();
            for &kk in &ks {
                for &rr in &rs {
                    let rb = ramsey_bound(&ramsey, kk, rr, &base_map)?;
                    let n = log2n.map(|x| LogInterval::from_log2(Interval::point(x)));
                    let ps = derive_params(kk, rr, rb, n)?;
                    reports.push(check_chain(&ps));
                }
            }
            if reports.len() == 1 {
                emit_report(&reports[0], out.out.as_deref())?;
            } else {
                emit_report(&reports, out.out.as_deref())?;
            }
            let mut manifest = RunManifest::new("bounds");
            manifest
                .param("k", &k)
                .param("r", &r)
                .param("R", &ramsey)
                .param("base", &base)
                .param("log2n", log2n)
                .param("grid", grid);
            finish_manifest(manifest, &out)?;
            let verdict = if reports.iter().any(ChainReport::any_certified_false) {
                Verdict::CertifiedFalse
            } else if reports.iter().all(ChainReport::all_certified_true) {
                Verdict::CertifiedTrue
            } else {
                Verdict::Indeterminate
            };
            Ok(exit_code_for_verdict(verdict))
        }

        Command::Codegree {
            n,
            k,
            tau,
            exact,
            closed_form,
            dropped_pair_powers,
            out,
        } => {
            let tau_iv = LogInterval::from_f64(tau).context("tau must be positive")?;
            let both = exact == closed_form; // neither flag or both: evaluate both sides
            let form = if dropped_pair_powers {
                CodegreeForm::DroppedPairPowers
            } else {
                CodegreeForm::Exact
            };
            let mut exact_log2 = None;
            let mut closed_log2 = None;
            let mut claim = None;
            let mut margin = None;
            if both || exact {
                let ch = CliqueHypergraph::build(n, k)?;
                let v = codegree_function(ch.hypergraph(), &tau_iv, form)?;
                exact_log2 = Some([v.lo(), v.hi()]);
            }
            if both || closed_form {
                let v = codegree_majorant(&LogInterval::from_u64(n), k, &tau_iv)?;
                closed_log2 = Some([v.lo(), v.hi()]);
            }
            if both {
                let cmp = check_claim_codegree_majorant(n, k, &tau_iv)?;
                claim = Some(cmp.holds);
                margin = Some(cmp.margin_log2);
            }
            let doc = json!({
                "n": n, "k": k, "tau": tau,
                "form": if dropped_pair_powers { "dropped-pair-powers" } else { "exact" },
                "exact_log2": exact_log2,
                "closed_form_log2": closed_log2,
                "claim_holds": claim,
                "margin": margin,
            });
            emit_report(&doc, out.out.as_deref())?;
            let mut manifest = RunManifest::new("codegree");
            manifest
                .param("n", n)
                .param("k", k)
                .param("tau", tau)
                .param("exact", exact)
                .param("closed_form", closed_form)
                .param("dropped_pair_powers", dropped_pair_powers);
            finish_manifest(manifest, &out)?;
            Ok(claim.map_or(0, exit_code_for_verdict))
        }

        Command::Dichotomy {
            n,
            k,
            r,
            ramsey,
            exhaustive,
            samples,
            seed,
            out,
        } => {
            let sweep = if exhaustive {
                dichotomy_exhaustive(n, k, r, ramsey)?
            } else {
                let trials = samples.unwrap_or(10_000);
                dichotomy_sampled(n, k, r, ramsey, trials, seed)?
            };
            emit_report(&sweep, out.out.as_deref())?;
            let mut manifest = RunManifest::new("dichotomy");
            manifest
                .param("n", n)
                .param("k", k)
                .param("r", r)
                .param("R", ramsey)
                .param("exhaustive", exhaustive)
                .param("samples", samples);
            manifest.seed = Some(seed);
            finish_manifest(manifest, &out)?;
            Ok(if sweep.holds() { 0 } else { 1 })
        }

        Command::Canonical {
            graph,
            coloring,
            ell,
            d,
            out,
        } => {
            let g = load_graph(&graph)?;
            let c = load_coloring(&coloring, g.edge_count())?;
            let d = Fraction::parse(&d)?;
            let run = canonical_sequence(&g, &c, ell, d)?;
            let mono = match (&run.sequence, ell >= 4 && ell % 2 == 0) {
                (Some(seq), true) => {
                    let k = ell / 2 + 1;
                    mono_clique_from_canonical(&g, &c, seq, k).ok()
                }
                _ => None,
            };
            let doc = json!({
                "ell": ell,
                "d": d.to_string(),
                "sequence": run.sequence,
                "stuck_at": run.stuck_at,
                "levels": run.levels,
                "mono_clique": mono,
            });
            emit_report(&doc, out.out.as_deref())?;
            let mut manifest = RunManifest::new("canonical");
            manifest.param("ell", ell).param("d", d.to_string());
            manifest.input(&graph)?;
            manifest.input(&coloring)?;
            finish_manifest(manifest, &out)?;
            Ok(if run.sequence.is_some() { 0 } else { 1 })
        }

        Command::Sample {
            n,
            p,
            seed,
            count,
            out,
        } => {
            let mut lines = String::new();
            for i in 0..count {
                let g = sample_gnp(n, p, seed.wrapping_add(i))?;
                lines.push_str(&graph6::encode(&g)?);
                lines.push('\n');
            }
            print!("{lines}");
            if let Some(path) = &out.out {
                std::fs::write(path, &lines)
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            let mut manifest = RunManifest::new("sample");
            manifest.param("n", n).param("p", p).param("count", count);
            manifest.seed = Some(seed);
            finish_manifest(manifest, &out)?;
            Ok(0)
        }

        Command::Experiment {
            name,
            seed,
            list,
            out,
        } => {
            if list || name.is_none() {
                for e in experiments::registry() {
                    println!("{:24} {}", e.name(), e.summary());
                }
                return Ok(0);
            }
            let name = name.unwrap();
            let exp = experiments::find(&name).ok_or_else(|| {
                anyhow!("unknown experiment {name:?}; run `folkman experiment --list`")
            })?;
            let report = exp.run(seed)?;
            emit_report(&report, out.out.as_deref())?;
            let mut manifest = RunManifest::new("experiment");
            manifest.param("name", &name);
            manifest.seed = Some(seed);
            finish_manifest(manifest, &out)?;
            Ok(if report.passed { 0 } else { 1 })
        }

        Command::Verify { certificate, out } => {
            let text = std::fs::read_to_string(&certificate)
                .with_context(|| format!("cannot read {}", certificate.display()))?;
            match verify_any(&text) {
                Ok(msg) => {
                    println!("OK: {msg}");
                    let mut manifest = RunManifest::new("verify");
                    manifest.input(&certificate)?;
                    finish_manifest(manifest, &out)?;
                    Ok(0)
                }
                Err(err) => {
                    println!("FAILED: {err:#}");
                    Ok(1)
                }
            }
        }
    }
}

fn finish_manifest(manifest: RunManifest, out: &OutArgs) -> Result<()> {
    let mut manifest = manifest;
    if let Some(o) = &out.out {
        manifest.output(o);
    }
    manifest.write(out.manifest.as_deref(), out.out.as_deref())?;
    Ok(())
}

/// Parses `5` or an inclusive range `3..6` / `3..=6`.
fn parse_range(text: &str) -> Result<Vec<u64>> {
    if let Some((a, b)) = text.split_once("..") {
        let a: u64 = a.trim().parse().context("bad range start")?;
        let b: u64 = b
            .trim()
            .trim_start_matches('=')
            .parse()
            .context("bad range end")?;
        if a > b {
            bail!("empty range {text}");
        }
        return Ok((a..=b).collect());
    }
    Ok(vec![text.trim().parse().context("bad integer")?])
}

fn parse_base(entries: &[String]) -> Result<BTreeMap<u64, u64>> {
    let mut map = BTreeMap::new();
    for e in entries {
        let (colors, value) = e
            .split_once('=')
            .ok_or_else(|| anyhow!("base entries look like colors=value, got {e:?}"))?;
        map.insert(colors.trim().parse()?, value.trim().parse()?);
    }
    Ok(map)
}

fn ramsey_bound(
    source: &str,
    k: u64,
    r: u64,
    base: &BTreeMap<u64, u64>,
) -> Result<LogInterval> {
    if source == "skolem" {
        return Ok(ramsey_upper_skolem(k, r));
    }
    if source == "product" {
        return Ok(ramsey_lower_product(k, r, base)?);
    }
    if let Some(v) = source.strip_prefix("value:") {
        if let Ok(i) = v.parse::<u64>() {
            return Ok(LogInterval::from_u64(i));
        }
        let x: f64 = v.parse().context("bad value for --R")?;
        return Ok(LogInterval::from_f64(x)?);
    }
    bail!("--R must be skolem, product, or value:<x>, got {source:?}")
}
