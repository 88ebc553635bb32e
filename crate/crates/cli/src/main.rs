use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use curveflat::centrality::{compute, rank_top, CentralityOptions, Measure};
use curveflat::clustering::clustering_report;
use curveflat::curve::{DistanceDistribution, GammaParams};
use curveflat::edgelist::{read_edge_list, write_edge_list};
use curveflat::generators::{generate, GrowthMetadata, GrowthSpec};
use curveflat::harness::{run_experiment_with_workers, write_report, write_report_to, ExperimentConfig, ReportFormat};
use curveflat::isolation::{scenario1, scenario2, IsolationOptions, ThresholdError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

/// Scale-free network generation, centrality analysis and infection-curve flattening experiments.
#[derive(Parser)]
#[command(name = "curveflat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grow a BA or HK network and write it as an edge list with a JSON sidecar.
    Generate(GenerateArgs),
    /// Report clustering or centrality metrics of an edge list.
    Analyze(AnalyzeArgs),
    /// Isolate top-ranked nodes and compare infection curves before and after.
    Isolate(IsolateArgs),
    /// Run a Monte-Carlo experiment described by a JSON config.
    Experiment(ExperimentArgs),
    /// Fit Gamma parameters to a curve CSV (distance,count[,fraction]).
    FitGamma(FitGammaArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Ba,
    Hk,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    /// Final node count.
    #[arg(long)]
    n: usize,
    /// Links added per new node.
    #[arg(long, default_value_t = 4)]
    m: usize,
    /// Preferential-attachment links per new node [default: m for ba, 1 for hk].
    #[arg(long)]
    m0: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge-list output; metadata goes to `<out>.json`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Metrics {
    Clustering,
    Centrality,
}

#[derive(Args)]
struct CentralityArgs {
    /// degree, betweenness, closeness, katz, pagerank or expected_force.
    #[arg(long, default_value = "degree")]
    measure: Measure,
    /// Katz attenuation factor.
    #[arg(long, default_value_t = 0.005)]
    kappa: f64,
    /// PageRank damping factor.
    #[arg(long, default_value_t = 0.85)]
    damping: f64,
}

impl CentralityArgs {
    fn options(&self) -> CentralityOptions {
        CentralityOptions {
            kappa: self.kappa,
            damping: self.damping,
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "clustering")]
    metrics: Metrics,
    #[command(flatten)]
    centrality: CentralityArgs,
    /// Number of top-ranked nodes to list.
    #[arg(long, default_value_t = 10)]
    top: usize,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScenarioArg {
    Fraction,
    Threshold,
}

#[derive(Args)]
struct IsolateArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[command(flatten)]
    centrality: CentralityArgs,
    #[arg(long, value_enum)]
    scenario: ScenarioArg,
    /// Fraction of nodes to isolate, or peak-ratio threshold.
    #[arg(long)]
    value: f64,
    /// Infection sources averaged per curve.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Re-rank after every isolation instead of ranking once.
    #[arg(long)]
    recompute: bool,
    #[arg(long, default_value = "report.json")]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    /// Worker threads [default: available cores].
    #[arg(long, env = "CURVEFLAT_WORKERS")]
    workers: Option<usize>,
    /// Overrides the config's master_seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Report path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

#[derive(Args)]
struct FitGammaArgs {
    #[arg(long = "in")]
    input: PathBuf,
}

/// Arguments that parsed but make no sense together.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(Usage(msg.into()).into())
}

fn emit(value: &impl Serialize, out: Option<&Path>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            writeln!(stdout, "{text}")?;
            Ok(())
        }
    }
}

fn run_generate(a: GenerateArgs) -> anyhow::Result<()> {
    let spec = match a.model {
        ModelArg::Ba => {
            if a.m0.is_some_and(|p| p != a.m) {
                return usage("--m0 must equal --m for the ba model");
            }
            GrowthSpec::ba(a.n, a.m, a.seed)
        }
        ModelArg::Hk => {
            let pa = a.m0.unwrap_or(1);
            if pa == 0 || pa >= a.m {
                return usage("hk model needs 1 <= --m0 < --m");
            }
            GrowthSpec::hk(a.n, a.m, pa, a.seed)
        }
    };
    if let Err(e) = spec.validate() {
        return usage(e.to_string());
    }
    let g = generate(&spec)?;
    write_edge_list(&g, &a.out)?;
    let mut sidecar = a.out.clone().into_os_string();
    sidecar.push(".json");
    emit(&GrowthMetadata::new(&spec, &g), Some(Path::new(&sidecar)))
}

fn run_analyze(a: AnalyzeArgs) -> anyhow::Result<()> {
    let (g, drops) = read_edge_list(&a.input)?;
    let value = match a.metrics {
        Metrics::Clustering => {
            let r = clustering_report::<f64>(&g)?;
            json!({
                "nodes": g.node_count(),
                "edges": g.edge_count(),
                "gcc1": r.gcc1,
                "gcc2": r.gcc2,
                "triads": r.triads,
                "triplets": r.triplets,
                "dropped": drops,
            })
        }
        Metrics::Centrality => {
            let scores = compute::<f64>(&g, a.centrality.measure, &a.centrality.options())?;
            let top = rank_top(&scores, a.top.min(g.active_count()))?;
            json!({
                "measure": scores.measure,
                "params": scores.params,
                "top": top.iter().map(|&i| json!({"node": i, "score": scores.scores[i]})).collect::<Vec<_>>(),
                "scores": scores.scores,
            })
        }
    };
    emit(&value, a.out.as_deref())
}

fn run_isolate(a: IsolateArgs) -> anyhow::Result<()> {
    let valid = match a.scenario {
        ScenarioArg::Fraction => a.value > 0.0 && a.value < 1.0,
        ScenarioArg::Threshold => a.value > 0.0 && a.value <= 1.0,
    };
    if !valid {
        return usage("--value must lie in (0, 1) for fraction, (0, 1] for threshold");
    }
    let (g, _) = read_edge_list(&a.input)?;
    let opts = IsolationOptions {
        centrality: a.centrality.options(),
        recompute: a.recompute,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let measure = a.centrality.measure;
    let (outcome, reached) = match a.scenario {
        ScenarioArg::Fraction => (scenario1::<f64, _>(&g, measure, a.value, a.trials, &mut rng, &opts)?, true),
        ScenarioArg::Threshold => match scenario2::<f64, _>(&g, measure, a.value, a.trials, &mut rng, &opts) {
            Ok(out) => (out, true),
            Err(ThresholdError::Unreachable(out)) => (*out, false),
            Err(ThresholdError::Failed(e)) => return Err(e.into()),
        },
    };
    let value = json!({
        "seed": a.seed,
        "source_trials": a.trials,
        "threshold_reached": reached,
        "outcome": outcome,
    });
    emit(&value, Some(&a.out))?;
    if !reached {
        bail!(
            "threshold {} not reached after {} isolations (peak ratio {:.4}); partial report written to {}",
            a.value,
            outcome.isolated_count,
            outcome.report.peak_drop,
            a.out.display()
        );
    }
    Ok(())
}

fn run_experiment(a: ExperimentArgs) -> anyhow::Result<()> {
    let mut cfg = ExperimentConfig::load(&a.config)?;
    if let Some(seed) = a.seed {
        cfg.master_seed = seed;
    }
    let workers = a.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if workers == 0 {
        return usage("--workers must be positive");
    }
    let report = run_experiment_with_workers(&cfg, workers)?;
    let format = match a.format {
        FormatArg::Json => ReportFormat::Json,
        FormatArg::Csv => ReportFormat::Csv,
    };
    match &a.out {
        Some(path) => write_report(&report, path, format)?,
        None => write_report_to(&report, io::stdout().lock(), format)?,
    }
    if report.failures > 0 {
        eprintln!("{} of {} trials recorded failures", report.failures, report.trials.len());
    }
    Ok(())
}

fn run_fit_gamma(a: FitGammaArgs) -> anyhow::Result<()> {
    let file = fs::File::open(&a.input).with_context(|| format!("opening {}", a.input.display()))?;
    let dist = DistanceDistribution::<f64>::read_csv(file)?;
    let fit: GammaParams<f64> = dist.fit_gamma()?;
    emit(&json!({"k": fit.k, "theta": fit.theta}), None)
}

/// The error chain, dropping causes already spelled out by their parent.
fn describe(e: &anyhow::Error) -> String {
    let mut text = String::new();
    for cause in e.chain() {
        let part = cause.to_string();
        if !text.contains(&part) {
            if !text.is_empty() {
                text.push_str(": ");
            }
            text.push_str(&part);
        }
    }
    text
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Generate(a) => run_generate(a),
        Command::Analyze(a) => run_analyze(a),
        Command::Isolate(a) => run_isolate(a),
        Command::Experiment(a) => run_experiment(a),
        Command::FitGamma(a) => run_fit_gamma(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {}", describe(&e));
            ExitCode::from(2)
        }
    }
}
