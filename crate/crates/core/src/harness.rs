//! Monte-Carlo experiment orchestration and report persistence.
//!
//! Trial `t` draws everything from `derive_seed(master_seed, t)`: the graph
//! grows from that seed and the source permutation for isolation comes from a
//! second derived stream shared by every measure in the trial. Trials run on a
//! rayon pool but are reported in trial order, so the report does not depend
//! on the worker count.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::centrality::{CentralityOptions, Measure, DEFAULT_DAMPING, DEFAULT_KAPPA};
use crate::clustering::clustering_report;
use crate::curve::{exhaustive_curve, GammaParams};
use crate::edgelist::read_edge_list;
use crate::error::{Error, Result};
use crate::generators::{generate, GrowthSpec};
use crate::graph::{Graph, NodeId};
use crate::isolation::{scenario1, scenario2, IsolationOptions, ScenarioOutcome, ThresholdError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Ba,
    Hk,
    File,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioKind {
    #[default]
    None,
    Fraction,
    Threshold,
}

fn default_kappa() -> f64 {
    DEFAULT_KAPPA
}

fn default_damping() -> f64 {
    DEFAULT_DAMPING
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelKind,
    #[serde(default)]
    pub n: usize,
    #[serde(default)]
    pub m: usize,
    /// Preferential-attachment links per new node; defaults to `m` (BA).
    #[serde(default)]
    pub m0_pa: Option<usize>,
    /// Edge-list path for the `file` model.
    #[serde(default)]
    pub input: Option<PathBuf>,
    #[serde(default)]
    pub measures: Vec<Measure>,
    #[serde(default)]
    pub scenario: ScenarioKind,
    #[serde(default)]
    pub value: f64,
    pub mc_trials: usize,
    pub source_trials: usize,
    pub master_seed: u64,
    #[serde(default = "default_kappa")]
    pub kappa: f64,
    #[serde(default = "default_damping")]
    pub damping: f64,
    #[serde(default)]
    pub recompute: bool,
}

impl ExperimentConfig {
    pub fn generated(model: ModelKind, n: usize, m: usize, m0_pa: usize) -> Self {
        ExperimentConfig {
            model,
            n,
            m,
            m0_pa: Some(m0_pa),
            input: None,
            measures: Vec::new(),
            scenario: ScenarioKind::None,
            value: 0.0,
            mc_trials: 1,
            source_trials: 100,
            master_seed: 0,
            kappa: DEFAULT_KAPPA,
            damping: DEFAULT_DAMPING,
            recompute: false,
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let cfg: ExperimentConfig = serde_json::from_str(&text).map_err(|source| Error::Json {
            path: path.to_path_buf(),
            source,
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.mc_trials == 0 || self.source_trials == 0 {
            return bad("mc_trials and source_trials must be positive".into());
        }
        match self.scenario {
            ScenarioKind::None => {}
            ScenarioKind::Fraction if !(self.value > 0.0 && self.value < 1.0) => {
                return bad(format!("fraction must lie in (0, 1), got {}", self.value));
            }
            ScenarioKind::Threshold if !(self.value > 0.0 && self.value <= 1.0) => {
                return bad(format!("threshold must lie in (0, 1], got {}", self.value));
            }
            _ => {}
        }
        if self.scenario != ScenarioKind::None && self.measures.is_empty() {
            return bad("a scenario needs at least one measure".into());
        }
        match self.model {
            ModelKind::File if self.input.is_none() => bad("file model needs `input`".into()),
            ModelKind::Ba if self.m0_pa.is_some_and(|p| p != self.m) => {
                bad("ba model requires m0_pa = m".into())
            }
            ModelKind::Hk if self.m0_pa.unwrap_or(self.m) >= self.m => {
                bad("hk model requires m0_pa < m".into())
            }
            _ => Ok(()),
        }
    }

    pub fn growth_spec(&self, seed: u64) -> GrowthSpec {
        GrowthSpec {
            n: self.n,
            m: self.m,
            m0_pa: self.m0_pa.unwrap_or(self.m),
            seed,
        }
    }

    fn isolation_options(&self) -> IsolationOptions {
        IsolationOptions {
            centrality: CentralityOptions {
                kappa: self.kappa,
                damping: self.damping,
            },
            recompute: self.recompute,
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent stream seed for `index` under `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index.wrapping_add(0xD1B5_4A32_D192_ED03)))
}

/// JSON has no NaN; serde_json writes it as `null`, so read `null` back as NaN.
fn nan_from_null<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureOutcome {
    pub measure: Measure,
    pub gamma_before: Option<GammaParams<f64>>,
    pub gamma_after: Option<GammaParams<f64>>,
    #[serde(deserialize_with = "nan_from_null")]
    pub peak_before: f64,
    #[serde(deserialize_with = "nan_from_null")]
    pub peak_after: f64,
    #[serde(deserialize_with = "nan_from_null")]
    pub peak_drop: f64,
    #[serde(deserialize_with = "nan_from_null")]
    pub mean_distance_before: f64,
    #[serde(deserialize_with = "nan_from_null")]
    pub mean_distance_after: f64,
    pub isolated_count: usize,
    pub targets: Vec<NodeId>,
    pub skipped: Vec<NodeId>,
    pub curve_before: Vec<f64>,
    pub curve_after: Vec<f64>,
    /// Set when the scenario did not complete (for example, threshold unreachable).
    pub error: Option<String>,
}

impl MeasureOutcome {
    fn from_outcome(measure: Measure, out: &ScenarioOutcome<f64>, error: Option<String>) -> Self {
        let r = &out.report;
        MeasureOutcome {
            measure,
            gamma_before: r.gamma_before,
            gamma_after: r.gamma_after,
            peak_before: r.peak_before,
            peak_after: r.peak_after,
            peak_drop: r.peak_drop,
            mean_distance_before: r.mean_distance_before,
            mean_distance_after: r.mean_distance_after,
            isolated_count: out.isolated_count,
            targets: out.plan.targets.clone(),
            skipped: out.plan.skipped.clone(),
            curve_before: r.curve_before.counts.clone(),
            curve_after: r.curve_after.counts.clone(),
            error,
        }
    }

    fn failed(measure: Measure, error: String) -> Self {
        MeasureOutcome {
            measure,
            gamma_before: None,
            gamma_after: None,
            peak_before: f64::NAN,
            peak_after: f64::NAN,
            peak_drop: f64::NAN,
            mean_distance_before: f64::NAN,
            mean_distance_after: f64::NAN,
            isolated_count: 0,
            targets: Vec::new(),
            skipped: Vec::new(),
            curve_before: Vec::new(),
            curve_after: Vec::new(),
            error: Some(error),
        }
    }

    pub fn succeeded(&self) -> bool {
        self.error.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub nodes: usize,
    pub edges: usize,
    #[serde(deserialize_with = "nan_from_null")]
    pub gcc1: f64,
    #[serde(deserialize_with = "nan_from_null")]
    pub gcc2: f64,
    pub diameter: Option<usize>,
    /// Mean shell sizes over every source (the all-pairs distance distribution).
    pub curve: Vec<f64>,
    pub gamma: Option<GammaParams<f64>>,
    #[serde(deserialize_with = "nan_from_null")]
    pub peak: f64,
    #[serde(deserialize_with = "nan_from_null")]
    pub mean_distance: f64,
    pub outcomes: Vec<MeasureOutcome>,
    pub error: Option<String>,
}

impl TrialRecord {
    fn failed(trial: usize, seed: u64, error: String) -> Self {
        TrialRecord {
            trial,
            seed,
            nodes: 0,
            edges: 0,
            gcc1: f64::NAN,
            gcc2: f64::NAN,
            diameter: None,
            curve: Vec::new(),
            gamma: None,
            peak: f64::NAN,
            mean_distance: f64::NAN,
            outcomes: Vec::new(),
            error: Some(error),
        }
    }

    pub fn failed_any(&self) -> bool {
        self.error.is_some() || self.outcomes.iter().any(|o| !o.succeeded())
    }

    pub fn outcome(&self, measure: Measure) -> Option<&MeasureOutcome> {
        self.outcomes.iter().find(|o| o.measure == measure)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    /// Sample standard deviation (0 for a single value).
    pub std: f64,
    pub count: usize,
}

impl Summary {
    pub fn of(values: &[f64]) -> Option<Summary> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std = if values.len() > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Some(Summary {
            mean,
            std,
            count: values.len(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub trials: Vec<TrialRecord>,
    /// Keyed by column (`gcc2`, `k`, ...) or `measure.column` for scenario outputs.
    pub aggregate: BTreeMap<String, Summary>,
    pub failures: usize,
    /// Seconds since the Unix epoch; the only field that varies between identical runs.
    pub timestamp: u64,
}

impl ExperimentReport {
    /// Per-trial values of a column, skipping failed or undefined entries.
    pub fn column(&self, key: &str) -> Vec<f64> {
        let (measure, col) = match key.split_once('.') {
            Some((m, c)) => (m.parse::<Measure>().ok(), c),
            None => (None, key),
        };
        self.trials
            .iter()
            .filter_map(|t| match measure {
                None => trial_value(t, col),
                Some(m) => t.outcome(m).filter(|o| o.succeeded()).and_then(|o| outcome_value(o, col)),
            })
            .collect()
    }

    fn summarize(&mut self) {
        let mut keys: Vec<String> = ["gcc1", "gcc2", "diameter", "k", "theta", "peak", "mean_distance"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        for m in &self.config.measures {
            if self.config.scenario != ScenarioKind::None {
                for col in OUTCOME_COLUMNS {
                    keys.push(format!("{m}.{col}"));
                }
            }
        }
        self.aggregate = keys
            .into_iter()
            .filter_map(|k| Summary::of(&self.column(&k)).map(|s| (k, s)))
            .collect();
    }
}

const OUTCOME_COLUMNS: [&str; 7] = [
    "k_before",
    "theta_before",
    "k_after",
    "theta_after",
    "peak_drop",
    "isolated_count",
    "mean_distance_change",
];

fn trial_value(t: &TrialRecord, col: &str) -> Option<f64> {
    if t.error.is_some() {
        return None;
    }
    let v = match col {
        "gcc1" => t.gcc1,
        "gcc2" => t.gcc2,
        "diameter" => t.diameter? as f64,
        "k" => t.gamma?.k,
        "theta" => t.gamma?.theta,
        "peak" => t.peak,
        "mean_distance" => t.mean_distance,
        _ => return None,
    };
    Some(v)
}

fn outcome_value(o: &MeasureOutcome, col: &str) -> Option<f64> {
    let v = match col {
        "k_before" => o.gamma_before?.k,
        "theta_before" => o.gamma_before?.theta,
        "k_after" => o.gamma_after?.k,
        "theta_after" => o.gamma_after?.theta,
        "peak_drop" => o.peak_drop,
        "isolated_count" => o.isolated_count as f64,
        "mean_distance_change" => o.mean_distance_after - o.mean_distance_before,
        _ => return None,
    };
    Some(v)
}

fn load_base(cfg: &ExperimentConfig) -> Result<Option<Graph>> {
    match cfg.model {
        ModelKind::File => {
            let path = cfg.input.as_ref().expect("validated");
            Ok(Some(read_edge_list(path)?.0))
        }
        _ => Ok(None),
    }
}

fn run_trial(cfg: &ExperimentConfig, base: Option<&Graph>, trial: usize) -> TrialRecord {
    let seed = derive_seed(cfg.master_seed, trial as u64);
    match trial_inner(cfg, base, trial, seed) {
        Ok(rec) => rec,
        Err(e) => TrialRecord::failed(trial, seed, e.to_string()),
    }
}

fn trial_inner(cfg: &ExperimentConfig, base: Option<&Graph>, trial: usize, seed: u64) -> Result<TrialRecord> {
    let generated;
    let g = match base {
        Some(g) => g,
        None => {
            generated = generate(&cfg.growth_spec(seed))?;
            &generated
        }
    };
    let clustering = clustering_report::<f64>(g)?;
    let diameter = g.diameter().ok();
    let curve = exhaustive_curve::<f64>(g)?;
    let opts = cfg.isolation_options();
    let source_seed = derive_seed(seed, 1);
    let outcomes = match cfg.scenario {
        ScenarioKind::None => Vec::new(),
        scenario => cfg
            .measures
            .iter()
            .map(|&m| {
                let mut rng = ChaCha8Rng::seed_from_u64(source_seed);
                match scenario {
                    ScenarioKind::Fraction => {
                        match scenario1::<f64, _>(g, m, cfg.value, cfg.source_trials, &mut rng, &opts) {
                            Ok(out) => MeasureOutcome::from_outcome(m, &out, None),
                            Err(e) => MeasureOutcome::failed(m, e.to_string()),
                        }
                    }
                    _ => match scenario2::<f64, _>(g, m, cfg.value, cfg.source_trials, &mut rng, &opts) {
                        Ok(out) => MeasureOutcome::from_outcome(m, &out, None),
                        Err(ThresholdError::Unreachable(partial)) => {
                            let msg = ThresholdError::Unreachable(partial.clone()).to_string();
                            MeasureOutcome::from_outcome(m, &partial, Some(msg))
                        }
                        Err(ThresholdError::Failed(e)) => MeasureOutcome::failed(m, e.to_string()),
                    },
                }
            })
            .collect(),
    };
    Ok(TrialRecord {
        trial,
        seed,
        nodes: g.node_count(),
        edges: g.edge_count(),
        gcc1: clustering.gcc1,
        gcc2: clustering.gcc2,
        diameter,
        gamma: curve.fit_gamma().ok(),
        peak: curve.peak().1,
        mean_distance: curve.mean_distance(),
        curve: curve.counts,
        outcomes,
        error: None,
    })
}

/// Runs every trial on the current rayon pool.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let base = load_base(cfg)?;
    let trials: Vec<TrialRecord> = (0..cfg.mc_trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, base.as_ref(), t))
        .collect();
    let failures = trials.iter().filter(|t| t.failed_any()).count();
    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs());
    let mut report = ExperimentReport {
        config: cfg.clone(),
        trials,
        aggregate: BTreeMap::new(),
        failures,
        timestamp,
    };
    report.summarize();
    Ok(report)
}

/// Runs on a dedicated pool of `workers` threads (1 = serial).
pub fn run_experiment_with_workers(cfg: &ExperimentConfig, workers: usize) -> Result<ExperimentReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    pool.install(|| run_experiment(cfg))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

pub const CSV_COLUMNS: [&str; 12] = [
    "trial",
    "seed",
    "gcc1",
    "gcc2",
    "diameter",
    "k_before",
    "theta_before",
    "k_after",
    "theta_after",
    "peak_drop",
    "isolated_count",
    "measure",
];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Flat rows: one per trial, or one per trial and measure when a scenario ran.
pub fn csv_rows(rep: &ExperimentReport) -> Vec<[String; 12]> {
    let mut rows = Vec::new();
    for t in &rep.trials {
        let lead = |out: &mut [String; 12]| {
            out[0] = t.trial.to_string();
            out[1] = t.seed.to_string();
            if t.error.is_none() {
                out[2] = t.gcc1.to_string();
                out[3] = t.gcc2.to_string();
                out[4] = opt(t.diameter);
            }
        };
        if t.outcomes.is_empty() {
            let mut row: [String; 12] = Default::default();
            lead(&mut row);
            row[5] = opt(t.gamma.map(|g| g.k));
            row[6] = opt(t.gamma.map(|g| g.theta));
            rows.push(row);
        }
        for o in &t.outcomes {
            let mut row: [String; 12] = Default::default();
            lead(&mut row);
            row[5] = opt(o.gamma_before.map(|g| g.k));
            row[6] = opt(o.gamma_before.map(|g| g.theta));
            if o.succeeded() {
                row[7] = opt(o.gamma_after.map(|g| g.k));
                row[8] = opt(o.gamma_after.map(|g| g.theta));
                row[9] = o.peak_drop.to_string();
                row[10] = o.isolated_count.to_string();
            }
            row[11] = o.measure.to_string();
            rows.push(row);
        }
    }
    rows
}

pub fn write_report_to<W: Write>(rep: &ExperimentReport, out: W, format: ReportFormat) -> Result<()> {
    let ctx = PathBuf::from("<writer>");
    match format {
        ReportFormat::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, rep).map_err(|source| Error::Json {
                path: ctx.clone(),
                source,
            })?;
            out.write_all(b"\n").map_err(|e| Error::io(&ctx, e))
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let wrap = |source| Error::Csv {
                path: ctx.clone(),
                source,
            };
            w.write_record(CSV_COLUMNS).map_err(wrap)?;
            for row in csv_rows(rep) {
                w.write_record(&row).map_err(wrap)?;
            }
            w.flush().map_err(|e| Error::io(&ctx, e))
        }
    }
}

pub fn write_report(rep: &ExperimentReport, path: impl AsRef<Path>, format: ReportFormat) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_report_to(rep, BufWriter::new(file), format).map_err(|e| match e {
        Error::Io { source, .. } => Error::io(path, source),
        Error::Json { source, .. } => Error::Json {
            path: path.to_path_buf(),
            source,
        },
        Error::Csv { source, .. } => Error::Csv {
            path: path.to_path_buf(),
            source,
        },
        other => other,
    })
}

pub fn read_report(path: impl AsRef<Path>) -> Result<ExperimentReport> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}
