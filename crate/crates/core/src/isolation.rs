//! Targeted isolation experiments.
//!
//! Nodes are ranked once on the intact graph (unless `recompute` is set) and
//! isolated in rank order. A candidate whose isolation would split the active
//! subgraph is skipped and the next-ranked node takes its place, so the graph
//! stays connected after every step.
//!
//! Before/after curves are averaged over the same sources. Sources come from a
//! random permutation of all nodes: the first `trials` nodes still active after
//! isolation. Peaks are compared on mean shell sizes, not fractions, so a
//! shrinking active population counts toward flattening.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::centrality::{compute, CentralityOptions, Measure};
use crate::curve::{add_shells, mean_of_sums, summed_shells, DistanceDistribution, GammaParams};
use crate::error::{Error, Result};
use crate::graph::{BfsScratch, Graph, NodeId};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum Governing {
    Fraction(f64),
    Threshold(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsolationPlan {
    pub measure: Measure,
    /// Isolated nodes in the order they were cut.
    pub targets: Vec<NodeId>,
    /// Higher-ranked nodes passed over because isolating them would disconnect the graph.
    pub skipped: Vec<NodeId>,
    pub fraction_or_threshold: Governing,
}

impl IsolationPlan {
    /// Applies the plan to a copy of `g`.
    pub fn execute(&self, g: &Graph) -> Result<Graph> {
        let mut out = g.clone();
        for &t in &self.targets {
            out.isolate_node(t)?;
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlatteningReport<T> {
    pub curve_before: DistanceDistribution<T>,
    pub curve_after: DistanceDistribution<T>,
    /// `None` when the curve is too narrow to fit.
    pub gamma_before: Option<GammaParams<T>>,
    pub gamma_after: Option<GammaParams<T>>,
    pub peak_before: T,
    pub peak_after: T,
    /// `peak_after / peak_before`.
    pub peak_drop: T,
    pub mean_distance_before: T,
    pub mean_distance_after: T,
    pub mean_distance_change: T,
}

impl<T: Scalar> FlatteningReport<T> {
    fn new(before: DistanceDistribution<T>, after: DistanceDistribution<T>) -> Self {
        let peak_before = before.peak().1;
        let peak_after = after.peak().1;
        let mean_before = before.mean_distance();
        let mean_after = after.mean_distance();
        FlatteningReport {
            gamma_before: before.fit_gamma().ok(),
            gamma_after: after.fit_gamma().ok(),
            curve_before: before,
            curve_after: after,
            peak_before,
            peak_after,
            peak_drop: peak_after / peak_before,
            mean_distance_before: mean_before,
            mean_distance_after: mean_after,
            mean_distance_change: mean_after - mean_before,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioOutcome<T> {
    pub plan: IsolationPlan,
    pub report: FlatteningReport<T>,
    pub isolated_count: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct IsolationOptions {
    pub centrality: CentralityOptions,
    /// Re-rank on the current graph after every isolation.
    pub recompute: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum ThresholdError<T: Scalar> {
    #[error("threshold unreachable: peak ratio {:.4} after {} isolations", .0.report.peak_drop, .0.isolated_count)]
    Unreachable(Box<ScenarioOutcome<T>>),
    #[error(transparent)]
    Failed(#[from] Error),
}

/// Picks isolation targets one at a time under the connectivity guard.
struct Targeter<'a> {
    work: Graph,
    measure: Measure,
    opts: &'a IsolationOptions,
    ranking: Vec<NodeId>,
    cursor: usize,
    targets: Vec<NodeId>,
    skipped: Vec<NodeId>,
}

impl<'a> Targeter<'a> {
    fn new(g: &Graph, measure: Measure, opts: &'a IsolationOptions) -> Result<Self> {
        let ranking = compute::<f64>(g, measure, &opts.centrality)?.ranking();
        Ok(Targeter {
            work: g.clone(),
            measure,
            opts,
            ranking,
            cursor: 0,
            targets: Vec::new(),
            skipped: Vec::new(),
        })
    }

    /// Isolates the next admissible node; `false` once candidates run out.
    fn step(&mut self) -> Result<bool> {
        while self.cursor < self.ranking.len() {
            let cand = self.ranking[self.cursor];
            self.cursor += 1;
            if !self.work.is_active(cand) || self.skipped.contains(&cand) {
                continue;
            }
            if self.work.active_count() > 1 && self.work.stays_connected_without(cand) {
                self.work.isolate_node(cand)?;
                self.targets.push(cand);
                if self.opts.recompute {
                    self.ranking =
                        compute::<f64>(&self.work, self.measure, &self.opts.centrality)?.ranking();
                    self.cursor = 0;
                }
                return Ok(true);
            }
            self.skipped.push(cand);
        }
        Ok(false)
    }

    fn plan(&self, governing: Governing) -> IsolationPlan {
        IsolationPlan {
            measure: self.measure,
            targets: self.targets.clone(),
            skipped: self.skipped.clone(),
            fraction_or_threshold: governing,
        }
    }
}

/// Source protocol shared by before/after curves, with intact-graph shells cached.
struct Sources<'a> {
    intact: &'a Graph,
    order: Vec<NodeId>,
    trials: usize,
    cache: Vec<Option<Vec<usize>>>,
    scratch: BfsScratch,
}

impl<'a> Sources<'a> {
    fn new<R: Rng + ?Sized>(intact: &'a Graph, trials: usize, rng: &mut R) -> Self {
        let mut order: Vec<NodeId> = (0..intact.node_count()).collect();
        order.shuffle(rng);
        Sources {
            intact,
            order,
            trials,
            cache: vec![None; intact.node_count()],
            scratch: BfsScratch::new(intact.node_count()),
        }
    }

    fn pick(&self, state: &Graph) -> Vec<NodeId> {
        let mut picked: Vec<NodeId> = self
            .order
            .iter()
            .copied()
            .filter(|&v| state.is_active(v) && self.intact.is_active(v))
            .take(self.trials)
            .collect();
        picked.sort_unstable();
        picked
    }

    fn before<T: Scalar>(&mut self, sources: &[NodeId]) -> DistanceDistribution<T> {
        let mut sums = Vec::new();
        for &s in sources {
            if self.cache[s].is_none() {
                self.cache[s] = Some(self.scratch.shells(self.intact, s, None));
            }
            add_shells(&mut sums, self.cache[s].as_ref().expect("cached"));
        }
        mean_of_sums(&sums, sources.len(), self.intact.active_count())
    }

    fn compare<T: Scalar>(&mut self, state: &Graph) -> FlatteningReport<T> {
        let sources = self.pick(state);
        let before = self.before(&sources);
        let after = mean_of_sums(&summed_shells(state, &sources), sources.len(), state.active_count());
        FlatteningReport::new(before, after)
    }
}

fn check_intact(g: &Graph, trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if g.active_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected {
            components: g.connected_components().len(),
        });
    }
    Ok(())
}

/// Isolates the top `floor(fraction * n)` ranked nodes and compares curves.
pub fn scenario1<T: Scalar, R: Rng + ?Sized>(
    g: &Graph,
    measure: Measure,
    fraction: f64,
    trials: usize,
    rng: &mut R,
    opts: &IsolationOptions,
) -> Result<ScenarioOutcome<T>> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "fraction must lie in (0, 1), got {fraction}"
        )));
    }
    let n = g.active_count();
    let count = (fraction * n as f64).floor() as usize;
    isolate_count(g, measure, count, Governing::Fraction(fraction), trials, rng, opts)
}

/// Isolates exactly `count` ranked nodes (subject to the connectivity guard).
pub fn isolate_count<T: Scalar, R: Rng + ?Sized>(
    g: &Graph,
    measure: Measure,
    count: usize,
    governing: Governing,
    trials: usize,
    rng: &mut R,
    opts: &IsolationOptions,
) -> Result<ScenarioOutcome<T>> {
    check_intact(g, trials)?;
    let n = g.active_count();
    if count + 1 >= n {
        return Err(Error::WouldEmptyGraph {
            requested: count,
            nodes: n,
        });
    }
    let mut sources = Sources::new(g, trials, rng);
    let mut targeter = Targeter::new(g, measure, opts)?;
    while targeter.targets.len() < count {
        if !targeter.step()? {
            return Err(Error::ConnectivityExhausted {
                isolated: targeter.targets.len(),
                requested: count,
            });
        }
    }
    let report = sources.compare(&targeter.work);
    Ok(ScenarioOutcome {
        plan: targeter.plan(governing),
        report,
        isolated_count: count,
    })
}

/// Isolates ranked nodes one at a time until the after-curve peak, relative
/// to the before-curve peak on the same sources, is at most `threshold`.
/// Gives up after `floor(n / 2)` isolations or when candidates run out.
pub fn scenario2<T: Scalar, R: Rng + ?Sized>(
    g: &Graph,
    measure: Measure,
    threshold: f64,
    trials: usize,
    rng: &mut R,
    opts: &IsolationOptions,
) -> std::result::Result<ScenarioOutcome<T>, ThresholdError<T>> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "threshold must lie in (0, 1], got {threshold}"
        ))
        .into());
    }
    check_intact(g, trials)?;
    let limit = g.active_count() / 2;
    let governing = Governing::Threshold(threshold);
    let mut sources = Sources::new(g, trials, rng);
    let mut targeter = Targeter::new(g, measure, opts)?;
    let bound = T::of(threshold);
    let mut report: FlatteningReport<T> = sources.compare(&targeter.work);
    loop {
        if report.peak_drop <= bound {
            return Ok(ScenarioOutcome {
                plan: targeter.plan(governing),
                isolated_count: targeter.targets.len(),
                report,
            });
        }
        if targeter.targets.len() >= limit || !targeter.step()? {
            return Err(ThresholdError::Unreachable(Box::new(ScenarioOutcome {
                plan: targeter.plan(governing),
                isolated_count: targeter.targets.len(),
                report,
            })));
        }
        report = sources.compare(&targeter.work);
    }
}
