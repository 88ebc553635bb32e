//! Infection curves: shell sizes of the BFS distance distribution from a
//! source, averaged over sources, plus Gamma fitting of the curve shape.

mod gamma;

use std::io::{Read, Write};

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BfsScratch, Graph, NodeId};
use crate::par::chunked_accumulate;
use crate::scalar::Scalar;

pub use gamma::{fit_gamma_samples, fit_gamma_weighted, gamma_pdf, ln_gamma, GammaParams};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceInfo {
    Single { source: NodeId },
    Averaged { trials: usize },
}

/// Node counts per hop distance. `counts[d]` is the (mean) shell size at distance `d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceDistribution<T> {
    pub counts: Vec<T>,
    pub n_reachable: T,
    /// Active nodes not reachable from the source (mean over sources when averaged).
    pub unreachable: T,
    /// Active nodes when the curve was taken; denominator of [`fractions`](Self::fractions).
    pub population: usize,
    pub source_info: SourceInfo,
}

impl<T: Scalar> DistanceDistribution<T> {
    pub fn from_counts(counts: Vec<T>, population: usize, source_info: SourceInfo) -> Self {
        let n_reachable = counts.iter().copied().sum();
        let unreachable = (T::of_usize(population) - n_reachable).max(T::zero());
        DistanceDistribution {
            counts,
            n_reachable,
            unreachable,
            population,
            source_info,
        }
    }

    pub fn max_distance(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    pub fn get(&self, d: usize) -> T {
        self.counts.get(d).copied().unwrap_or_else(T::zero)
    }

    /// Shell sizes divided by the active population.
    pub fn fractions(&self) -> Vec<T> {
        let pop = T::of_usize(self.population.max(1));
        self.counts.iter().map(|&c| c / pop).collect()
    }

    /// Mean distance over reached nodes other than the source (`d >= 1`).
    pub fn mean_distance(&self) -> T {
        let (mut num, mut den) = (T::zero(), T::zero());
        for (d, &c) in self.counts.iter().enumerate().skip(1) {
            num = num + T::of_usize(d) * c;
            den = den + c;
        }
        if den > T::zero() {
            num / den
        } else {
            T::zero()
        }
    }

    /// Peak shell and its size; the smallest distance wins ties.
    pub fn peak(&self) -> (usize, T) {
        curve_peak(self)
    }

    /// Method-of-moments Gamma fit over distances `d >= 1` weighted by shell size.
    pub fn fit_gamma(&self) -> Result<GammaParams<T>> {
        fit_gamma(self)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> std::result::Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["distance", "count", "fraction"])?;
        for (d, (c, f)) in self.counts.iter().zip(self.fractions()).enumerate() {
            w.write_record([d.to_string(), c.to_string(), f.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a `distance,count[,fraction]` CSV. Missing distances are zero.
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
        let headers = r.headers().map_err(csv_err)?.clone();
        let col = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
        let (dcol, ccol) = match (col("distance"), col("count")) {
            (Some(d), Some(c)) => (d, c),
            _ => {
                return Err(Error::Parse {
                    line: 1,
                    msg: "expected columns distance,count".into(),
                })
            }
        };
        let mut counts: Vec<T> = Vec::new();
        for (row, rec) in r.records().enumerate() {
            let rec = rec.map_err(csv_err)?;
            let line = row + 2;
            let field = |i: usize| rec.get(i).unwrap_or("");
            let d: usize = field(dcol).parse().map_err(|e| Error::Parse {
                line,
                msg: format!("bad distance: {e}"),
            })?;
            let c: f64 = field(ccol).parse().map_err(|e| Error::Parse {
                line,
                msg: format!("bad count: {e}"),
            })?;
            if !(c >= 0.0) {
                return Err(Error::Parse {
                    line,
                    msg: "count must be non-negative".into(),
                });
            }
            if counts.len() <= d {
                counts.resize(d + 1, T::zero());
            }
            counts[d] = counts[d] + T::of(c);
        }
        let total: f64 = counts.iter().map(|c| c.as_f64()).sum();
        Ok(Self::from_counts(
            counts,
            total.round() as usize,
            SourceInfo::Averaged { trials: 1 },
        ))
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse {
        line: e.position().map_or(0, |p| p.line() as usize),
        msg: e.to_string(),
    }
}

/// Shell sizes of the BFS from `source` over active nodes.
pub fn distance_distribution<T: Scalar>(g: &Graph, source: NodeId) -> Result<DistanceDistribution<T>> {
    g.check_active(source)?;
    let mut scratch = BfsScratch::new(g.node_count());
    let counts = scratch
        .shells(g, source, None)
        .into_iter()
        .map(T::of_usize)
        .collect();
    Ok(DistanceDistribution::from_counts(
        counts,
        g.active_count(),
        SourceInfo::Single { source },
    ))
}

/// Per-source shell sizes, summed in source order.
pub(crate) fn summed_shells(g: &Graph, sources: &[NodeId]) -> Vec<usize> {
    chunked_accumulate(
        sources,
        || BfsScratch::new(g.node_count()),
        Vec::<usize>::new,
        |scratch, acc, &s| add_shells(acc, &scratch.shells(g, s, None)),
        |total, part| add_shells(total, &part),
    )
}

pub(crate) fn add_shells(acc: &mut Vec<usize>, shells: &[usize]) {
    if acc.len() < shells.len() {
        acc.resize(shells.len(), 0);
    }
    for (a, &s) in acc.iter_mut().zip(shells) {
        *a += s;
    }
}

pub(crate) fn mean_of_sums<T: Scalar>(sums: &[usize], sources: usize, population: usize) -> DistanceDistribution<T> {
    let denom = T::of_usize(sources);
    let counts = sums.iter().map(|&s| T::of_usize(s) / denom).collect();
    DistanceDistribution::from_counts(counts, population, SourceInfo::Averaged { trials: sources })
}

/// Mean shell sizes over the given active sources.
pub fn curve_from_sources<T: Scalar>(g: &Graph, sources: &[NodeId]) -> Result<DistanceDistribution<T>> {
    if sources.is_empty() {
        return Err(Error::InvalidParameter("at least one source is required".into()));
    }
    for &s in sources {
        g.check_active(s)?;
    }
    Ok(mean_of_sums(&summed_shells(g, sources), sources.len(), g.active_count()))
}

/// Every active node as a source once.
pub fn exhaustive_curve<T: Scalar>(g: &Graph) -> Result<DistanceDistribution<T>> {
    let sources: Vec<NodeId> = g.active_nodes().collect();
    curve_from_sources(g, &sources)
}

/// `trials` distinct active nodes drawn uniformly, returned in ascending
/// order; all active nodes once `trials` reaches the active count.
pub fn sample_sources<R: Rng + ?Sized>(g: &Graph, trials: usize, rng: &mut R) -> Vec<NodeId> {
    let active: Vec<NodeId> = g.active_nodes().collect();
    if trials >= active.len() {
        return active;
    }
    let mut picked: Vec<NodeId> = index::sample(rng, active.len(), trials)
        .into_iter()
        .map(|i| active[i])
        .collect();
    picked.sort_unstable();
    picked
}

/// Mean shell sizes over `trials` random active sources (without replacement).
pub fn averaged_curve<T: Scalar, R: Rng + ?Sized>(
    g: &Graph,
    trials: usize,
    rng: &mut R,
) -> Result<DistanceDistribution<T>> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if g.active_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    curve_from_sources(g, &sample_sources(g, trials, rng))
}

pub fn curve_peak<T: Scalar>(dist: &DistanceDistribution<T>) -> (usize, T) {
    let mut best = (0, T::neg_infinity());
    for (d, &c) in dist.counts.iter().enumerate() {
        if c > best.1 {
            best = (d, c);
        }
    }
    if dist.counts.is_empty() {
        (0, T::zero())
    } else {
        best
    }
}

pub fn fit_gamma<T: Scalar>(dist: &DistanceDistribution<T>) -> Result<GammaParams<T>> {
    let sample: Vec<(T, T)> = dist
        .counts
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &c)| c > T::zero())
        .map(|(d, &c)| (T::of_usize(d), c))
        .collect();
    if sample.len() < 2 {
        return Err(Error::DegenerateSample(format!(
            "{} distinct positive distance(s); need at least 2",
            sample.len()
        )));
    }
    fit_gamma_weighted(&sample)
}
