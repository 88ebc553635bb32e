//! Node influence measures: degree, betweenness, closeness, Katz, PageRank
//! and expected force, plus top-k ranking.
//!
//! Every measure is evaluated on the active subgraph. Inactive nodes carry a
//! score of zero and are never ranked.

mod betweenness;
mod closeness;
mod expected_force;
mod katz;
mod pagerank;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::scalar::Scalar;

pub use betweenness::betweenness;
pub use closeness::closeness;
pub use expected_force::{expected_force, expected_force_all};
pub use katz::{katz, spectral_radius};
pub use pagerank::pagerank;

pub const DEFAULT_KAPPA: f64 = 0.005;
pub const DEFAULT_DAMPING: f64 = 0.85;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    Degree,
    Betweenness,
    Closeness,
    Katz,
    Pagerank,
    ExpectedForce,
}

impl Measure {
    pub const ALL: [Measure; 6] = [
        Measure::Degree,
        Measure::Betweenness,
        Measure::Closeness,
        Measure::Katz,
        Measure::Pagerank,
        Measure::ExpectedForce,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Degree => "degree",
            Measure::Betweenness => "betweenness",
            Measure::Closeness => "closeness",
            Measure::Katz => "katz",
            Measure::Pagerank => "pagerank",
            Measure::ExpectedForce => "expected_force",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == norm || (norm == "exf" && *m == Measure::ExpectedForce))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown centrality measure {s:?}")))
    }
}

/// Parameters a measure actually ran with.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MeasureParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub damping: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_max: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityScores<T> {
    pub measure: Measure,
    pub scores: Vec<T>,
    pub active: Vec<bool>,
    pub params: MeasureParams,
}

impl<T: Scalar> CentralityScores<T> {
    pub(crate) fn new(measure: Measure, g: &Graph, scores: Vec<T>, params: MeasureParams) -> Self {
        let active = (0..g.node_count()).map(|i| g.is_active(i)).collect();
        CentralityScores {
            measure,
            scores,
            active,
            params,
        }
    }

    pub fn get(&self, i: NodeId) -> Option<T> {
        self.active
            .get(i)
            .copied()
            .unwrap_or(false)
            .then(|| self.scores[i])
    }

    /// Active nodes by descending score, ties by ascending id.
    pub fn ranking(&self) -> Vec<NodeId> {
        let mut nodes: Vec<NodeId> = (0..self.scores.len()).filter(|&i| self.active[i]).collect();
        nodes.sort_by(|&a, &b| {
            self.scores[b]
                .partial_cmp(&self.scores[a])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        nodes
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentralityOptions {
    pub kappa: f64,
    pub damping: f64,
}

impl Default for CentralityOptions {
    fn default() -> Self {
        CentralityOptions {
            kappa: DEFAULT_KAPPA,
            damping: DEFAULT_DAMPING,
        }
    }
}

pub fn degree<T: Scalar>(g: &Graph) -> CentralityScores<T> {
    let scores = (0..g.node_count()).map(|i| T::of_usize(g.degree(i))).collect();
    CentralityScores::new(Measure::Degree, g, scores, MeasureParams::default())
}

pub fn compute<T: Scalar>(
    g: &Graph,
    measure: Measure,
    opts: &CentralityOptions,
) -> Result<CentralityScores<T>> {
    match measure {
        Measure::Degree => Ok(degree(g)),
        Measure::Betweenness => Ok(betweenness(g)),
        Measure::Closeness => closeness(g),
        Measure::Katz => katz(g, T::of(opts.kappa)),
        Measure::Pagerank => pagerank(g, T::of(opts.damping)),
        Measure::ExpectedForce => Ok(expected_force_all(g)),
    }
}

/// The `k` highest-scoring active nodes.
pub fn rank_top<T: Scalar>(scores: &CentralityScores<T>, k: usize) -> Result<Vec<NodeId>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let mut ranked = scores.ranking();
    if k > ranked.len() {
        return Err(Error::InvalidParameter(format!(
            "k = {k} exceeds {} active nodes",
            ranked.len()
        )));
    }
    ranked.truncate(k);
    Ok(ranked)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_examples() {
        let s = degree::<f64>(&Graph::star(4));
        assert_eq!(s.scores[0], 4.0);
        assert!(degree::<f64>(&Graph::complete(4)).scores.iter().all(|&x| x == 3.0));
        assert_eq!(degree::<f64>(&Graph::path(3)).scores, vec![1.0, 2.0, 1.0]);
    }

    #[test]
    fn rank_top_examples() {
        assert_eq!(rank_top(&degree::<f64>(&Graph::star(4)), 1).unwrap(), vec![0]);
        assert_eq!(rank_top(&degree::<f64>(&Graph::complete(4)), 2).unwrap(), vec![0, 1]);
        let c = closeness::<f64>(&Graph::path(3)).unwrap();
        assert_eq!(rank_top(&c, 1).unwrap(), vec![1]);
    }

    #[test]
    fn rank_top_rejects_bad_k() {
        let s = degree::<f64>(&Graph::path(3));
        assert!(rank_top(&s, 0).is_err());
        assert!(rank_top(&s, 4).is_err());
    }

    #[test]
    fn ranking_skips_inactive() {
        let g = Graph::star(4).with_isolated(0).unwrap();
        let s = degree::<f64>(&g);
        assert_eq!(s.ranking(), vec![1, 2, 3, 4]);
        assert_eq!(s.get(0), None);
    }

    #[test]
    fn measure_names_round_trip() {
        for m in Measure::ALL {
            assert_eq!(m.name().parse::<Measure>().unwrap(), m);
            let json = serde_json::to_string(&m).unwrap();
            assert_eq!(json, format!("\"{}\"", m.name()));
        }
        assert_eq!("ExF".parse::<Measure>().unwrap(), Measure::ExpectedForce);
        assert!("eigenvector".parse::<Measure>().is_err());
    }
}
