//! Scale-free social network generation, centrality and clustering metrics,
//! distance-based infection curves, Gamma fitting, and targeted-isolation
//! Monte-Carlo experiments.
//!
//! Numeric routines are generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`, which the experiment harness uses throughout.

pub mod centrality;
pub mod clustering;
pub mod curve;
pub mod edgelist;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod isolation;
mod par;
pub mod scalar;

pub use error::{Error, Result};
pub use graph::{DistanceVector, DropStats, Graph, NodeId};
pub use scalar::Scalar;

pub type CentralityScores = centrality::CentralityScores<f64>;
pub type ClusteringReport = clustering::ClusteringReport<f64>;
pub type DistanceDistribution = curve::DistanceDistribution<f64>;
pub type GammaParams = curve::GammaParams<f64>;
pub type FlatteningReport = isolation::FlatteningReport<f64>;
pub type ScenarioOutcome = isolation::ScenarioOutcome<f64>;

pub type CentralityScores32 = centrality::CentralityScores<f32>;
pub type DistanceDistribution32 = curve::DistanceDistribution<f32>;
pub type GammaParams32 = curve::GammaParams<f32>;
