//! Expected force: entropy of the outward-link distribution over every
//! infected cluster that two transmissions from a seed can produce.
//!
//! A two-transmission cluster is identified by its transmission tree. The
//! seed either infects two neighbors (a fan, unordered) or infects a neighbor
//! that then infects one of its own neighbors (a chain). A triangle among
//! `{seed, a, b}` therefore appears three times: one fan and two chains.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::scalar::Scalar;

use super::{CentralityScores, Measure, MeasureParams};

/// Links leaving the cluster `{seed, a, b}`.
fn outward(g: &Graph, seed: NodeId, a: NodeId, b: NodeId, internal: usize) -> usize {
    g.degree(seed) + g.degree(a) + g.degree(b) - 2 * internal
}

fn cluster_forces(g: &Graph, seed: NodeId) -> Vec<usize> {
    let ns = g.neighbors(seed);
    let mut forces = Vec::new();
    for (idx, &a) in ns.iter().enumerate() {
        for &b in &ns[idx + 1..] {
            let internal = 2 + usize::from(g.has_edge(a, b));
            forces.push(outward(g, seed, a, b, internal));
        }
        for &b in g.neighbors(a).iter().filter(|&&b| b != seed) {
            let internal = 2 + usize::from(g.has_edge(seed, b));
            forces.push(outward(g, seed, a, b, internal));
        }
    }
    forces
}

fn entropy<T: Scalar>(forces: &[usize]) -> T {
    let total: usize = forces.iter().sum();
    if total == 0 {
        return T::zero();
    }
    let total = T::of_usize(total);
    forces
        .iter()
        .filter(|&&d| d > 0)
        .map(|&d| {
            let p = T::of_usize(d) / total;
            -p * p.ln()
        })
        .sum()
}

/// Expected force of one node (natural log). Zero when no cluster has an
/// outward link.
pub fn expected_force<T: Scalar>(g: &Graph, i: NodeId) -> Result<T> {
    g.check_active(i)?;
    if g.degree(i) == 0 {
        return Err(Error::ZeroDegree(i));
    }
    Ok(entropy(&cluster_forces(g, i)))
}

/// Expected force for every node; degree-0 and inactive nodes score 0.
pub fn expected_force_all<T: Scalar>(g: &Graph) -> CentralityScores<T> {
    let scores = (0..g.node_count())
        .into_par_iter()
        .map(|i| {
            if g.degree(i) == 0 {
                T::zero()
            } else {
                entropy(&cluster_forces(g, i))
            }
        })
        .collect();
    CentralityScores::new(Measure::ExpectedForce, g, scores, MeasureParams::default())
}
