use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

use super::{CentralityScores, Measure, MeasureParams};

const MAX_ITERATIONS: usize = 200;
const L1_TOLERANCE: f64 = 1e-10;

/// PageRank on the undirected random walk with uniform teleport over active
/// nodes. Mass on degree-0 active nodes is redistributed uniformly.
pub fn pagerank<T: Scalar>(g: &Graph, damping: T) -> Result<CentralityScores<T>> {
    if !(damping > T::zero() && damping < T::one()) {
        return Err(Error::InvalidParameter(format!(
            "damping must lie in (0, 1), got {damping}"
        )));
    }
    let n = g.node_count();
    let active = g.active_count();
    if active == 0 {
        return Err(Error::EmptyGraph);
    }
    let uniform = T::one() / T::of_usize(active);
    let mut x: Vec<T> = (0..n)
        .map(|i| if g.is_active(i) { uniform } else { T::zero() })
        .collect();
    let mut next = vec![T::zero(); n];
    let mut share = vec![T::zero(); n];
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let mut dangling = T::zero();
        for i in 0..n {
            let k = g.degree(i);
            if k == 0 {
                if g.is_active(i) {
                    dangling = dangling + x[i];
                }
                share[i] = T::zero();
            } else {
                share[i] = x[i] / T::of_usize(k);
            }
        }
        let base = (T::one() - damping) * uniform + damping * dangling * uniform;
        let mut change = T::zero();
        for i in 0..n {
            if !g.is_active(i) {
                continue;
            }
            let inflow: T = g.neighbors(i).iter().map(|&j| share[j]).sum();
            next[i] = base + damping * inflow;
            change = change + (next[i] - x[i]).abs();
        }
        std::mem::swap(&mut x, &mut next);
        if change < T::of(L1_TOLERANCE) {
            break;
        }
    }
    let total: T = x.iter().copied().sum();
    x.iter_mut().for_each(|v| *v = *v / total);
    let params = MeasureParams {
        damping: Some(damping.as_f64()),
        tolerance: Some(L1_TOLERANCE),
        iterations: Some(iterations),
        ..MeasureParams::default()
    };
    Ok(CentralityScores::new(Measure::Pagerank, g, x, params))
}
