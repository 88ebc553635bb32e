use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

use super::{CentralityScores, Measure, MeasureParams};

const MAX_POWER_ITERATIONS: usize = 20_000;
const MAX_KATZ_ITERATIONS: usize = 100_000;

/// Largest adjacency eigenvalue by power iteration on `A + I` (the shift keeps
/// bipartite graphs from oscillating).
pub fn spectral_radius<T: Scalar>(g: &Graph) -> T {
    let n = g.node_count();
    if g.edge_count() == 0 {
        return T::zero();
    }
    let mut v: Vec<T> = (0..n)
        .map(|i| if g.is_active(i) { T::one() } else { T::zero() })
        .collect();
    let norm = v.iter().map(|&x| x * x).sum::<T>().sqrt();
    v.iter_mut().for_each(|x| *x = *x / norm);
    let mut lambda = T::zero();
    let tol = T::epsilon() * T::of(16.0);
    let mut w = vec![T::zero(); n];
    for _ in 0..MAX_POWER_ITERATIONS {
        for i in 0..n {
            w[i] = v[i] + g.neighbors(i).iter().map(|&j| v[j]).sum::<T>();
        }
        let next: T = v.iter().zip(&w).map(|(&a, &b)| a * b).sum();
        let norm = w.iter().map(|&x| x * x).sum::<T>().sqrt();
        for i in 0..n {
            v[i] = w[i] / norm;
        }
        let done = (next - lambda).abs() <= tol * next;
        lambda = next;
        if done {
            break;
        }
    }
    lambda - T::one()
}

/// Katz centrality `x = sum_{t >= 1} kappa^t A^t 1`, iterated as
/// `x <- kappa A (x + 1)` until the remaining tail is below the tolerance.
pub fn katz<T: Scalar>(g: &Graph, kappa: T) -> Result<CentralityScores<T>> {
    if !(kappa > T::zero()) {
        return Err(Error::InvalidParameter(format!("kappa must be positive, got {kappa}")));
    }
    let n = g.node_count();
    let lambda = spectral_radius::<T>(g);
    let ratio = kappa * lambda;
    if ratio >= T::one() {
        return Err(Error::KatzDivergent {
            kappa: kappa.as_f64(),
            bound: (T::one() / lambda).as_f64(),
        });
    }
    let mut x = vec![T::zero(); n];
    let mut next = vec![T::zero(); n];
    let mut iterations = 0;
    let mut tolerance = T::of(1e-10);
    // Remaining error after a step of size `delta` is at most delta * r / (1 - r).
    let tail = if ratio > T::zero() { ratio / (T::one() - ratio) } else { T::zero() };
    loop {
        iterations += 1;
        let mut delta = T::zero();
        for i in 0..n {
            let s: T = g.neighbors(i).iter().map(|&j| x[j] + T::one()).sum();
            next[i] = kappa * s;
            delta = delta.max((next[i] - x[i]).abs());
        }
        std::mem::swap(&mut x, &mut next);
        let scale = x.iter().fold(T::one(), |m, &v| m.max(v));
        tolerance = tolerance.max(T::epsilon() * T::of(16.0) * scale);
        if delta * tail <= tolerance || delta == T::zero() || iterations >= MAX_KATZ_ITERATIONS {
            break;
        }
    }
    let params = MeasureParams {
        kappa: Some(kappa.as_f64()),
        tolerance: Some(tolerance.as_f64()),
        iterations: Some(iterations),
        lambda_max: Some(lambda.as_f64()),
        ..MeasureParams::default()
    };
    Ok(CentralityScores::new(Measure::Katz, g, x, params))
}
