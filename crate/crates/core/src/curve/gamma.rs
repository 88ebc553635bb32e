//! Gamma density and method-of-moments fitting.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Shape `k` and scale `theta`, both strictly positive and finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaParams<T> {
    pub k: T,
    pub theta: T,
}

impl<T: Scalar> GammaParams<T> {
    pub fn new(k: T, theta: T) -> Result<Self> {
        let ok = |v: T| v.is_finite() && v > T::zero();
        if !ok(k) || !ok(theta) {
            return Err(Error::InvalidParameter(format!(
                "gamma parameters must be positive and finite (k = {k}, theta = {theta})"
            )));
        }
        Ok(GammaParams { k, theta })
    }

    pub fn mean(&self) -> T {
        self.k * self.theta
    }

    pub fn variance(&self) -> T {
        self.k * self.theta * self.theta
    }

    /// Location of the density maximum (0 for `k <= 1`).
    pub fn mode(&self) -> T {
        if self.k > T::one() {
            (self.k - T::one()) * self.theta
        } else {
            T::zero()
        }
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0` (Lanczos, g = 7).
pub fn ln_gamma<T: Scalar>(x: T) -> T {
    let half = T::of(0.5);
    if x < half {
        let pi = T::of(std::f64::consts::PI);
        return (pi / (pi * x).sin().abs()).ln() - ln_gamma(T::one() - x);
    }
    let x = x - T::one();
    let mut a = T::of(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a = a + T::of(c) / (x + T::of_usize(i));
    }
    let t = x + T::of(LANCZOS_G) + half;
    half * T::of((2.0 * std::f64::consts::PI).ln()) + (x + half) * t.ln() - t + a.ln()
}

/// `x^(k-1) exp(-x/theta) / (Γ(k) theta^k)`.
pub fn gamma_pdf<T: Scalar>(x: T, p: &GammaParams<T>) -> Result<T> {
    if x.is_nan() || x < T::zero() {
        return Err(Error::InvalidParameter(format!("gamma pdf needs x >= 0, got {x}")));
    }
    if x == T::zero() {
        return if p.k > T::one() {
            Ok(T::zero())
        } else if p.k == T::one() {
            Ok(T::one() / p.theta)
        } else {
            Err(Error::PdfPole(p.k.as_f64()))
        };
    }
    let log = (p.k - T::one()) * x.ln() - x / p.theta - ln_gamma(p.k) - p.k * p.theta.ln();
    Ok(log.exp())
}

/// Method-of-moments fit with population variance: `k = mean^2 / var`,
/// `theta = var / mean`. Entries are `(value, weight)`.
pub fn fit_gamma_weighted<T: Scalar>(sample: &[(T, T)]) -> Result<GammaParams<T>> {
    let total: T = sample.iter().map(|&(_, w)| w).sum();
    if !(total > T::zero()) {
        return Err(Error::DegenerateSample("empty sample".into()));
    }
    let mean = sample.iter().map(|&(x, w)| x * w).sum::<T>() / total;
    let var = sample
        .iter()
        .map(|&(x, w)| {
            let d = x - mean;
            d * d * w
        })
        .sum::<T>()
        / total;
    if !(var > T::zero()) || !(mean > T::zero()) {
        return Err(Error::DegenerateSample(format!(
            "mean {mean}, variance {var}"
        )));
    }
    GammaParams::new(mean * mean / var, var / mean)
}

pub fn fit_gamma_samples<T: Scalar>(sample: &[T]) -> Result<GammaParams<T>> {
    let weighted: Vec<(T, T)> = sample.iter().map(|&x| (x, T::one())).collect();
    fit_gamma_weighted(&weighted)
}
