use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{ErgodicError, EtaLaw, Observable};
use crate::measures::CauchyDist;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub n: usize,
}

/// Sample mean and standard error of `obs` over `n` Cauchy draws, using
/// Welford's update.
pub fn monte_carlo_expectation(
    dist: &CauchyDist,
    obs: &Observable,
    seed: u64,
    n: usize,
) -> Result<MonteCarloEstimate, ErgodicError> {
    if n == 0 {
        return Err(ErgodicError::Domain("n must be at least 1".into()));
    }
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for (i, x) in dist.sampler(seed).take(n).enumerate() {
        let y = obs.eval(x);
        if !y.is_finite() {
            return Err(ErgodicError::NonFiniteObservable {
                index: i,
                x,
                value: y,
            });
        }
        let delta = y - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (y - mean);
    }
    let stderr = if n > 1 {
        (m2 / (n - 1) as f64 / n as f64).sqrt()
    } else {
        0.0
    };
    Ok(MonteCarloEstimate {
        estimate: mean,
        stderr,
        n,
    })
}

/// `g(a) = E[(1 + η²)/(1 + (η - a)²)] / (π E(1 + η²))` at every grid point.
///
/// `g` is a probability density bounded by `1/π`.
pub fn density_ratio_normalization(a_grid: &[f64], eta: &EtaLaw) -> Result<Vec<f64>, ErgodicError> {
    let norm = PI * eta.second_moment_plus_one();
    a_grid
        .iter()
        .map(|&a| Ok(eta.ratio_expectation(a)? / norm))
        .collect()
}

/// Trapezoid rule on sample points `(xs[i], ys[i])`.
pub fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len(), "trapezoid needs matching lengths");
    xs.windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}

/// `count` evenly spaced points from `lo` to `hi` inclusive.
pub fn uniform_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (count - 1) as f64;
            (0..count).map(|i| lo + step * i as f64).collect()
        }
    }
}
