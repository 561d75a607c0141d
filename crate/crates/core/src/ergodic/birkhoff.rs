use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ErgodicError, NeumaierSum, Observable};
use crate::dynamics::{BooleMap, DEFAULT_POLE_TOLERANCE};
use crate::measures::CauchyDist;

/// Time average of an observable along one orbit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BirkhoffResult {
    pub estimate: f64,
    pub n: usize,
    pub burn_in: usize,
    pub x0: f64,
    /// `(k, average of the first k terms)` at `k = 1, 2, 4, ...` and at `k = n`.
    pub trace: Vec<(usize, f64)>,
    /// Terms evaluated within [`DEFAULT_POLE_TOLERANCE`] of the pole.
    pub pole_flags: usize,
}

impl BirkhoffResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// `k,running_average` rows under a header.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "k,running_average")?;
        for (k, avg) in &self.trace {
            writeln!(out, "{k},{avg:?}")?;
        }
        Ok(())
    }
}

fn validate(x0: f64, n: usize) -> Result<(), ErgodicError> {
    if n == 0 {
        return Err(ErgodicError::Domain("n must be at least 1".into()));
    }
    if !x0.is_finite() {
        return Err(ErgodicError::Domain(format!("x0 must be finite, got {x0}")));
    }
    Ok(())
}

/// Shared loop; generic so the Lyapunov observable is inlined.
fn run<F: Fn(f64) -> f64>(
    map: &BooleMap,
    f: F,
    x0: f64,
    n: usize,
    burn_in: usize,
) -> Result<BirkhoffResult, ErgodicError> {
    validate(x0, n)?;
    let mut x = x0;
    for i in 0..burn_in {
        x = map.apply(x);
        if !x.is_finite() {
            return Err(ErgodicError::Overflow {
                index: i + 1,
                partial: Box::new(BirkhoffResult {
                    estimate: f64::NAN,
                    n: 0,
                    burn_in,
                    x0,
                    trace: Vec::new(),
                    pole_flags: 0,
                }),
            });
        }
    }

    let a = map.a();
    let mut sum = NeumaierSum::default();
    let mut trace = Vec::with_capacity(usize::BITS as usize + 1);
    let mut pole_flags = 0;
    for k in 0..n {
        if (x - a).abs() < DEFAULT_POLE_TOLERANCE {
            pole_flags += 1;
        }
        let y = f(x);
        if !y.is_finite() {
            return Err(ErgodicError::NonFiniteObservable {
                index: burn_in + k,
                x,
                value: y,
            });
        }
        sum += y;
        let count = k + 1;
        if count & k == 0 || count == n {
            trace.push((count, sum.sum() / count as f64));
        }
        if count == n {
            break;
        }
        x = map.apply(x);
        if !x.is_finite() {
            let partial = BirkhoffResult {
                estimate: sum.sum() / count as f64,
                n: count,
                burn_in,
                x0,
                trace,
                pole_flags,
            };
            return Err(ErgodicError::Overflow {
                index: burn_in + count,
                partial: Box::new(partial),
            });
        }
    }
    let estimate = trace.last().expect("n >= 1").1;
    Ok(BirkhoffResult {
        estimate,
        n,
        burn_in,
        x0,
        trace,
        pole_flags,
    })
}

/// `(1/n) Σ_{k=burn_in}^{burn_in+n-1} obs(φ^k(x0))` with compensated summation.
pub fn birkhoff_average(
    map: &BooleMap,
    obs: &Observable,
    x0: f64,
    n: usize,
    burn_in: usize,
) -> Result<BirkhoffResult, ErgodicError> {
    run(map, |x| obs.eval(x), x0, n, burn_in)
}

/// Birkhoff average of `ln φ'_{a,b}`, whose limit is ln 2 for almost every start.
pub fn lyapunov_exponent(
    map: &BooleMap,
    x0: f64,
    n: usize,
    burn_in: usize,
) -> Result<BirkhoffResult, ErgodicError> {
    run(map, |x| map.log_derivative(x), x0, n, burn_in)
}

/// A start drawn from Cauchy(a, b): the first draw of the sampler for `seed`.
pub fn cauchy_start(map: &BooleMap, seed: u64) -> f64 {
    let dist = CauchyDist::new(map.a(), map.b()).expect("map parameters are valid");
    dist.sampler(seed).next().expect("sampler is infinite")
}

/// `replicas` independent runs; run `i` starts at [`cauchy_start`] with seed
/// `base_seed + i`. Results come back in replica order regardless of how the
/// work was scheduled.
pub fn birkhoff_replicas(
    map: &BooleMap,
    obs: Option<&Observable>,
    n: usize,
    burn_in: usize,
    base_seed: u64,
    replicas: usize,
) -> Vec<Result<BirkhoffResult, ErgodicError>> {
    (0..replicas)
        .into_par_iter()
        .map(|i| {
            let x0 = cauchy_start(map, base_seed.wrapping_add(i as u64));
            match obs {
                Some(o) => birkhoff_average(map, o, x0, n, burn_in),
                None => lyapunov_exponent(map, x0, n, burn_in),
            }
        })
        .collect()
}
