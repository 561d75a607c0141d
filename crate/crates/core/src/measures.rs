//! Cauchy law: density, distribution function, quantile, a reproducible
//! sampler, and the Kolmogorov–Smirnov distance used to check that the Boole
//! map pushes Cauchy(a, b) forward onto itself.

use std::f64::consts::PI;
use std::io::{self, Write};

use rand::distr::{Distribution, Open01};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("empty sample")]
    Empty,
}

/// Asymptotic Kolmogorov–Smirnov constant for α = 0.01.
pub const KS_C_01: f64 = 1.628;

/// Probabilities are clamped to `[P_CLAMP, 1 - P_CLAMP]` before the tangent.
pub const P_CLAMP: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CauchyDist {
    a: f64,
    b: f64,
}

impl CauchyDist {
    pub fn new(a: f64, b: f64) -> Result<Self, MeasureError> {
        if !a.is_finite() || !b.is_finite() || b <= 0.0 {
            return Err(MeasureError::Domain(format!(
                "Cauchy parameters need finite a and b > 0, got a={a}, b={b}"
            )));
        }
        Ok(Self { a, b })
    }

    pub const fn standard() -> Self {
        Self { a: 0.0, b: 1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn pdf(&self, x: f64) -> f64 {
        let z = (x - self.a) / self.b;
        1.0 / (self.b * PI * (z * z + 1.0))
    }

    /// `1/2 + arctan((x - a)/b)/π`, evaluated through `arctan(-1/z)` in the
    /// far left tail to keep relative accuracy.
    pub fn cdf(&self, x: f64) -> f64 {
        let z = (x - self.a) / self.b;
        if z < -1.0 {
            (-1.0 / z).atan() / PI
        } else {
            0.5 + z.atan() / PI
        }
    }

    pub fn quantile(&self, p: f64) -> Result<f64, MeasureError> {
        if !(p > 0.0 && p < 1.0) {
            return Err(MeasureError::Domain(format!(
                "probability {p} outside (0, 1)"
            )));
        }
        Ok(self.quantile_unchecked(p))
    }

    #[inline]
    fn quantile_unchecked(&self, p: f64) -> f64 {
        let p = p.clamp(P_CLAMP, 1.0 - P_CLAMP);
        let z = if p < 0.25 {
            -1.0 / (PI * p).tan()
        } else if p > 0.75 {
            1.0 / (PI * (1.0 - p)).tan()
        } else {
            (PI * (p - 0.5)).tan()
        };
        self.a + self.b * z
    }

    /// Infinite stream of draws, see [`CauchySampler`].
    pub fn sampler(&self, seed: u64) -> CauchySampler {
        CauchySampler::new(*self, seed)
    }
}

impl Default for CauchyDist {
    fn default() -> Self {
        Self::standard()
    }
}

/// Inverse-CDF sampler.
///
/// Uniforms come from ChaCha8 seeded with `ChaCha8Rng::seed_from_u64(seed)`,
/// mapped to the open interval `(0, 1)` with `rand`'s `Open01` (53 random
/// mantissa bits). Both steps are platform independent, so a seed fixes the
/// sequence everywhere.
#[derive(Debug, Clone)]
pub struct CauchySampler {
    dist: CauchyDist,
    rng: ChaCha8Rng,
}

impl CauchySampler {
    pub fn new(dist: CauchyDist, seed: u64) -> Self {
        Self {
            dist,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Iterator for CauchySampler {
    type Item = f64;

    #[inline]
    fn next(&mut self) -> Option<f64> {
        let u: f64 = Open01.sample(&mut self.rng);
        Some(self.dist.quantile_unchecked(u))
    }
}

pub fn cauchy_sample(dist: &CauchyDist, seed: u64, n: usize) -> Result<Vec<f64>, MeasureError> {
    if n == 0 {
        return Err(MeasureError::Domain(
            "sample size must be at least 1".into(),
        ));
    }
    Ok(dist.sampler(seed).take(n).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsReport {
    pub statistic: f64,
    pub n: usize,
    pub critical_01: f64,
    pub pass: bool,
}

pub fn ks_critical_01(n: usize) -> f64 {
    KS_C_01 / (n as f64).sqrt()
}

/// One-sample Kolmogorov–Smirnov distance to the Cauchy distribution function.
pub fn ks_statistic(samples: &[f64], dist: &CauchyDist) -> Result<KsReport, MeasureError> {
    if samples.is_empty() {
        return Err(MeasureError::Empty);
    }
    if samples.iter().any(|x| x.is_nan()) {
        return Err(MeasureError::Domain("sample contains NaN".into()));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let statistic = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = dist.cdf(x);
            let above = (i + 1) as f64 / n - f;
            let below = f - i as f64 / n;
            above.abs().max(below.abs())
        })
        .fold(0.0, f64::max);
    let critical_01 = ks_critical_01(sorted.len());
    Ok(KsReport {
        statistic,
        n: sorted.len(),
        critical_01,
        pass: statistic < critical_01,
    })
}

/// One value per line under a `value` header.
pub fn write_samples_csv<W: Write>(mut out: W, samples: &[f64]) -> io::Result<()> {
    writeln!(out, "value")?;
    for x in samples {
        writeln!(out, "{x:?}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pdf_examples() {
        let s = CauchyDist::standard();
        assert_eq!(s.pdf(0.0), 1.0 / PI);
        assert!((s.pdf(0.0) - 0.3183098861837907).abs() < 1e-16);
        assert_eq!(s.pdf(1.0), 1.0 / (2.0 * PI));
        let d = CauchyDist::new(2.0, 3.0).unwrap();
        assert!((d.pdf(2.0) - 1.0 / (3.0 * PI)).abs() < 1e-16);
    }

    #[test]
    fn cdf_examples() {
        let s = CauchyDist::standard();
        assert_eq!(s.cdf(0.0), 0.5);
        assert!((s.cdf(1.0) - 0.75).abs() < 1e-16);
        let d = CauchyDist::new(5.0, 2.0).unwrap();
        assert!((d.cdf(3.0) - 0.25).abs() < 1e-16);
    }

    #[test]
    fn cdf_is_strictly_increasing_across_branches() {
        let s = CauchyDist::standard();
        let xs = [-1e10, -10.0, -1.0000001, -1.0, -0.999999, 0.0, 1.0, 1e10];
        for w in xs.windows(2) {
            assert!(s.cdf(w[0]) < s.cdf(w[1]), "{} {}", w[0], w[1]);
        }
    }

    #[test]
    fn quantile_examples() {
        let s = CauchyDist::standard();
        assert_eq!(s.quantile(0.5).unwrap(), 0.0);
        assert!((s.quantile(0.75).unwrap() - 1.0).abs() < 1e-15);
        let d = CauchyDist::new(1.0, 2.0).unwrap();
        assert!((d.quantile(0.25).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn quantile_domain() {
        let s = CauchyDist::standard();
        for p in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(s.quantile(p), Err(MeasureError::Domain(_))));
        }
        assert!(s.quantile(1e-300).unwrap().is_finite());
        assert!(s.quantile(1.0 - f64::EPSILON / 2.0).unwrap().is_finite());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(CauchyDist::new(0.0, 0.0).is_err());
        assert!(CauchyDist::new(f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn sampler_is_deterministic() {
        let d = CauchyDist::new(-1.0, 0.5).unwrap();
        let a = cauchy_sample(&d, 42, 10).unwrap();
        let b = cauchy_sample(&d, 42, 10).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, cauchy_sample(&d, 43, 10).unwrap());
        let one = cauchy_sample(&d, 7, 1).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0].is_finite());
        assert!(cauchy_sample(&d, 7, 0).is_err());
    }

    #[test]
    fn ks_perfectly_spaced() {
        let s = CauchyDist::standard();
        let n = 100;
        let xs: Vec<f64> = (1..=n)
            .map(|i| s.quantile((i as f64 - 0.5) / n as f64).unwrap())
            .collect();
        let r = ks_statistic(&xs, &s).unwrap();
        assert!((r.statistic - 0.005).abs() < 1e-12);
    }

    #[test]
    fn ks_point_mass_at_median() {
        let s = CauchyDist::new(3.0, 2.0).unwrap();
        let r = ks_statistic(&[3.0; 50], &s).unwrap();
        assert_eq!(r.statistic, 0.5);
        assert!(!r.pass);
    }

    #[test]
    fn ks_empty_is_an_error() {
        assert_eq!(
            ks_statistic(&[], &CauchyDist::standard()),
            Err(MeasureError::Empty)
        );
    }

    #[test]
    fn ks_large_sample_passes() {
        let s = CauchyDist::standard();
        let xs = cauchy_sample(&s, 1, 100_000).unwrap();
        let r = ks_statistic(&xs, &s).unwrap();
        assert!((r.critical_01 - 0.005148).abs() < 1e-6);
        assert!(r.statistic < 0.00515, "{}", r.statistic);
        assert_eq!(r.pass, r.statistic < r.critical_01);
    }

    #[test]
    fn csv_dump() {
        let mut buf = Vec::new();
        write_samples_csv(&mut buf, &[1.5, -2.0]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "value\n1.5\n-2.0\n");
    }
}
