//! The numerical verification suite: every identity that leads to ln 2,
//! checked against its known value.

use std::collections::BTreeMap;
use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::dynamics::BooleMap;
use crate::measures::{cauchy_sample, ks_critical_01, ks_statistic, CauchyDist, KsReport};
use crate::quadrature::{
    boole_identity_check, equivalent_forms, g_prime_closed, g_prime_numeric, g_value,
    lyapunov_integral, lyapunov_integral_decomposed, sqrt_t_integral, QuadratureError,
    QuadratureResult,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub value: f64,
    pub target: f64,
    pub abs_error: f64,
    pub tolerance: f64,
    pub converged: bool,
    pub pass: bool,
}

impl CheckOutcome {
    pub fn new(value: f64, target: f64, tolerance: f64, converged: bool) -> Self {
        let abs_error = (value - target).abs();
        Self {
            value,
            target,
            abs_error,
            tolerance,
            converged,
            pass: converged && abs_error <= tolerance,
        }
    }

    fn from_quadrature(r: &QuadratureResult, target: f64, tolerance: f64) -> Self {
        Self::new(r.value, target, tolerance, r.converged)
    }

    /// A check whose computation failed outright.
    fn failed(target: f64, tolerance: f64) -> Self {
        Self {
            value: f64::NAN,
            target,
            abs_error: f64::NAN,
            tolerance,
            converged: false,
            pass: false,
        }
    }
}

/// Check name to outcome, in name order.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VerifyReport {
    pub checks: BTreeMap<String, CheckOutcome>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.values().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, c)| !c.pass)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    fn insert(&mut self, name: impl Into<String>, outcome: CheckOutcome) {
        self.checks.insert(name.into(), outcome);
    }

    fn insert_quad(
        &mut self,
        name: impl Into<String>,
        r: Result<QuadratureResult, QuadratureError>,
        target: f64,
        tolerance: f64,
    ) {
        let outcome = match r {
            Ok(r) => CheckOutcome::from_quadrature(&r, target, tolerance),
            Err(_) => CheckOutcome::failed(target, tolerance),
        };
        self.insert(name, outcome);
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    /// Quadrature tolerance.
    pub tol: f64,
    /// Seed of the Cauchy samples pushed through the map.
    pub seed: u64,
    /// Sample size of each pushforward test.
    pub ks_samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            seed: 1,
            ks_samples: 100_000,
        }
    }
}

/// Pushforward of Cauchy(a, b) samples through `φ_{a,b}`, compared to
/// Cauchy(a, b).
pub fn pushforward_ks(a: f64, b: f64, seed: u64, n: usize) -> Result<KsReport, crate::Error> {
    let map = BooleMap::new(a, b)?;
    let dist = CauchyDist::new(a, b)?;
    let pushed: Vec<f64> = cauchy_sample(&dist, seed, n)?
        .into_iter()
        .map(|x| map.apply(x))
        .collect();
    Ok(ks_statistic(&pushed, &dist)?)
}

pub fn run_verification(config: &VerifyConfig) -> VerifyReport {
    let tol = config.tol;
    let mut report = VerifyReport::default();

    report.insert_quad("G(0)", g_value(0.0, tol), 0.0, 0.0);
    report.insert_quad("G(1)", g_value(1.0, tol), LN_2, 1e-9);
    for eps in [0.01, 0.04, 0.25] {
        let diff = g_value(1.0, tol).and_then(|g1| {
            let ge = g_value(eps, tol)?;
            Ok(QuadratureResult {
                value: g1.value - ge.value,
                ..g1.combine(ge)
            })
        });
        report.insert_quad(
            format!("G(1)-G(eps) eps={eps}"),
            diff,
            LN_2 - (1.0 + eps.sqrt()).ln(),
            1e-7,
        );
    }
    for eps in [1e-2, 1e-4, 1e-6] {
        // the bound G(ε) <= √ε, reported as the amount by which it is exceeded
        let outcome = match g_value(eps, tol) {
            Ok(g) => {
                let excess = (g.value - eps.sqrt()).max(0.0);
                CheckOutcome::new(excess, 0.0, 0.0, g.converged)
            }
            Err(_) => CheckOutcome::failed(0.0, 0.0),
        };
        report.insert(format!("G(eps)<=sqrt(eps) eps={eps}"), outcome);
    }

    for (t, want) in [
        (0.25, 0.5),
        (0.5, std::f64::consts::FRAC_1_SQRT_2),
        (1.0, 1.0),
    ] {
        report.insert_quad(
            format!("sqrt_t_identity t={t}"),
            sqrt_t_integral(t, tol),
            want,
            1e-8,
        );
    }

    for t in [0.1, 0.25, 0.5, 0.75, 0.9] {
        let exact = g_prime_closed(t).expect("t in (0, 1]");
        let outcome = match g_prime_numeric(t, 1e-4, tol) {
            Ok(v) => CheckOutcome::new(v, exact, 1e-6, true),
            Err(_) => CheckOutcome::failed(exact, 1e-6),
        };
        report.insert(format!("G_prime t={t}"), outcome);
    }

    match equivalent_forms(tol) {
        Ok(forms) => {
            for (name, r) in &forms {
                report.insert(
                    format!("equivalent_form {name}"),
                    CheckOutcome::from_quadrature(r, LN_2, 1e-8),
                );
            }
            let values: Vec<f64> = forms.values().map(|r| r.value).collect();
            let spread = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                - values.iter().cloned().fold(f64::INFINITY, f64::min);
            let converged = forms.values().all(|r| r.converged);
            report.insert(
                "equivalent_forms pairwise",
                CheckOutcome::new(spread, 0.0, 2e-8, converged),
            );
        }
        Err(_) => {
            for name in ["F1", "F2", "F3", "F4"] {
                report.insert(
                    format!("equivalent_form {name}"),
                    CheckOutcome::failed(LN_2, 1e-8),
                );
            }
        }
    }

    let boole_cases: [(&str, fn(f64) -> f64, f64); 3] = [
        ("gaussian", |x| (-x * x).exp(), PI.sqrt()),
        ("cauchy_pdf", |x| 1.0 / (PI * (1.0 + x * x)), 1.0),
        ("quartic", |x| 1.0 / (1.0 + x.powi(4)), PI / 2f64.sqrt()),
    ];
    for (name, f, exact) in boole_cases {
        let outcome = match boole_identity_check(f, tol) {
            Ok(r) => {
                let converged = r.converged();
                report.insert(
                    format!("boole_identity {name} lhs"),
                    CheckOutcome::new(r.lhs.value, exact, 1e-8, converged),
                );
                CheckOutcome::new(r.rhs.value, r.lhs.value, 1e-8, converged)
            }
            Err(_) => CheckOutcome::failed(exact, 1e-8),
        };
        report.insert(format!("boole_identity {name}"), outcome);
    }

    for (a, b) in [(0.0, 1.0), (5.0, 0.1)] {
        report.insert_quad(
            format!("lyapunov_integral a={a} b={b}"),
            lyapunov_integral(a, b, tol),
            LN_2,
            1e-8,
        );
    }
    report.insert_quad(
        "lyapunov_integral decomposition",
        lyapunov_integral_decomposed(tol),
        LN_2,
        1e-8,
    );

    for (a, b) in [(0.0, 1.0), (2.0, 0.5)] {
        let name = format!("ks_measure_preservation a={a} b={b}");
        let critical = ks_critical_01(config.ks_samples.max(1));
        let outcome = match pushforward_ks(a, b, config.seed, config.ks_samples) {
            Ok(ks) => CheckOutcome {
                value: ks.statistic,
                target: 0.0,
                abs_error: ks.statistic,
                tolerance: ks.critical_01,
                converged: true,
                pass: ks.pass,
            },
            Err(_) => CheckOutcome::failed(0.0, critical),
        };
        report.insert(name, outcome);
    }

    report
}
