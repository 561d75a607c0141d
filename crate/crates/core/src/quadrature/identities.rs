//! Integral identities: four integral forms of ln 2, Boole's substitution
//! identity, and the Lyapunov integral against the Cauchy law.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use serde::Serialize;

use super::parametric::{g_value, ln_one_plus_ratio};
use super::{Quadrature, QuadratureError, QuadratureResult, DEFAULT_MAX_SUBDIVISIONS};
use crate::dynamics::BooleMap;

/// The four integrals that each equal ln 2, keyed `F1` to `F4`:
///
/// ```text
/// F1 = ∫_0^∞ ln(1 + 1/x²) / (π(1 + x²)) dx
/// F2 = -(2/π) ∫_0^{π/2} ln(sin x) dx
/// F3 =  (2/π) ∫_0^{π/2} x / tan(x) dx
/// F4 =  (2/π) ∫_0^∞ arctan(x) / (x(1 + x²)) dx
/// ```
pub fn equivalent_forms(tol: f64) -> Result<BTreeMap<String, QuadratureResult>, QuadratureError> {
    let q = Quadrature::default();
    let scale = 2.0 / PI;
    let mut out = BTreeMap::new();

    let f1 = q.half_line(|x| ln_one_plus_ratio(1.0, x) / (PI * (1.0 + x * x)), tol)?;
    out.insert("F1".to_string(), f1);

    let f2 = q.interval(|x: f64| x.sin().ln(), 0.0, FRAC_PI_2, tol / scale)?;
    out.insert("F2".to_string(), f2.scaled(-scale));

    let f3 = q.interval(|x: f64| x * x.cos() / x.sin(), 0.0, FRAC_PI_2, tol / scale)?;
    out.insert("F3".to_string(), f3.scaled(scale));

    let f4 = q.half_line(|x: f64| x.atan() / (x * (1.0 + x * x)), tol / scale)?;
    out.insert("F4".to_string(), f4.scaled(scale));

    Ok(out)
}

/// Both sides of `∫ f(x) dx = ∫ f(x - 1/x) dx`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BooleIdentity {
    pub lhs: QuadratureResult,
    pub rhs: QuadratureResult,
    pub gap: f64,
}

impl BooleIdentity {
    pub fn converged(&self) -> bool {
        self.lhs.converged && self.rhs.converged
    }
}

/// The right side is integrated as two half lines meeting at `0`, where
/// `x - 1/x` runs off to `∓∞` and the integrand tends to `f(∓∞)`.
pub fn boole_identity_check<F: Fn(f64) -> f64>(
    f: F,
    tol: f64,
) -> Result<BooleIdentity, QuadratureError> {
    let q = Quadrature::default();
    let lhs = q.real_line(&f, 0.0, 0.5 * tol)?;
    let right = q.half_line(|x| f(x - 1.0 / x), 0.25 * tol)?;
    let left = q.half_line(|x| f(1.0 / x - x), 0.25 * tol)?;
    let rhs = right.combine(left);
    Ok(BooleIdentity {
        lhs,
        rhs,
        gap: (lhs.value - rhs.value).abs(),
    })
}

/// `∫ ln φ'_{a,b}(x) · p_{a,b}(x) dx` with `p_{a,b}` the Cauchy(a, b) density.
///
/// The line is split at the pole and each side integrated in the offset
/// `s = |x - a|`, so the logarithmic singularity sits at an endpoint. If
/// either side exhausts the subdivision budget the whole integral is redone
/// once with ten times the budget.
pub fn lyapunov_integral(a: f64, b: f64, tol: f64) -> Result<QuadratureResult, QuadratureError> {
    let map = BooleMap::new(a, b).map_err(|e| QuadratureError::Domain(e.to_string()))?;
    let density = |s: f64| {
        let z = s / b;
        1.0 / (b * PI * (1.0 + z * z))
    };
    let run = |q: Quadrature| -> Result<QuadratureResult, QuadratureError> {
        let right = q.half_line(|s| map.log_derivative_offset(s) * density(s), 0.5 * tol)?;
        let left = q.half_line(|s| map.log_derivative_offset(-s) * density(s), 0.5 * tol)?;
        Ok(right.combine(left))
    };
    let first = run(Quadrature::default())?;
    if first.converged {
        return Ok(first);
    }
    run(Quadrature::with_budget(10 * DEFAULT_MAX_SUBDIVISIONS))
}

/// The same integral assembled from its pieces, `2(-ln 2 · ∫_0^∞ p + G(1))`,
/// using `ln φ'_{0,1}(u) = ln(1 + 1/u²) - ln 2`.
pub fn lyapunov_integral_decomposed(tol: f64) -> Result<QuadratureResult, QuadratureError> {
    let half_mass = Quadrature::default().half_line(|x| 1.0 / (PI * (1.0 + x * x)), 0.25 * tol)?;
    let g1 = g_value(1.0, 0.25 * tol)?;
    Ok(half_mass.scaled(-LN_2).combine(g1).scaled(2.0))
}
