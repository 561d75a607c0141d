//! The parametric integral
//!
//! ```text
//! G(t) = ∫_0^∞ ln(1 + t/x²) / (π(1 + x²)) dx,   t ∈ [0, 1],
//! ```
//!
//! its derivative obtained by differentiating under the integral sign,
//! `G'(t) = 1/(2√t(1 + √t))`, and numerical checks of both.

use std::f64::consts::PI;

use super::{Quadrature, QuadratureError, QuadratureResult};

/// Where the integration variable of a [`ParametricIntegral`] lives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamDomain {
    HalfLine,
    Interval(f64, f64),
}

/// `t -> ∫ g(x, t) dx` over a fixed domain.
#[derive(Clone)]
pub struct ParametricIntegral<F> {
    pub integrand: F,
    pub domain: ParamDomain,
    pub t_range: (f64, f64),
    pub quadrature: Quadrature,
}

impl<F: Fn(f64, f64) -> f64> ParametricIntegral<F> {
    pub fn new(integrand: F, domain: ParamDomain, t_range: (f64, f64)) -> Self {
        Self {
            integrand,
            domain,
            t_range,
            quadrature: Quadrature::default(),
        }
    }

    fn check_t(&self, t: f64) -> Result<(), QuadratureError> {
        let (lo, hi) = self.t_range;
        if !(lo..=hi).contains(&t) {
            return Err(QuadratureError::Domain(format!(
                "parameter {t} outside [{lo}, {hi}]"
            )));
        }
        Ok(())
    }

    pub fn value(&self, t: f64, tol: f64) -> Result<QuadratureResult, QuadratureError> {
        self.check_t(t)?;
        let g = |x: f64| (self.integrand)(x, t);
        match self.domain {
            ParamDomain::HalfLine => self.quadrature.half_line(g, tol),
            ParamDomain::Interval(lo, hi) => self.quadrature.interval(g, lo, hi, tol),
        }
    }

    /// `(G(t + h) - G(t - h)) / 2h`, failing if either value did not converge.
    pub fn central_difference(&self, t: f64, h: f64, tol: f64) -> Result<f64, QuadratureError> {
        let (lo, hi) = self.t_range;
        if !(h > 0.0) || t - h <= lo || t + h >= hi {
            return Err(QuadratureError::Domain(format!(
                "[{}, {}] is not inside the open parameter range ({lo}, {hi})",
                t - h,
                t + h
            )));
        }
        let up = self.value(t + h, tol)?.require_converged()?;
        let down = self.value(t - h, tol)?.require_converged()?;
        Ok((up.value - down.value) / (2.0 * h))
    }
}

/// `ln(1 + t/x²)`, staying finite when `t/x²` overflows.
#[inline]
pub fn ln_one_plus_ratio(t: f64, x: f64) -> f64 {
    let r = t / (x * x);
    if r.is_finite() {
        r.ln_1p()
    } else {
        t.ln() - 2.0 * x.abs().ln()
    }
}

/// The integrand `g(x, t) = ln(1 + t/x²) / (π(1 + x²))`.
#[inline]
pub fn g_integrand(x: f64, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    ln_one_plus_ratio(t, x) / (PI * (1.0 + x * x))
}

/// `∂g/∂t = 1 / (π(1 + x²)(t + x²))`.
#[inline]
pub fn g_partial_t(x: f64, t: f64) -> f64 {
    1.0 / (PI * (1.0 + x * x) * (t + x * x))
}

/// Integrable envelope `1/(π ε (1 + x²))` dominating `∂g/∂t` for `t >= ε`.
#[inline]
pub fn g_partial_envelope(x: f64, eps: f64) -> f64 {
    1.0 / (PI * eps * (1.0 + x * x))
}

pub fn g_parametric() -> ParametricIntegral<fn(f64, f64) -> f64> {
    ParametricIntegral::new(
        g_integrand as fn(f64, f64) -> f64,
        ParamDomain::HalfLine,
        (0.0, 1.0),
    )
}

/// `G(t)`. `G(0)` is exactly zero since the integrand vanishes identically.
pub fn g_value(t: f64, tol: f64) -> Result<QuadratureResult, QuadratureError> {
    g_parametric().value(t, tol)
}

/// `1/(2√t(1 + √t))`.
pub fn g_prime_closed(t: f64) -> Result<f64, QuadratureError> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(QuadratureError::Domain(format!(
            "closed-form derivative needs t in (0, 1], got {t}"
        )));
    }
    let s = t.sqrt();
    Ok(1.0 / (2.0 * s * (1.0 + s)))
}

/// Central difference of the numerically integrated `G`.
///
/// The quadrature tolerance is capped at `1e-11` so that integration noise
/// divided by `2h` stays below the comparison threshold.
pub fn g_prime_numeric(t: f64, h: f64, tol: f64) -> Result<f64, QuadratureError> {
    g_parametric().central_difference(t, h, tol.min(1e-11))
}

/// `∫_0^∞ ∂g/∂t (x, t) dx`, the derivative with the integral and the
/// derivative interchanged.
pub fn g_prime_leibniz(t: f64, tol: f64) -> Result<QuadratureResult, QuadratureError> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(QuadratureError::Domain(format!(
            "t must be in (0, 1], got {t}"
        )));
    }
    Quadrature::default().half_line(|x| g_partial_t(x, t), tol)
}

/// `∫_0^∞ ln(1 + t/x²)/π dx`, which equals `√t`.
pub fn sqrt_t_integral(t: f64, tol: f64) -> Result<QuadratureResult, QuadratureError> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(QuadratureError::Domain(format!(
            "t must be non-negative, got {t}"
        )));
    }
    if t == 0.0 {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            subdivisions: 0,
            converged: true,
        });
    }
    Quadrature::default().half_line(|x| ln_one_plus_ratio(t, x) / PI, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn g_endpoints() {
        let g0 = g_value(0.0, 1e-10).unwrap();
        assert_eq!(g0.value, 0.0);
        let g1 = g_value(1.0, 1e-10).unwrap();
        assert!(g1.converged);
        assert!((g1.value - LN_2).abs() < 1e-9, "{}", g1.value);
    }

    #[test]
    fn g_small_parameter_respects_sqrt_bound() {
        let eps = 1e-4;
        let g = g_value(eps, 1e-12).unwrap();
        assert!(g.value >= 0.0 && g.value <= eps.sqrt());
        // closed form ln(1 + √ε)
        assert!((g.value - (1.0 + eps.sqrt()).ln()).abs() < 1e-9);
    }

    #[test]
    fn g_outside_range() {
        assert!(g_value(-0.1, 1e-8).is_err());
        assert!(g_value(1.5, 1e-8).is_err());
    }

    #[test]
    fn closed_derivative_examples() {
        assert_eq!(g_prime_closed(1.0).unwrap(), 0.25);
        assert!((g_prime_closed(0.25).unwrap() - 0.6666666666666666).abs() < 1e-15);
        assert!((g_prime_closed(0.09).unwrap() - 1.0 / 0.78).abs() < 1e-14);
        assert!(g_prime_closed(0.0).is_err());
        assert!(g_prime_closed(-1.0).is_err());
    }

    #[test]
    fn numeric_derivative_examples() {
        for t in [0.5, 0.25, 0.9] {
            let num = g_prime_numeric(t, 1e-4, 1e-11).unwrap();
            let exact = g_prime_closed(t).unwrap();
            assert!((num - exact).abs() <= 1e-6, "t={t}: {num} vs {exact}");
        }
    }

    #[test]
    fn numeric_derivative_needs_room() {
        assert!(g_prime_numeric(0.99995, 1e-4, 1e-11).is_err());
        assert!(g_prime_numeric(0.00005, 1e-4, 1e-11).is_err());
        assert!(g_prime_numeric(0.5, 0.0, 1e-11).is_err());
    }

    #[test]
    fn leibniz_derivative_matches_closed_form() {
        for t in [0.1, 0.5, 1.0] {
            let r = g_prime_leibniz(t, 1e-12).unwrap();
            assert!((r.value - g_prime_closed(t).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn sqrt_identity() {
        for (t, want) in [(0.25, 0.5), (0.5, 0.7071067811865476), (1.0, 1.0)] {
            let r = sqrt_t_integral(t, 1e-10).unwrap();
            assert!((r.value - want).abs() < 1e-8, "t={t}: {}", r.value);
        }
    }

    #[test]
    fn overflow_safe_log() {
        assert!(ln_one_plus_ratio(1.0, 1e-200).is_finite());
        assert!((ln_one_plus_ratio(1.0, 1e-200) - 400.0 * 10f64.ln()).abs() < 1e-10);
        assert_eq!(ln_one_plus_ratio(1.0, 1.0), LN_2);
    }
}
