//! Adaptive Gauss–Kronrod integration and the integral identities behind the
//! ln 2 Lyapunov exponent.

mod adaptive;
mod identities;
mod parametric;

use thiserror::Error;

pub use adaptive::{
    integrate_halfline, integrate_interval, integrate_real_line, Quadrature, QuadratureResult,
    DEFAULT_MAX_SUBDIVISIONS,
};
pub use identities::{
    boole_identity_check, equivalent_forms, lyapunov_integral, lyapunov_integral_decomposed,
    BooleIdentity,
};
pub use parametric::{
    g_integrand, g_parametric, g_partial_envelope, g_partial_t, g_prime_closed, g_prime_leibniz,
    g_prime_numeric, g_value, ln_one_plus_ratio, sqrt_t_integral, ParamDomain, ParametricIntegral,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("invalid bounds: need finite lo < hi, got [{lo}, {hi}]")]
    InvalidBounds { lo: f64, hi: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("integrand returned {value} at x = {x}")]
    NonFinite { x: f64, value: f64 },
    #[error("not converged: value {value}, error estimate {error_estimate}")]
    NotConverged { value: f64, error_estimate: f64 },
}
