//! Birkhoff averages along orbits of the affine Boole map, the observables
//! they are taken of, and Monte Carlo expectations to compare them against.
//!
//! Each orbit is inherently sequential; independent replicas run in parallel.

mod birkhoff;
mod expectation;
mod observable;
mod sum;

use thiserror::Error;

pub use birkhoff::{
    birkhoff_average, birkhoff_replicas, cauchy_start, lyapunov_exponent, BirkhoffResult,
};
pub use expectation::{
    density_ratio_normalization, monte_carlo_expectation, trapezoid, uniform_grid,
    MonteCarloEstimate,
};
pub use observable::{
    builtin_observables, observable_by_name, EtaLaw, Observable, OBSERVABLE_NAMES,
};
pub use sum::NeumaierSum;

use crate::dynamics::DynamicsError;
use crate::measures::MeasureError;
use crate::quadrature::QuadratureError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ErgodicError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown observable `{0}`")]
    UnknownObservable(String),
    #[error("orbit overflowed at step {index}")]
    Overflow {
        index: usize,
        partial: Box<BirkhoffResult>,
    },
    #[error("observable returned {value} at x = {x} (step {index})")]
    NonFiniteObservable { index: usize, x: f64, value: f64 },
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}
