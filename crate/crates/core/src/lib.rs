//! Affine Boole transformations `φ_{a,b}(x) = x/2 + a/2 - (b²/2)/(x - a)` and
//! the numerical evidence that their Lyapunov exponent is `ln 2` for every
//! `a` and `b > 0`.
//!
//! - [`dynamics`]: the map, orbits, the Newton step it comes from, and exact
//!   enumeration of starts whose orbit hits the pole.
//! - [`measures`]: the invariant Cauchy law, sampling, Kolmogorov–Smirnov.
//! - [`ergodic`]: Birkhoff averages and Monte Carlo expectations.
//! - [`quadrature`]: adaptive integration and the integral identities.
//! - [`verify`]: all identities as one pass/fail report.
//! - [`cli`]: the `boole` command line.

pub mod cli;
pub mod dynamics;
pub mod ergodic;
pub mod measures;
pub mod quadrature;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Dynamics(#[from] dynamics::DynamicsError),
    #[error(transparent)]
    Measure(#[from] measures::MeasureError),
    #[error(transparent)]
    Ergodic(#[from] ergodic::ErgodicError),
    #[error(transparent)]
    Quadrature(#[from] quadrature::QuadratureError),
}
