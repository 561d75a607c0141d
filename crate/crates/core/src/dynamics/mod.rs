//! The affine Boole transformation, its orbits, its Newton-method origin, and
//! exact enumeration of the initial points whose orbit hits the pole.
//!
//! Floating-point orbits shadow true orbits only for a few dozen steps; the
//! quantities meant to be trusted over long runs are ergodic averages, not
//! individual points.

mod exceptional;
mod map;
mod newton;
mod orbit;
pub mod poly;

use num_complex::Complex64;
use thiserror::Error;

pub use exceptional::{
    exceptional_set, exceptional_set_capped, rational_iterate, rational_iterate_capped,
    ExceptionalRoot, ExceptionalSet, RationalIterate, DEFAULT_DEPTH_CAP, REFINEMENT_STEPS,
};
pub use map::{BooleMap, IntervalMap, DEFAULT_POLE_TOLERANCE};
pub use newton::{newton_iterate_complex, newton_step_real, ComplexNewtonOutcome};
pub use orbit::{iterate_orbit, Orbit};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("evaluation at the pole x = {x}")]
    Pole { x: f64 },
    #[error("depth {requested} exceeds the cap of {cap}")]
    DepthCap { requested: usize, cap: usize },
    #[error("root isolation failed: {0}")]
    Isolation(String),
    #[error(
        "Newton iteration from {start} converged to {reached}, the root of the other half plane"
    )]
    HalfPlaneViolation {
        start: Complex64,
        reached: Complex64,
    },
}
