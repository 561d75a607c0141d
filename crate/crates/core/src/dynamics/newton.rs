//! Newton's method for `f(z) = (z - a)^2 + b^2`.
//!
//! On the real line one Newton step is exactly the affine Boole map. Off the
//! real line the iteration converges to the root `a ± ib` lying in the same
//! half plane as the start.

use num_complex::Complex64;
use serde::Serialize;

use super::{BooleMap, DynamicsError};

/// `x - f(x)/f'(x)` evaluated literally.
pub fn newton_step_real(map: &BooleMap, x: f64) -> Result<f64, DynamicsError> {
    if !x.is_finite() {
        return Err(DynamicsError::Domain(format!("non-finite input {x}")));
    }
    let d = x - map.a();
    if d == 0.0 {
        return Err(DynamicsError::Pole { x });
    }
    let f = d * d + map.b() * map.b();
    let df = 2.0 * d;
    Ok(x - f / df)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexNewtonOutcome {
    pub limit: Complex64,
    pub iterations: usize,
    pub converged: bool,
}

#[inline]
fn complex_step(map: &BooleMap, z: Complex64) -> Complex64 {
    let d = z - map.a();
    z - (d * d + map.b() * map.b()) / (2.0 * d)
}

/// Iterate Newton's method from a start off the real axis.
///
/// Stops once the iterate is within `tol` of `a + ib` or `a - ib`. A converged
/// run that lands on the root of the opposite half plane is reported as
/// [`DynamicsError::HalfPlaneViolation`].
pub fn newton_iterate_complex(
    map: &BooleMap,
    z0: Complex64,
    max_iter: usize,
    tol: f64,
) -> Result<ComplexNewtonOutcome, DynamicsError> {
    if !z0.re.is_finite() || !z0.im.is_finite() {
        return Err(DynamicsError::Domain(format!("non-finite start {z0}")));
    }
    if z0.im == 0.0 {
        return Err(DynamicsError::Domain(
            "Newton iteration from a real start does not converge".into(),
        ));
    }
    if !(tol > 0.0) {
        return Err(DynamicsError::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }

    let upper = Complex64::new(map.a(), map.b());
    let lower = Complex64::new(map.a(), -map.b());
    let expected = if z0.im > 0.0 { upper } else { lower };

    let mut z = z0;
    for iter in 1..=max_iter {
        z = complex_step(map, z);
        if !z.re.is_finite() || !z.im.is_finite() {
            break;
        }
        let hit = if (z - upper).norm() < tol {
            Some(upper)
        } else if (z - lower).norm() < tol {
            Some(lower)
        } else {
            None
        };
        if let Some(root) = hit {
            if root != expected {
                return Err(DynamicsError::HalfPlaneViolation {
                    start: z0,
                    reached: root,
                });
            }
            return Ok(ComplexNewtonOutcome {
                limit: z,
                iterations: iter,
                converged: true,
            });
        }
    }
    Ok(ComplexNewtonOutcome {
        limit: z,
        iterations: max_iter,
        converged: false,
    })
}
