use serde::{Deserialize, Serialize};

use super::DynamicsError;

/// Proximity to the pole below which an orbit point is flagged.
pub const DEFAULT_POLE_TOLERANCE: f64 = 1e-12;

/// The affine Boole transformation with location `a` and scale `b`.
///
/// Away from the pole it is `x/2 + a/2 - (b^2/2)/(x - a)`; the pole itself is
/// mapped to `a`. It is conjugate to the standard map `(0, 1)` through
/// `x -> (x - a)/b`, and it preserves the Cauchy law with the same parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BooleMap {
    a: f64,
    b: f64,
}

impl BooleMap {
    pub fn new(a: f64, b: f64) -> Result<Self, DynamicsError> {
        if !a.is_finite() || !b.is_finite() {
            return Err(DynamicsError::Domain(format!(
                "map parameters must be finite, got a={a}, b={b}"
            )));
        }
        if b <= 0.0 {
            return Err(DynamicsError::Domain(format!(
                "scale parameter must be positive, got b={b}"
            )));
        }
        Ok(Self { a, b })
    }

    /// The standard Boole transformation `x -> (x - 1/x)/2`.
    pub const fn standard() -> Self {
        Self { a: 0.0, b: 1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn is_standard(&self) -> bool {
        self.a == 0.0 && self.b == 1.0
    }

    /// Unchecked evaluation used by the orbit kernels.
    #[inline]
    pub fn apply(&self, x: f64) -> f64 {
        let d = x - self.a;
        if d == 0.0 {
            return self.a;
        }
        0.5 * x + 0.5 * self.a - (0.5 * self.b * self.b) / d
    }

    pub fn eval(&self, x: f64) -> Result<f64, DynamicsError> {
        if !x.is_finite() {
            return Err(DynamicsError::Domain(format!("non-finite input {x}")));
        }
        Ok(self.apply(x))
    }

    /// `(1/2)(1 + b^2/(x - a)^2)`; undefined at the pole.
    pub fn derivative(&self, x: f64) -> Result<f64, DynamicsError> {
        if !x.is_finite() {
            return Err(DynamicsError::Domain(format!("non-finite input {x}")));
        }
        let d = x - self.a;
        if d == 0.0 {
            return Err(DynamicsError::Pole { x });
        }
        let r = self.b / d;
        Ok(0.5 * (1.0 + r * r))
    }

    /// `ln φ'(x)` for `x != a`, and `0` at the pole.
    ///
    /// Stays finite for every finite `x`: when `(b/(x-a))^2` would overflow the
    /// logarithm is expanded as `2 ln|r| - ln 2`.
    #[inline]
    pub fn log_derivative(&self, x: f64) -> f64 {
        self.log_derivative_offset(x - self.a)
    }

    /// `ln φ'` at `a + d`, taking the offset from the pole directly.
    #[inline]
    pub fn log_derivative_offset(&self, d: f64) -> f64 {
        if d == 0.0 {
            return 0.0;
        }
        let r = (self.b / d).abs();
        if r > 1e150 {
            2.0 * r.ln() - std::f64::consts::LN_2
        } else {
            (r * r).ln_1p() - std::f64::consts::LN_2
        }
    }

    /// Coordinates in which this map becomes the standard one.
    #[inline]
    pub fn to_standard(&self, x: f64) -> f64 {
        (x - self.a) / self.b
    }

    #[inline]
    pub fn from_standard(&self, y: f64) -> f64 {
        self.b * y + self.a
    }
}

impl Default for BooleMap {
    fn default() -> Self {
        Self::standard()
    }
}

/// Extension point for other Cauchy-preserving rational maps of the line,
/// e.g. `αx - β/x` with `α ∈ (0, 1)`. Only [`BooleMap`] implements it here.
pub trait IntervalMap {
    fn apply(&self, x: f64) -> f64;
    fn log_derivative(&self, x: f64) -> f64;
    /// The single point where the map is not differentiable.
    fn pole(&self) -> f64;
}

impl IntervalMap for BooleMap {
    fn apply(&self, x: f64) -> f64 {
        BooleMap::apply(self, x)
    }

    fn log_derivative(&self, x: f64) -> f64 {
        BooleMap::log_derivative(self, x)
    }

    fn pole(&self) -> f64 {
        self.a
    }
}
