use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::QuadratureError;
use crate::ergodic::NeumaierSum;

/// Subdivision budget used by the free functions.
pub const DEFAULT_MAX_SUBDIVISIONS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions: usize,
    pub converged: bool,
}

impl QuadratureResult {
    /// Multiply value and error estimate by `factor`.
    pub fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.abs(),
            ..self
        }
    }

    /// Sum of two independent pieces.
    pub fn combine(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            subdivisions: self.subdivisions + other.subdivisions,
            converged: self.converged && other.converged,
        }
    }

    /// Turn an unconverged result into an error.
    pub fn require_converged(self) -> Result<Self, QuadratureError> {
        if self.converged {
            Ok(self)
        } else {
            Err(QuadratureError::NotConverged {
                value: self.value,
                error_estimate: self.error_estimate,
            })
        }
    }
}

// 15-point Kronrod rule with its embedded 7-point Gauss rule (QUADPACK qk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // largest error first; ties broken by position so the order is total
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = err.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

/// Apply the Kronrod rule to `[lo, hi]`. Endpoints are never evaluated.
fn kronrod15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Result<Panel, QuadratureError> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let eval = |x: f64| {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(QuadratureError::NonFinite { x, value: y })
        }
    };

    let fc = eval(center)?;
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let err = (res_k - res_g) * half;
    let abs_half = half.abs();
    Ok(Panel {
        lo,
        hi,
        value: res_k * half,
        error: rescale_error(err, res_abs * abs_half, res_asc * abs_half),
    })
}

/// Globally adaptive Gauss–Kronrod integration.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub max_subdivisions: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self {
            max_subdivisions: DEFAULT_MAX_SUBDIVISIONS,
        }
    }
}

impl Quadrature {
    pub fn with_budget(max_subdivisions: usize) -> Self {
        Self { max_subdivisions }
    }

    /// Integrate `f` over the open interval `(lo, hi)` to absolute accuracy `tol`.
    ///
    /// The panel with the largest error estimate is bisected until the summed
    /// estimate drops below `tol`. Running out of budget, or reaching panels
    /// too narrow to split, gives `converged = false` with the best value.
    /// Panel values are summed in left-to-right order, so the result depends
    /// only on the inputs.
    pub fn interval<F: Fn(f64) -> f64>(
        &self,
        f: F,
        lo: f64,
        hi: f64,
        tol: f64,
    ) -> Result<QuadratureResult, QuadratureError> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(QuadratureError::InvalidBounds { lo, hi });
        }
        if !(tol > 0.0) {
            return Err(QuadratureError::Domain(format!(
                "tolerance must be positive, got {tol}"
            )));
        }

        let first = kronrod15(&f, lo, hi)?;
        let mut total_error = first.error;
        let mut heap = BinaryHeap::from([first]);
        let mut subdivisions = 0;
        let mut converged = total_error <= tol;

        while !converged && subdivisions < self.max_subdivisions {
            let worst = heap.pop().expect("heap is never empty");
            let mid = 0.5 * (worst.lo + worst.hi);
            if !(worst.lo < mid && mid < worst.hi) {
                heap.push(worst);
                break;
            }
            let left = kronrod15(&f, worst.lo, mid)?;
            let right = kronrod15(&f, mid, worst.hi)?;
            total_error += left.error + right.error - worst.error;
            heap.push(left);
            heap.push(right);
            subdivisions += 1;
            if total_error <= tol {
                // the running total drifts; confirm with a fresh sum
                total_error = heap.iter().map(|p| p.error).sum();
                converged = total_error <= tol;
            }
        }

        let mut panels = heap.into_vec();
        panels.sort_by(|x, y| x.lo.total_cmp(&y.lo));
        let mut value = NeumaierSum::default();
        let mut error = NeumaierSum::default();
        for p in &panels {
            value += p.value;
            error += p.error;
        }
        let error_estimate = error.sum();
        Ok(QuadratureResult {
            value: value.sum(),
            error_estimate,
            subdivisions,
            converged: error_estimate <= tol,
        })
    }

    /// `∫_0^∞ f`, split at 1 with the tail mapped back by `x = 1/u`:
    /// `∫_0^1 f(x) dx + ∫_0^1 f(1/u)/u^2 du`.
    pub fn half_line<F: Fn(f64) -> f64>(
        &self,
        f: F,
        tol: f64,
    ) -> Result<QuadratureResult, QuadratureError> {
        let head = self.interval(&f, 0.0, 1.0, 0.5 * tol)?;
        let tail = self.interval(
            |u: f64| {
                let x = 1.0 / u;
                f(x) * x * x
            },
            0.0,
            1.0,
            0.5 * tol,
        )?;
        Ok(head.combine(tail))
    }

    /// `∫_ℝ f`, as two half lines split at `center`.
    pub fn real_line<F: Fn(f64) -> f64>(
        &self,
        f: F,
        center: f64,
        tol: f64,
    ) -> Result<QuadratureResult, QuadratureError> {
        let right = self.half_line(|s| f(center + s), 0.5 * tol)?;
        let left = self.half_line(|s| f(center - s), 0.5 * tol)?;
        Ok(right.combine(left))
    }
}

pub fn integrate_interval<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<QuadratureResult, QuadratureError> {
    Quadrature::default().interval(f, lo, hi, tol)
}

pub fn integrate_halfline<F: Fn(f64) -> f64>(
    f: F,
    tol: f64,
) -> Result<QuadratureResult, QuadratureError> {
    Quadrature::default().half_line(f, tol)
}

pub fn integrate_real_line<F: Fn(f64) -> f64>(
    f: F,
    center: f64,
    tol: f64,
) -> Result<QuadratureResult, QuadratureError> {
    Quadrature::default().real_line(f, center, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2, PI};

    #[test]
    fn constant() {
        let r = integrate_interval(|_| 1.0, 0.0, 1.0, 1e-12).unwrap();
        assert!(r.converged);
        assert!((r.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn arctan() {
        let r = integrate_interval(|x| 1.0 / (1.0 + x * x), 0.0, 1.0, 1e-12).unwrap();
        assert!(r.converged);
        assert!((r.value - FRAC_PI_4).abs() < 1e-10);
    }

    #[test]
    fn log_sine_endpoint_singularity() {
        let r = integrate_interval(|x: f64| x.sin().ln(), 0.0, FRAC_PI_2, 1e-10).unwrap();
        assert!(r.converged);
        assert!(
            (r.value - (-1.0887930451518010)).abs() < 1e-8,
            "{}",
            r.value
        );
        assert!((r.value + FRAC_PI_2 * LN_2).abs() < 1e-8);
    }

    #[test]
    fn half_line_cauchy_mass() {
        let r = integrate_halfline(|x| 1.0 / (PI * (1.0 + x * x)), 1e-12).unwrap();
        assert!(r.converged);
        assert!((r.value - 0.5).abs() < 1e-10);
    }

    #[test]
    fn half_line_log_integral_is_pi() {
        let r = integrate_halfline(|x: f64| (1.0 / (x * x)).ln_1p(), 1e-10).unwrap();
        assert!(r.converged);
        assert!((r.value - PI).abs() < 1e-8, "{}", r.value);
    }

    #[test]
    fn real_line_gaussian() {
        let r = integrate_real_line(|x: f64| (-x * x).exp(), 0.0, 1e-12).unwrap();
        assert!((r.value - PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn invalid_bounds() {
        assert!(matches!(
            integrate_interval(|x| x, 1.0, 0.0, 1e-8),
            Err(QuadratureError::InvalidBounds { .. })
        ));
        assert!(integrate_interval(|x| x, 0.0, f64::INFINITY, 1e-8).is_err());
        assert!(integrate_interval(|x| x, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn non_finite_integrand() {
        let r = integrate_interval(|x| if x > 0.5 { f64::NAN } else { x }, 0.0, 1.0, 1e-8);
        assert!(matches!(r, Err(QuadratureError::NonFinite { .. })));
    }

    #[test]
    fn unattainable_tolerance_reports_unconverged() {
        let r = Quadrature::with_budget(50)
            .interval(|x: f64| x.sin().ln(), 0.0, FRAC_PI_2, 1e-15)
            .unwrap();
        assert!(!r.converged);
        assert!(r.value.is_finite());
        assert!(r.require_converged().is_err());
    }

    #[test]
    fn deterministic() {
        let f = |x: f64| (x * 7.0).cos() * (-x).exp();
        let a = integrate_interval(f, 0.0, 5.0, 1e-12).unwrap();
        let b = integrate_interval(f, 0.0, 5.0, 1e-12).unwrap();
        assert_eq!(a, b);
    }
}
