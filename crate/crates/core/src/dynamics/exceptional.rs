//! Exact iterates of the standard Boole map and the finite sets of initial
//! points whose orbit reaches the pole.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::poly::{isolate_real_roots, refine_root, IntPoly, RealRoot};
use super::DynamicsError;

/// Deepest iterate built by default. Degrees double per level.
pub const DEFAULT_DEPTH_CAP: usize = 8;

/// Bisection steps applied to each isolating interval before reporting.
pub const REFINEMENT_STEPS: u32 = 60;

/// `φ_{0,1}^(k) = P/Q` as a quotient of integer polynomials.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RationalIterate {
    pub k: usize,
    pub numerator: IntPoly,
    pub denominator: IntPoly,
}

impl RationalIterate {
    /// `P(x)/Q(x)` evaluated exactly at the double `x`, then rounded.
    ///
    /// `None` when `Q(x) = 0`.
    pub fn evaluate(&self, x: f64) -> Option<f64> {
        let xr = BigRational::from_float(x)?;
        let q = self.denominator.eval_rational(&xr);
        if q.is_zero() {
            return None;
        }
        (self.numerator.eval_rational(&xr) / q).to_f64()
    }
}

pub fn rational_iterate(k: usize) -> Result<RationalIterate, DynamicsError> {
    rational_iterate_capped(k, DEFAULT_DEPTH_CAP)
}

/// Builds `P_k, Q_k` from `P_0 = x, Q_0 = 1` and
/// `P_{j+1} = P_j^2 - Q_j^2`, `Q_{j+1} = 2 P_j Q_j`.
pub fn rational_iterate_capped(k: usize, cap: usize) -> Result<RationalIterate, DynamicsError> {
    if k > cap {
        return Err(DynamicsError::DepthCap { requested: k, cap });
    }
    Ok(iterates_up_to(k).pop().expect("k + 1 iterates"))
}

fn iterates_up_to(k: usize) -> Vec<RationalIterate> {
    let two = BigInt::from(2);
    let mut out = Vec::with_capacity(k + 1);
    let mut p = IntPoly::x();
    let mut q = IntPoly::one();
    out.push(RationalIterate {
        k: 0,
        numerator: p.clone(),
        denominator: q.clone(),
    });
    for level in 1..=k {
        let next_p = p.mul(&p).sub(&q.mul(&q));
        let next_q = p.mul(&q).scale(&two);
        p = next_p;
        q = next_q;
        out.push(RationalIterate {
            k: level,
            numerator: p.clone(),
            denominator: q.clone(),
        });
    }
    out
}

/// One point of `A_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExceptionalRoot {
    /// Nearest double to the root.
    pub value: f64,
    /// Outward-rounded isolating interval.
    pub lo: f64,
    pub hi: f64,
    /// Exact certificate: a dyadic value or an isolating dyadic interval.
    pub certificate: RealRoot,
    /// The orbit hits the pole exactly at this step.
    pub level: usize,
}

/// `A_k`: initial points whose orbit under `φ_{0,1}` hits `0` within `k` steps.
#[derive(Debug, Clone, PartialEq)]
pub struct ExceptionalSet {
    pub k: usize,
    pub roots: Vec<ExceptionalRoot>,
}

impl ExceptionalSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.value).collect()
    }

    /// True when some root lies within `tol` of `x`.
    pub fn contains_approx(&self, x: f64, tol: f64) -> bool {
        self.roots.iter().any(|r| (r.value - x).abs() <= tol)
    }

    /// For every root, the step at which its orbit provably reaches the pole.
    ///
    /// Dyadic roots are iterated in exact rational arithmetic. Isolated roots
    /// are pushed forward as outward-rounded double intervals: `φ_{0,1}` is
    /// increasing on each side of `0`, so the image of an interval avoiding
    /// `0` lies between the rounded-out endpoint images. The entry is `None`
    /// if no image within `k` steps contains `0`.
    pub fn pole_arrival_steps(&self) -> Vec<Option<usize>> {
        self.roots
            .iter()
            .map(|r| match &r.certificate {
                RealRoot::Exact(x) => exact_arrival(&x.to_rational(), self.k),
                RealRoot::Isolated { .. } => interval_arrival(r.lo, r.hi, self.k),
            })
            .collect()
    }
}

fn boole_exact(x: &BigRational) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    let two = BigRational::from_integer(BigInt::from(2));
    (x * x - BigRational::from_integer(BigInt::from(1))) / (two * x)
}

fn exact_arrival(x0: &BigRational, k: usize) -> Option<usize> {
    let mut x = x0.clone();
    for step in 0..=k {
        if x.is_zero() {
            return Some(step);
        }
        x = boole_exact(&x);
    }
    None
}

/// Lower bound of `x/2 - 1/(2x)`; each rounded operation is pushed outward.
fn boole_down(x: f64) -> f64 {
    (0.5 * x - (0.5 / x).next_up()).next_down()
}

fn boole_up(x: f64) -> f64 {
    (0.5 * x - (0.5 / x).next_down()).next_up()
}

fn interval_arrival(mut lo: f64, mut hi: f64, k: usize) -> Option<usize> {
    for step in 0..=k {
        if lo <= 0.0 && hi >= 0.0 {
            return Some(step);
        }
        if !lo.is_finite() || !hi.is_finite() {
            return None;
        }
        (lo, hi) = (boole_down(lo), boole_up(hi));
    }
    None
}

pub fn exceptional_set(k: usize) -> Result<ExceptionalSet, DynamicsError> {
    exceptional_set_capped(k, DEFAULT_DEPTH_CAP)
}

/// Enumerate `A_k` as the union of the real roots of `P_0, ..., P_k`.
pub fn exceptional_set_capped(k: usize, cap: usize) -> Result<ExceptionalSet, DynamicsError> {
    if k == 0 {
        return Err(DynamicsError::Domain(
            "exceptional set depth must be at least 1".into(),
        ));
    }
    if k > cap {
        return Err(DynamicsError::DepthCap { requested: k, cap });
    }
    let mut roots = Vec::new();
    for it in iterates_up_to(k) {
        let p = &it.numerator;
        for root in isolate_real_roots(p)? {
            let refined = refine_root(p, &root, REFINEMENT_STEPS);
            let (value, lo, hi) = match &refined {
                RealRoot::Exact(x) => {
                    let v = x.to_f64();
                    (v, v, v)
                }
                RealRoot::Isolated { lo, hi } => {
                    (lo.midpoint(hi).to_f64(), lo.to_f64_down(), hi.to_f64_up())
                }
            };
            roots.push(ExceptionalRoot {
                value,
                lo,
                hi,
                certificate: refined,
                level: it.k,
            });
        }
    }
    // levels have disjoint root sets, so no deduplication is needed beyond sorting
    roots.sort_by(|x, y| x.value.total_cmp(&y.value));
    Ok(ExceptionalSet { k, roots })
}

impl Serialize for ExceptionalSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(3))?;
        m.serialize_entry("k", &self.k)?;
        m.serialize_entry("roots", &self.values())?;
        let intervals: Vec<[f64; 2]> = self.roots.iter().map(|r| [r.lo, r.hi]).collect();
        m.serialize_entry("isolating_intervals", &intervals)?;
        m.end()
    }
}
