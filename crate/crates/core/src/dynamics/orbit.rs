use serde::Serialize;

use super::{BooleMap, DynamicsError};

/// A finite piece of the forward orbit `x_k = φ^(k)(x0)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Orbit {
    pub map: BooleMap,
    pub x0: f64,
    pub points: Vec<f64>,
    /// First index with `|x_k - a| < pole_tolerance`.
    pub pole_hit: Option<usize>,
    /// Set when a point overflowed; `points` then stops before it.
    pub truncated: bool,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Compute `x_0, ..., x_n`.
///
/// Points within `pole_tolerance` of the pole are flagged but never altered;
/// only an exact hit uses the `φ(a) = a` convention.
pub fn iterate_orbit(
    map: &BooleMap,
    x0: f64,
    n: usize,
    pole_tolerance: f64,
) -> Result<Orbit, DynamicsError> {
    if n == 0 {
        return Err(DynamicsError::Domain(
            "orbit length must be at least 1".into(),
        ));
    }
    if !x0.is_finite() {
        return Err(DynamicsError::Domain(format!(
            "non-finite initial point {x0}"
        )));
    }
    if !(pole_tolerance > 0.0) {
        return Err(DynamicsError::Domain(format!(
            "pole tolerance must be positive, got {pole_tolerance}"
        )));
    }

    let mut points = Vec::with_capacity(n + 1);
    let mut pole_hit = None;
    let mut truncated = false;
    let mut x = x0;
    for k in 0..=n {
        if !x.is_finite() {
            truncated = true;
            break;
        }
        if pole_hit.is_none() && (x - map.a()).abs() < pole_tolerance {
            pole_hit = Some(k);
        }
        points.push(x);
        x = map.apply(x);
    }

    Ok(Orbit {
        map: *map,
        x0,
        points,
        pole_hit,
        truncated,
    })
}
