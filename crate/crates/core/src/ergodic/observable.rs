use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::sync::Arc;

use super::ErgodicError;
use crate::dynamics::BooleMap;
use crate::quadrature::Quadrature;

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// A real function of one real variable to be averaged along orbits.
#[derive(Clone)]
pub struct Observable {
    pub name: String,
    func: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    /// Why the function is integrable against the relevant Cauchy law.
    pub integrable_note: String,
    /// Known value of the space average, when there is one.
    pub target: Option<f64>,
}

impl fmt::Debug for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Observable")
            .field("name", &self.name)
            .field("target", &self.target)
            .finish_non_exhaustive()
    }
}

impl Observable {
    pub fn new<F>(name: impl Into<String>, func: F, integrable_note: impl Into<String>) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            func: Arc::new(func),
            integrable_note: integrable_note.into(),
            target: None,
        }
    }

    pub fn with_target(mut self, target: f64) -> Self {
        self.target = Some(target);
        self
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.func)(x)
    }

    pub fn constant(c: f64) -> Self {
        Self::new(format!("constant({c})"), move |_| c, "bounded").with_target(c)
    }

    /// `1_{x > 0}`; its average under Cauchy(a, b) is `1/2 + arctan(a/b)/π`.
    pub fn indicator_positive(a: f64, b: f64) -> Self {
        Self::new(
            "indicator_positive",
            |x| if x > 0.0 { 1.0 } else { 0.0 },
            "bounded",
        )
        .with_target(0.5 + (a / b).atan() / PI)
    }

    /// `ln φ'_{a,b}(x)`, set to `0` at the pole.
    pub fn lyapunov(map: BooleMap) -> Self {
        Self::new(
            format!("lyapunov({},{})", map.a(), map.b()),
            move |x| map.log_derivative(x),
            "ln φ' grows like 2 ln(b/|x-a|) near the pole, which is integrable, \
             and is bounded away from it",
        )
        .with_target(LN_2)
    }

    /// `bπ(((u-a)/b)² + 1) · N(0,1) density at u`; averages to 1.
    pub fn gauss_weighted(a: f64, b: f64) -> Self {
        Self::new(
            format!("gauss_weighted({a},{b})"),
            move |u: f64| {
                let g = (-0.5 * u * u).exp() * INV_SQRT_2PI;
                if g == 0.0 {
                    return 0.0;
                }
                let z = (u - a) / b;
                b * PI * (z * z + 1.0) * g
            },
            "f divided by the Cauchy density is the standard normal density",
        )
        .with_target(1.0)
    }

    /// `π((u-a)² + 1) · u · N(a,1) density at u`; averages to `a` under
    /// Cauchy(a, 1).
    pub fn mean_extractor(a: f64) -> Self {
        Self::new(
            format!("mean_extractor({a})"),
            move |u: f64| {
                let d = u - a;
                let g = (-0.5 * d * d).exp() * INV_SQRT_2PI;
                if g == 0.0 {
                    return 0.0;
                }
                PI * (d * d + 1.0) * u * g
            },
            "|f| divided by the Cauchy density is |u| times a normal density, \
             with integral at most a² + 2",
        )
        .with_target(a)
    }

    /// `π(u² + 1) h_η(u)`; under Cauchy(a, 1) it averages to
    /// `E[(1 + η²)/(1 + (η - a)²)]`.
    pub fn density_ratio(a: f64, eta: EtaLaw) -> Result<Self, ErgodicError> {
        let target = eta.ratio_expectation(a)?;
        Ok(Self::new(
            format!("density_ratio({a},{})", eta.label()),
            move |u| {
                let h = eta.density(u);
                if h == 0.0 {
                    return 0.0;
                }
                PI * (u * u + 1.0) * h
            },
            "the average is E[(1 + η²)/(1 + (η - a)²)] <= E(1 + η²), finite when E(η²) is",
        )
        .with_target(target))
    }
}

/// The law of `η` in the density-ratio observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EtaLaw {
    Normal { mean: f64, sd: f64 },
}

impl EtaLaw {
    pub const fn standard_normal() -> Self {
        Self::Normal { mean: 0.0, sd: 1.0 }
    }

    pub fn label(&self) -> String {
        match *self {
            Self::Normal { mean, sd } if mean == 0.0 && sd == 1.0 => "normal".into(),
            Self::Normal { mean, sd } => format!("normal({mean},{sd})"),
        }
    }

    #[inline]
    pub fn density(&self, u: f64) -> f64 {
        match *self {
            Self::Normal { mean, sd } => {
                let z = (u - mean) / sd;
                (-0.5 * z * z).exp() * INV_SQRT_2PI / sd
            }
        }
    }

    pub fn center(&self) -> f64 {
        match *self {
            Self::Normal { mean, .. } => mean,
        }
    }

    /// `E(1 + η²)`.
    pub fn second_moment_plus_one(&self) -> f64 {
        match *self {
            Self::Normal { mean, sd } => 1.0 + mean * mean + sd * sd,
        }
    }

    /// `E[(1 + η²)/(1 + (η - a)²)]` by quadrature.
    pub fn ratio_expectation(&self, a: f64) -> Result<f64, ErgodicError> {
        let r = Quadrature::default()
            .real_line(
                |u| {
                    let h = self.density(u);
                    if h == 0.0 {
                        return 0.0;
                    }
                    let d = u - a;
                    (1.0 + u * u) / (1.0 + d * d) * h
                },
                self.center(),
                1e-12,
            )?
            .require_converged()?;
        Ok(r.value)
    }
}

/// Every built-in observable, parameterised by the map `(a, b)`.
pub fn builtin_observables(a: f64, b: f64) -> Result<Vec<Observable>, ErgodicError> {
    let map = BooleMap::new(a, b)?;
    Ok(vec![
        Observable::constant(1.0),
        Observable::indicator_positive(a, b),
        Observable::lyapunov(map),
        Observable::gauss_weighted(a, b),
        keep_target_if(Observable::mean_extractor(a), b == 1.0),
        keep_target_if(
            Observable::density_ratio(a, EtaLaw::standard_normal())?,
            b == 1.0,
        ),
    ])
}

/// Targets are space averages under one specific Cauchy law; drop the target
/// when the orbit samples a different one.
fn keep_target_if(mut obs: Observable, valid: bool) -> Observable {
    if !valid {
        obs.target = None;
    }
    obs
}

/// Names accepted by [`observable_by_name`].
pub const OBSERVABLE_NAMES: [&str; 6] = [
    "constant",
    "indicator_positive",
    "lyapunov",
    "gauss_weighted",
    "mean_extractor",
    "density_ratio",
];

/// Resolve `name` or `name(arg, ...)`. Missing arguments default to the map
/// parameters `a` and `b`. The target is kept only when it is the average
/// under Cauchy(a, b).
///
/// `constant(c)`, `lyapunov(a,b)`, `gauss_weighted(a,b)`, `mean_extractor(a)`,
/// `density_ratio(a)` and `density_ratio(a,normal)` are recognised.
pub fn observable_by_name(spec: &str, a: f64, b: f64) -> Result<Observable, ErgodicError> {
    let unknown = || ErgodicError::UnknownObservable(spec.to_string());
    let spec_trim = spec.trim();
    let (name, args) = match spec_trim.find('(') {
        Some(open) => {
            let inner = spec_trim[open + 1..]
                .strip_suffix(')')
                .ok_or_else(unknown)?;
            let args: Vec<&str> = inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            (spec_trim[..open].trim(), args)
        }
        None => (spec_trim, Vec::new()),
    };
    let num = |i: usize, default: f64| -> Result<f64, ErgodicError> {
        match args.get(i) {
            None => Ok(default),
            Some(s) => s.parse::<f64>().map_err(|_| unknown()),
        }
    };
    let max_args = |n: usize| {
        if args.len() > n {
            Err(unknown())
        } else {
            Ok(())
        }
    };

    match name {
        "constant" => {
            max_args(1)?;
            Ok(Observable::constant(num(0, 1.0)?))
        }
        "indicator_positive" => {
            max_args(0)?;
            Ok(Observable::indicator_positive(a, b))
        }
        "lyapunov" => {
            max_args(2)?;
            let (oa, ob) = (num(0, a)?, num(1, b)?);
            Ok(keep_target_if(
                Observable::lyapunov(BooleMap::new(oa, ob)?),
                (oa, ob) == (a, b),
            ))
        }
        "gauss_weighted" => {
            max_args(2)?;
            let (oa, ob) = (num(0, a)?, num(1, b)?);
            if !(ob > 0.0) {
                return Err(unknown());
            }
            Ok(keep_target_if(
                Observable::gauss_weighted(oa, ob),
                (oa, ob) == (a, b),
            ))
        }
        "mean_extractor" => {
            max_args(1)?;
            let oa = num(0, a)?;
            Ok(keep_target_if(
                Observable::mean_extractor(oa),
                oa == a && b == 1.0,
            ))
        }
        "density_ratio" => {
            max_args(2)?;
            match args.get(1) {
                None | Some(&"normal") | Some(&"standard_normal") => {}
                Some(_) => return Err(unknown()),
            }
            let oa = num(0, a)?;
            let obs = Observable::density_ratio(oa, EtaLaw::standard_normal())?;
            Ok(keep_target_if(obs, oa == a && b == 1.0))
        }
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lyapunov_term_vanishes_where_derivative_is_one() {
        let map = BooleMap::new(2.0, 3.0).unwrap();
        let obs = Observable::lyapunov(map);
        assert!(obs.eval(5.0).abs() < 1e-16);
        assert_eq!(obs.eval(2.0), 0.0);
    }

    #[test]
    fn targets_only_for_the_sampled_law() {
        let with: Vec<bool> = builtin_observables(0.5, 1.0)
            .unwrap()
            .iter()
            .map(|o| o.target.is_some())
            .collect();
        assert!(with.iter().all(|t| *t));
        let scaled = builtin_observables(0.5, 2.0).unwrap();
        assert!(scaled[4].target.is_none() && scaled[5].target.is_none());
        assert!(scaled[3].target.is_some());
        assert!(observable_by_name("lyapunov(1,1)", 0.0, 1.0)
            .unwrap()
            .target
            .is_none());
        assert_eq!(
            observable_by_name("mean_extractor", 2.0, 1.0)
                .unwrap()
                .target,
            Some(2.0)
        );
        assert!(observable_by_name("mean_extractor(3)", 2.0, 1.0)
            .unwrap()
            .target
            .is_none());
    }

    #[test]
    fn observables_are_finite_everywhere() {
        let obs = builtin_observables(1.5, 0.5).unwrap();
        for o in &obs {
            for x in [
                -1e300,
                -1e10,
                -1.0,
                0.0,
                1e-300,
                1.5,
                1.5 + 1e-300,
                7.0,
                1e300,
            ] {
                assert!(o.eval(x).is_finite(), "{} at {x}", o.name);
            }
        }
    }

    #[test]
    fn lookup_by_name() {
        let o = observable_by_name("gauss_weighted", 0.0, 1.0).unwrap();
        assert_eq!(o.name, "gauss_weighted(0,1)");
        let o = observable_by_name("gauss_weighted(2, 0.5)", 0.0, 1.0).unwrap();
        assert_eq!(o.name, "gauss_weighted(2,0.5)");
        let o = observable_by_name("mean_extractor(2)", 2.0, 1.0).unwrap();
        assert_eq!(o.target, Some(2.0));
        let o = observable_by_name("constant(3.5)", 0.0, 1.0).unwrap();
        assert_eq!(o.eval(-4.0), 3.5);
        let o = observable_by_name("density_ratio(0,normal)", 0.0, 1.0).unwrap();
        assert!((o.target.unwrap() - 1.0).abs() < 1e-11);
        for bad in [
            "nope",
            "lyapunov(1,2,3)",
            "constant(x)",
            "gauss_weighted(0,-1)",
            "lyapunov(0",
        ] {
            assert!(
                matches!(
                    observable_by_name(bad, 0.0, 1.0),
                    Err(ErgodicError::UnknownObservable(_))
                ),
                "{bad}"
            );
        }
        assert!(observable_by_name("lyapunov(0,0)", 0.0, 1.0).is_err());
    }

    #[test]
    fn indicator_target() {
        assert_eq!(Observable::indicator_positive(0.0, 1.0).target, Some(0.5));
        let t = Observable::indicator_positive(1.0, 1.0).target.unwrap();
        assert!((t - 0.75).abs() < 1e-15);
    }

    #[test]
    fn ratio_expectation_bounds() {
        let eta = EtaLaw::standard_normal();
        for a in [-10.0, -1.0, 0.5, 3.0] {
            let e = eta.ratio_expectation(a).unwrap();
            assert!(e > 0.0 && e <= eta.second_moment_plus_one());
        }
    }
}
