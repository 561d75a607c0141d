use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use boole_lyapunov::dynamics::{
    exceptional_set, iterate_orbit, newton_iterate_complex, newton_step_real, rational_iterate,
    BooleMap,
};
use boole_lyapunov::ergodic::{density_ratio_normalization, EtaLaw};
use boole_lyapunov::measures::CauchyDist;
use boole_lyapunov::quadrature::{g_partial_envelope, g_partial_t, g_value, integrate_real_line};

fn standard_iterate(mut u: f64, k: usize) -> f64 {
    for _ in 0..k {
        u = if u == 0.0 { 0.0 } else { 0.5 * (u - 1.0 / u) };
    }
    u
}

fn offset() -> impl Strategy<Value = f64> {
    (-2.0f64..2.0, any::<bool>()).prop_map(|(e, neg)| {
        let m = 10f64.powf(e);
        if neg {
            -m
        } else {
            m
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn conjugacy(a in -50.0f64..50.0, b in 0.1f64..10.0, u in offset(), k in 1usize..=20) {
        let map = BooleMap::new(a, b).unwrap();
        let x0 = a + b * u;
        let orbit = iterate_orbit(&map, x0, k, 1e-12).unwrap();
        let direct = orbit.points[k];
        // conjugate from the rounded start actually used
        let via = b * standard_iterate((x0 - a) / b, k) + a;
        prop_assume!(direct.is_finite() && via.is_finite());
        let result = direct.abs().max(via.abs());
        prop_assert!((direct - via).abs() <= 1e-6 * (1.0 + result), "{direct} vs {via}");
    }

    #[test]
    fn derivative_exceeds_half(a in -1e3f64..1e3, b in 1e-3f64..1e3, d in offset()) {
        let map = BooleMap::new(a, b).unwrap();
        let x = a + d;
        prop_assume!(x != a);
        let dv = map.derivative(x).unwrap();
        prop_assert!(dv > 0.5 || (dv == 0.5 && (b / (x - a)).powi(2) < f64::EPSILON));
        let l = map.log_derivative(x);
        prop_assert!(l.is_finite() && l >= -LN_2);
    }

    #[test]
    fn complex_newton_basins(
        a in -10.0f64..10.0,
        b in 0.1f64..10.0,
        re in -20.0f64..20.0,
        log_im in -6.0f64..1.0,
        upper in any::<bool>(),
    ) {
        let map = BooleMap::new(a, b).unwrap();
        let sign = if upper { 1.0 } else { -1.0 };
        let z0 = Complex64::new(a + b * re, sign * b * 10f64.powf(log_im));
        let out = newton_iterate_complex(&map, z0, 200, 1e-10).unwrap();
        prop_assert!(out.converged);
        prop_assert!((out.limit - Complex64::new(a, sign * b)).norm() < 1e-10);
    }

    #[test]
    fn quantile_inverts_cdf(a in -100.0f64..100.0, b in 0.01f64..100.0, z in -100.0f64..100.0) {
        let d = CauchyDist::new(a, b).unwrap();
        let x = a + b * z;
        let back = d.quantile(d.cdf(x)).unwrap();
        prop_assert!((back - x).abs() <= 1e-10 * ((x - a).abs() + b), "{x} -> {back}");
    }

    #[test]
    fn cdf_inverts_quantile(p in 1e-6f64..(1.0 - 1e-6)) {
        let d = CauchyDist::new(1.0, 3.0).unwrap();
        prop_assert!((d.cdf(d.quantile(p).unwrap()) - p).abs() <= 1e-12);
    }

    #[test]
    fn envelope_dominates_partial_derivative(eps in 1e-4f64..0.5, s in 0.0f64..1.0, x in 1e-6f64..1e3) {
        let t = eps + s * (1.0 - eps);
        prop_assume!(t < 1.0);
        prop_assert!(g_partial_t(x, t).abs() <= g_partial_envelope(x, eps));
    }

    #[test]
    fn density_ratio_bounded(a in -200.0f64..200.0) {
        let g = density_ratio_normalization(&[a], &EtaLaw::standard_normal()).unwrap();
        prop_assert!(g[0] > 0.0 && g[0] <= 1.0 / PI + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn g_difference_has_closed_form(eps in 1e-3f64..1.0) {
        let g1 = g_value(1.0, 1e-11).unwrap();
        let ge = g_value(eps, 1e-11).unwrap();
        prop_assert!(((g1.value - ge.value) - (LN_2 - (1.0 + eps.sqrt()).ln())).abs() <= 1e-7);
    }
}

/// Both routes evaluate the same rational function; they may differ by the
/// rounding of their largest intermediate term.
#[test]
fn newton_step_equals_map_step() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut worst_ulps: f64 = 0.0;
    for _ in 0..1_000_000 {
        let a: f64 = rng.random_range(-100.0..100.0);
        let b: f64 = 10f64.powf(rng.random_range(-2.0..2.0));
        let x = a + b * rng.random_range(-50.0f64..50.0);
        if x == a {
            continue;
        }
        let map = BooleMap::new(a, b).unwrap();
        let newton = newton_step_real(&map, x).unwrap();
        let step = map.eval(x).unwrap();
        let d = x - a;
        let scale = [x.abs(), a.abs(), (b * b / d).abs(), step.abs()]
            .into_iter()
            .fold(0.0, f64::max);
        let ulp = scale * f64::EPSILON;
        worst_ulps = worst_ulps.max((newton - step).abs() / ulp);
    }
    assert!(
        worst_ulps <= 2.0,
        "worst difference {worst_ulps} ulp of the term scale"
    );
}

#[test]
fn rational_iterates_match_orbits() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let map = BooleMap::standard();
    for k in 0..=6 {
        let it = rational_iterate(k).unwrap();
        let mut checked = 0;
        while checked < 1000 {
            let x: f64 = rng.random_range(-20.0..20.0);
            let orbit = iterate_orbit(&map, x, k.max(1), 1e-12).unwrap();
            // stay away from the poles of every intermediate iterate
            if orbit.points[..k].iter().any(|p| p.abs() < 0.05) {
                continue;
            }
            let want = orbit.points[k];
            let got = it.evaluate(x).unwrap();
            assert!(
                (got - want).abs() <= 1e-8 * (1.0 + want.abs()),
                "k={k} x={x}: {got} vs {want}"
            );
            checked += 1;
        }
    }
}

#[test]
fn exceptional_sets_grow_and_are_symmetric() {
    let mut current = exceptional_set(1).unwrap();
    for k in 1..=6 {
        assert_eq!(current.len(), (1 << (k + 1)) - 1);
        let values = current.values();
        let mirrored: Vec<f64> = values.iter().rev().map(|v| -v).collect();
        assert_eq!(values, mirrored);
        assert!(current.contains_approx(0.0, 0.0));

        let next = exceptional_set(k + 1).unwrap();
        assert!(next.len() <= current.len() + (1 << (k + 1)));
        for r in &values {
            assert!(
                next.contains_approx(*r, 0.0),
                "k={k}: {r} missing from the next level"
            );
        }
        current = next;
    }
}

#[test]
fn cauchy_density_integrates_to_one() {
    for (a, b) in [(0.0, 1.0), (3.0, 0.01), (-7.0, 50.0)] {
        let d = CauchyDist::new(a, b).unwrap();
        let r = integrate_real_line(|x| d.pdf(x), a, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() <= 1e-10, "({a},{b}): {}", r.value);
    }
}

#[test]
fn g_nondecreasing() {
    let mut last = -1.0;
    for i in 0..50 {
        let t = i as f64 / 49.0;
        let g = g_value(t, 1e-11).unwrap().value;
        assert!(g >= last, "t={t}");
        last = g;
    }
}
