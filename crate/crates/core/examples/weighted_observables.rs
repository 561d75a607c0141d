//! Time averages of observables whose space average is known, with a Monte
//! Carlo estimate of the same space average beside each one.

use boole_lyapunov::dynamics::BooleMap;
use boole_lyapunov::ergodic::{
    birkhoff_average, builtin_observables, cauchy_start, density_ratio_normalization,
    monte_carlo_expectation, uniform_grid, EtaLaw,
};
use boole_lyapunov::measures::CauchyDist;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (a, b) = (0.5, 2.0);
    let n = 2_000_000;
    let map = BooleMap::new(a, b)?;
    let dist = CauchyDist::new(a, b)?;
    let x0 = cauchy_start(&map, 1);
    println!(
        "{:<28} {:>10} {:>10} {:>10}",
        "observable", "time", "space", "target"
    );
    for obs in builtin_observables(a, b)? {
        let time = birkhoff_average(&map, &obs, x0, n, 0)?;
        let space = monte_carlo_expectation(&dist, &obs, 2, n)?;
        let target = obs.target.map_or("-".to_string(), |t| format!("{t:.6}"));
        println!(
            "{:<28} {:>10.6} {:>10.6} {:>10}",
            obs.name, time.estimate, space.estimate, target
        );
    }

    // g(a) normalizes the density ratio against a normal law.
    let eta = EtaLaw::standard_normal();
    let grid = uniform_grid(-4.0, 4.0, 9);
    let g = density_ratio_normalization(&grid, &eta)?;
    println!("\ng(a) for eta = {}", eta.label());
    for (x, v) in grid.iter().zip(&g) {
        println!("  a={x:>5.1}  g={v:.6}");
    }
    Ok(())
}
