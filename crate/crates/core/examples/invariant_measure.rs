//! Push a Cauchy(a, b) sample through the map once and compare the image with
//! the same law using the Kolmogorov-Smirnov statistic.

use boole_lyapunov::dynamics::BooleMap;
use boole_lyapunov::measures::{cauchy_sample, ks_statistic, CauchyDist};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 100_000;
    for (seed, (a, b)) in [(0.0, 1.0), (2.0, 0.5), (-10.0, 3.0)]
        .into_iter()
        .enumerate()
    {
        let map = BooleMap::new(a, b)?;
        let dist = CauchyDist::new(a, b)?;
        let sample = cauchy_sample(&dist, 2024 + seed as u64, n)?;
        let image: Vec<f64> = sample.iter().map(|x| map.apply(*x)).collect();
        let before = ks_statistic(&sample, &dist)?;
        let after = ks_statistic(&image, &dist)?;
        println!(
            "a={a:>5} b={b:<4} D(sample)={:.5} D(image)={:.5} critical={:.5} preserved: {}",
            before.statistic, after.statistic, after.critical_01, after.pass
        );
    }

    // A law that is not invariant is moved visibly.
    let map = BooleMap::standard();
    let wrong = CauchyDist::new(0.0, 3.0)?;
    let image: Vec<f64> = cauchy_sample(&wrong, 1, n)?
        .iter()
        .map(|x| map.apply(*x))
        .collect();
    let report = ks_statistic(&image, &wrong)?;
    println!(
        "Cauchy(0,3) under the standard map: D={:.4} (pass: {})",
        report.statistic, report.pass
    );
    Ok(())
}
