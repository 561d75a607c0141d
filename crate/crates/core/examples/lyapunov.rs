//! Time averages of ln φ' along long orbits. The estimate settles at ln 2 for
//! every parameter pair and almost every start.

use std::f64::consts::LN_2;

use boole_lyapunov::dynamics::BooleMap;
use boole_lyapunov::ergodic::{birkhoff_replicas, lyapunov_exponent};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(1_000_000);

    let run = lyapunov_exponent(&BooleMap::standard(), 0.3, n, 0)?;
    println!("running average from x0 = 0.3");
    for (k, avg) in run
        .trace
        .iter()
        .filter(|(k, _)| k.trailing_zeros() % 4 == 0 || *k == n)
    {
        println!("  {k:>10}  {avg:.6}");
    }

    println!("\nfour Cauchy starts per parameter pair, |estimate - ln 2|:");
    for (a, b) in [(0.0, 1.0), (5.0, 0.01), (-3.0, 20.0)] {
        let map = BooleMap::new(a, b)?;
        let errors: Vec<String> = birkhoff_replicas(&map, None, n, 0, 7, 4)
            .into_iter()
            .map(|r| r.map(|r| format!("{:.1e}", (r.estimate - LN_2).abs())))
            .collect::<Result<_, _>>()?;
        println!("  a={a:>4} b={b:<5} {}", errors.join("  "));
    }
    Ok(())
}
