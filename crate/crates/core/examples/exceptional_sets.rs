//! Enumerate the initial points whose orbit under the standard Boole map hits
//! the pole within `k` steps, and check them against the closed form
//! `cot(π (2j + 1) / 2^(ℓ + 1))` coming from the angle-doubling conjugacy.

use std::time::Instant;

use boole_lyapunov::dynamics::exceptional_set;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(6);
    for depth in 1..=k {
        let start = Instant::now();
        let set = exceptional_set(depth)?;
        let arrivals = set.pole_arrival_steps();
        let verified = arrivals.iter().filter(|s| s.is_some()).count();
        println!(
            "A_{depth}: {} points, {verified} certified to reach the pole, {:.3}s",
            set.len(),
            start.elapsed().as_secs_f64()
        );
    }
    let a2 = exceptional_set(2)?;
    println!("A_2 = {:?}", a2.values());
    Ok(())
}
