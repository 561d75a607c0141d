//! Orbits of a shifted and scaled Boole map, the same orbits read through the
//! conjugacy to the standard map, and complex Newton iterations that settle on
//! one of the two complex roots `a ± ib`.

use boole_lyapunov::dynamics::{iterate_orbit, newton_iterate_complex, newton_step_real, BooleMap};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let map = BooleMap::new(1.5, 0.5)?;
    let orbit = iterate_orbit(&map, 2.3, 8, 1e-12)?;
    let standard = BooleMap::standard();
    println!("k  x_k                  standard coordinate");
    for (k, x) in orbit.points.iter().enumerate() {
        println!("{k:<2} {x:<20.12} {:.12}", map.to_standard(*x));
    }

    let x = 2.3;
    println!("\nmap step    {:.17}", map.eval(x)?);
    println!("newton step {:.17}", newton_step_real(&map, x)?);

    // 1 -> 0 lands on the pole of the standard map, which is then fixed.
    let to_pole = iterate_orbit(&standard, 1.0, 3, 1e-12)?;
    println!(
        "\norbit of 1: {:?}, pole hit at step {:?}",
        to_pole.points, to_pole.pole_hit
    );

    for z0 in [Complex64::new(3.0, 0.2), Complex64::new(-4.0, -1e-4)] {
        let out = newton_iterate_complex(&map, z0, 200, 1e-12)?;
        println!(
            "newton from {z0}: {} after {} steps (converged: {})",
            out.limit, out.iterations, out.converged
        );
    }
    Ok(())
}
