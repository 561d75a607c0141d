//! G(t) = ∫_0^∞ ln(1 + t/x²) / (π(1 + x²)) dx on a grid, with G'(t) computed
//! by the closed form, by differentiating under the integral and by a central
//! difference.

use boole_lyapunov::quadrature::{
    g_prime_closed, g_prime_leibniz, g_prime_numeric, g_value, sqrt_t_integral,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = 1e-11;
    println!(
        "{:>5} {:>14} {:>14} {:>14} {:>14}",
        "t", "G(t)", "G' closed", "G' leibniz", "G' diff"
    );
    for i in 0..10 {
        let t = 0.05 + i as f64 / 10.0;
        let g = g_value(t, tol)?;
        let closed = g_prime_closed(t)?;
        let under = g_prime_leibniz(t, tol)?;
        let diff = g_prime_numeric(t, 1e-4, tol)?;
        println!(
            "{t:>5.2} {:>14.10} {closed:>14.10} {:>14.10} {diff:>14.10}",
            g.value, under.value
        );
    }
    let s = sqrt_t_integral(0.25, tol)?;
    println!(
        "\n√t substitution at t = 0.25: {:.12} (error estimate {:.1e})",
        s.value, s.error_estimate
    );
    Ok(())
}
