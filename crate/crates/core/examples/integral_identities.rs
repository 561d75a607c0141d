//! Quadrature checks: four equivalent integral forms of one constant, the
//! change of variables x -> x - 1/x preserving Lebesgue measure, and ln 2 as an
//! integral of ln φ' against the invariant Cauchy density.

use std::f64::consts::{LN_2, PI};

use boole_lyapunov::quadrature::{
    boole_identity_check, equivalent_forms, lyapunov_integral, lyapunov_integral_decomposed,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = 1e-10;
    for (name, r) in equivalent_forms(tol)? {
        println!(
            "{name}: {:.12} (error estimate {:.1e})",
            r.value, r.error_estimate
        );
    }

    let tests: [(&str, fn(f64) -> f64); 3] = [
        ("exp(-x²)", |x| (-x * x).exp()),
        ("1/(π(1+x²))", |x| 1.0 / (PI * (1.0 + x * x))),
        ("1/(1+x⁴)", |x| 1.0 / (1.0 + x.powi(4))),
    ];
    println!();
    for (name, f) in tests {
        let id = boole_identity_check(f, tol)?;
        println!(
            "{name:<14} ∫f = {:.12}  ∫f(x - 1/x) = {:.12}  gap {:.1e}",
            id.lhs.value, id.rhs.value, id.gap
        );
    }

    println!();
    for (a, b) in [(0.0, 1.0), (3.0, 0.1), (-2.0, 50.0)] {
        let r = lyapunov_integral(a, b, tol)?;
        println!(
            "a={a:>4} b={b:<4} ∫ ln φ' dμ = {:.12}  (ln 2 = {LN_2:.12})",
            r.value
        );
    }
    let split = lyapunov_integral_decomposed(tol)?;
    println!("via G(1): {:.12}", split.value);
    Ok(())
}
