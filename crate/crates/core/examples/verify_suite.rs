//! Run the built-in numerical checks and print each outcome.

use boole_lyapunov::verify::{run_verification, VerifyConfig};

fn main() {
    let config = VerifyConfig::default();
    let report = run_verification(&config);
    for (name, c) in &report.checks {
        let mark = if c.pass { "ok  " } else { "FAIL" };
        println!(
            "{mark} {name:<44} value {:<22?} |err| {:.1e} (tol {:.0e})",
            c.value, c.abs_error, c.tolerance
        );
    }
    let failures = report.failures();
    if failures.is_empty() {
        println!("\nall checks passed");
    } else {
        println!("\nfailed: {}", failures.join(", "));
        std::process::exit(1);
    }
}
