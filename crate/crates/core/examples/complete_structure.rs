//! The complete hyperbolic structure x₀ for a range of signatures, with the
//! inequalities ᾱ < β̄ < 2ᾱ ≤ π/3 it must satisfy.

use mgk::deformation::{residuals, solve_complete, GKSignature};

fn main() -> mgk::Result<()> {
    println!("{:>8} {:>20} {:>20} {:>10}", "(g, k)", "ᾱ", "β̄", "residual");
    for g in 2..=6 {
        for k in 1..g {
            let sig = GKSignature::new(g, k)?;
            let sol = solve_complete(sig)?;
            let res = residuals(sig, &sol.x0)?.max_norm();
            println!(
                "{:>8} {:>20.15} {:>20.15} {:>10.1e}",
                sig.to_string(),
                sol.alpha_bar.value(),
                sol.beta_bar.value(),
                res
            );
        }
    }
    Ok(())
}
