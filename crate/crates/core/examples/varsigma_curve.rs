//! The curve ς̄ through x₀ that deforms only the first cusp: compare its
//! finite-difference velocity and acceleration with the closed forms, and
//! watch the Dehn coefficients (0, q) run off to infinity as t → 0.

use mgk::deformation::{dehn_coefficients, varsigma_curve, varsigma_derivatives, GKSignature};

fn main() -> mgk::Result<()> {
    let sig = GKSignature::new(2, 1)?;
    let (first, second) = varsigma_derivatives(sig)?;
    let h = 1e-3;
    let (xm, x0, xp) = (varsigma_curve(sig, -h)?, varsigma_curve(sig, 0.0)?, varsigma_curve(sig, h)?);
    println!("{:>4} {:>14} {:>14} {:>14} {:>14}", "x_n", "ẋ (fd)", "ẋ", "ẍ (fd)", "ẍ");
    for m in 0..sig.dim() {
        let (a, b, c) = (xm.coords()[m], x0.coords()[m], xp.coords()[m]);
        println!(
            "{:>4} {:>14.8} {:>14.8} {:>14.8} {:>14.8}",
            m + 1,
            (c - a) / (2.0 * h),
            first[m],
            (c - 2.0 * b + a) / (h * h),
            second[m]
        );
    }
    for t in [0.2, 0.1, 0.05, 0.02] {
        let x = varsigma_curve(sig, t)?;
        let (p, q) = dehn_coefficients(&x, 1)?.finite().expect("deformed cusp");
        println!("t = {t:<5} coefficients ({p:+.3e}, {q:+.6})");
    }
    Ok(())
}
