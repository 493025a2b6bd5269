//! The curve `ς̄` through `x₀` that deforms the first cusp only: the
//! intersection of `Ω_{g,k}` with `{x₂ = x₃, x_{12i+1} = x_{12i+2} = x_{12i+3}}`
//! (`i = 1..k−1`), parameterized linearly by `x₁ − x₇ = 4 sin ᾱ · t`.
//! The linear pin makes `ẍ₁ = ẍ₇` automatic and matches `ς̄′(0)`.

use super::filling::{solve_constrained, Constraint};
use super::{solve_complete, varsigma_derivatives, AngleVector, GKSignature};
use crate::error::Result;

fn constraints(sig: GKSignature, pin: f64) -> Vec<Constraint> {
    let eq = |a: usize, b: usize| Constraint::Linear { terms: vec![(a, 1.0), (b, -1.0)], rhs: 0.0 };
    let mut cs = vec![eq(1, 2)];
    for i in 1..sig.k() {
        cs.push(eq(12 * i, 12 * i + 1));
        cs.push(eq(12 * i + 1, 12 * i + 2));
    }
    cs.push(Constraint::Linear { terms: vec![(0, 1.0), (6, -1.0)], rhs: pin });
    cs
}

/// The point `ς̄(t)`, solved to `‖R‖∞ < 1e−13`.
pub fn varsigma_curve(sig: GKSignature, t: f64) -> Result<AngleVector> {
    let (first, second) = varsigma_derivatives(sig)?;
    let x0 = solve_complete(sig)?.x0;
    let guess: Vec<f64> =
        x0.coords().iter().zip(first.iter().zip(&second)).map(|(x, (d1, d2))| x + t * d1 + 0.5 * t * t * d2).collect();
    varsigma_curve_in(sig, t, &guess)
}

/// As [`varsigma_curve`], starting Newton from `guess`.
pub fn varsigma_curve_in(sig: GKSignature, t: f64, guess: &[f64]) -> Result<AngleVector> {
    let s = solve_complete(sig)?.alpha_bar.value().sin();
    solve_constrained(sig, constraints(sig, 4.0 * s * t), guess, 1e-13, 40)
}
