use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::residuals::residuals_unchecked;
use super::{AngleVector, GKSignature};
use crate::error::{Error, Result};
use crate::hyptrig::Angle;

/// The complete hyperbolic structure `x₀` and its two defining angles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompleteSolution {
    pub alpha_bar: Angle,
    pub beta_bar: Angle,
    pub x0: AngleVector,
}

/// Solves the reduced system
/// `cos β = (2cos²α + 1)/3`, `6(g−k)β + 6kα = 2π`
/// and assembles the symmetric point `x₀` (all `γ = π/3`, `α = ᾱ`, `β = β̄`).
pub fn solve_complete(sig: GKSignature) -> Result<CompleteSolution> {
    let (g, k) = (sig.g() as f64, sig.k() as f64);
    let beta_of = |a: f64| (2.0 * PI - 6.0 * k * a) / (6.0 * (g - k));
    // f is increasing in α: β(α) decreases and the right-hand side decreases.
    let f = |a: f64| beta_of(a).cos() - (2.0 * a.cos().powi(2) + 1.0) / 3.0;

    // f < 0 as α → 0⁺, and f > 0 where α = β = π/(3g).
    let (mut lo, mut hi) = (0.0, PI / (3.0 * g));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    let mut a = 0.5 * (lo + hi);
    for _ in 0..3 {
        let db = -k / (g - k);
        let df = -beta_of(a).sin() * db + (4.0 / 3.0) * a.cos() * a.sin();
        let next = a - f(a) / df;
        if !(next > lo - 1e-12 && next < hi + 1e-12) {
            break;
        }
        a = next;
    }
    let b = beta_of(a);

    let mut coords = Vec::with_capacity(sig.dim());
    for _ in 0..2 * sig.k() {
        coords.extend([a; 3]);
        coords.extend([PI / 3.0; 3]);
    }
    coords.push(b);
    let x0 = AngleVector::from_raw(sig, coords);
    let residual = residuals_unchecked(&x0).iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    // Length residuals are O(cosh ℓ) in size, so rounding scales with them.
    let scale = super::residuals::boundary_target(b).max(1.0);
    if residual >= 1e-12 * scale {
        return Err(Error::Convergence { residual, iterations: 0 });
    }
    Ok(CompleteSolution { alpha_bar: Angle::new(a)?, beta_bar: Angle::new(b)?, x0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_one_cusp() {
        let sol = solve_complete(GKSignature::new(2, 1).unwrap()).unwrap();
        let (a, b) = (sol.alpha_bar.value(), sol.beta_bar.value());
        assert!((a - 0.4935).abs() < 5e-4, "ᾱ = {a}");
        assert!((b - (PI / 3.0 - a)).abs() < 1e-15);
        assert!((b.cos() - (2.0 * a.cos().powi(2) + 1.0) / 3.0).abs() < 1e-12);
    }

    #[test]
    fn angle_inequalities_hold() {
        for g in 2..8 {
            for k in 1..g {
                let sig = GKSignature::new(g, k).unwrap();
                let sol = solve_complete(sig).unwrap();
                let (a, b) = (sol.alpha_bar.value(), sol.beta_bar.value());
                assert!(a < b && b < 2.0 * a && 2.0 * a <= PI / 3.0, "{sig}: {a} {b}");
                assert!(a <= PI / 6.0);
                let sum = 6.0 * (g - k) as f64 * b + 6.0 * k as f64 * a;
                assert!((sum - 2.0 * PI).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn x0_tetrahedra_are_valid() {
        let sol = solve_complete(GKSignature::new(5, 3).unwrap()).unwrap();
        for l in 1..=6 {
            assert!(sol.x0.tetrahedron(l).is_valid());
        }
        assert!(sol.x0.compact_tetrahedron().is_valid());
    }
}
