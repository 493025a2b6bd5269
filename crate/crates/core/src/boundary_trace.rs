//! Holonomy of the geodesic boundary along the curve `ς̄`: the isometries
//! `A(λ, θ)` of the upper half-plane, the trace of a boundary loop built from
//! two consecutive boundary edges, and its second derivative at `x₀`.
//!
//! A non-zero second derivative while the first one vanishes certifies that
//! the hyperbolic structure on the boundary surface moves, so the boundary is
//! not isolated from the cusps.

use std::f64::consts::PI;
use std::ops::Mul;

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::deformation::{solve_complete, varsigma_curve_in, AngleVector, GKSignature};
use crate::error::{Error, Result};
use crate::hyptrig::CoshLength;

/// An orientation-preserving isometry of `H²`, represented by a matrix of
/// determinant 1 (defined up to sign).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry2(Matrix2<f64>);

impl Isometry2 {
    /// Wraps `m`, rejecting matrices whose determinant is not 1.
    pub fn new(m: Matrix2<f64>) -> Result<Self> {
        let det = m.determinant();
        let unimodular = (det - 1.0).abs() < 1e-12 * m.norm_squared().max(1.0);
        if !unimodular {
            return Err(Error::Domain(format!("determinant {det} is not 1")));
        }
        Ok(Isometry2(m))
    }

    pub fn matrix(&self) -> &Matrix2<f64> {
        &self.0
    }

    pub fn det(&self) -> f64 {
        self.0.determinant()
    }

    /// Trace of this representative; the isometry determines it up to sign.
    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    /// Möbius action `z ↦ (az + b)/(cz + d)`.
    pub fn apply(&self, z: Complex64) -> Complex64 {
        let m = &self.0;
        (z * m[(0, 0)] + m[(0, 1)]) / (z * m[(1, 0)] + m[(1, 1)])
    }

    /// Equality of the projective classes `±M`.
    pub fn same_isometry(&self, other: &Isometry2, tol: f64) -> bool {
        (self.0 - other.0).amax() <= tol || (self.0 + other.0).amax() <= tol
    }
}

impl Mul for Isometry2 {
    type Output = Isometry2;

    fn mul(self, rhs: Isometry2) -> Isometry2 {
        Isometry2(self.0 * rhs.0)
    }
}

fn check_lambda_theta(lambda: f64, theta: f64) -> Result<()> {
    if !(lambda > 1.0 && lambda.is_finite()) {
        return Err(Error::Domain(format!("λ = {lambda} must exceed 1")));
    }
    if !(theta > 0.0 && theta < 2.0 * PI) {
        return Err(Error::Domain(format!("θ = {theta} outside (0, 2π)")));
    }
    Ok(())
}

/// `A(λ, θ)`: maps the half-geodesic from `i` to `∞` onto the half-geodesic
/// from `λi` that makes an angle `θ` with the segment `[i, λi]` at `λi`.
#[allow(non_snake_case)]
pub fn mobius_A(lambda: f64, theta: f64) -> Result<Isometry2> {
    check_lambda_theta(lambda, theta)?;
    let (s, c) = (0.5 * theta).sin_cos();
    let r = lambda.sqrt();
    Ok(Isometry2(Matrix2::new(r * s, -r * c, c / r, s / r)))
}

/// Trace of `A(λ, η)·A(λ, ζ)`, which equals
/// `(λ + λ⁻¹) sin(η/2) sin(ζ/2) − 2 cos(η/2) cos(ζ/2)`.
pub fn trace_gamma(lambda: f64, eta: f64, zeta: f64) -> Result<f64> {
    Ok((mobius_A(lambda, eta)? * mobius_A(lambda, zeta)?).trace())
}

/// Values and second derivatives at `t = 0` of the data entering the trace
/// (all first derivatives vanish there, and so does `λ̈`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceInput {
    pub lambda0: f64,
    pub eta0: f64,
    pub zeta0: f64,
    pub eta_dd: f64,
    pub zeta_dd: f64,
    pub delta: u8,
}

impl TraceInput {
    pub fn new(lambda0: f64, eta0: f64, zeta0: f64, eta_dd: f64, zeta_dd: f64, delta: u8) -> Result<Self> {
        check_lambda_theta(lambda0, eta0)?;
        check_lambda_theta(lambda0, zeta0)?;
        check_delta(delta)?;
        if !(eta_dd.is_finite() && zeta_dd.is_finite()) {
            return Err(Error::Domain("second derivatives must be finite".into()));
        }
        Ok(TraceInput { lambda0, eta0, zeta0, eta_dd, zeta_dd, delta })
    }

    /// The trace along the quadratic model `η₀ + η̈t²/2`, `ζ₀ + ζ̈t²/2`.
    pub fn trace_at(&self, t: f64) -> Result<f64> {
        let tt = 0.5 * t * t;
        trace_gamma(self.lambda0, self.eta0 + self.eta_dd * tt, self.zeta0 + self.zeta_dd * tt)
    }
}

fn check_delta(delta: u8) -> Result<()> {
    if delta > 1 {
        return Err(Error::Domain(format!("δ = {delta} must be 0 or 1")));
    }
    Ok(())
}

/// `tr̈(0)` from
/// `2tr̈ = η̈[Λ cos(η/2) sin(ζ/2) + 2 sin(η/2) cos(ζ/2)]
///      + ζ̈[Λ sin(η/2) cos(ζ/2) + 2 cos(η/2) sin(ζ/2)]`, `Λ = λ + λ⁻¹`.
pub fn trace_second_derivative(inp: &TraceInput) -> f64 {
    let big = inp.lambda0 + inp.lambda0.recip();
    let (se, ce) = (0.5 * inp.eta0).sin_cos();
    let (sz, cz) = (0.5 * inp.zeta0).sin_cos();
    let with_eta = big * ce * sz + 2.0 * se * cz;
    let with_zeta = big * se * cz + 2.0 * ce * sz;
    0.5 * (inp.eta_dd * with_eta + inp.zeta_dd * with_zeta)
}

/// Closed form of `tr̈(0)` when `ζ̈ = −η̈`:
/// `(η̈/2)(λ + λ⁻¹ − 2) sin((ζ − η)/2)`.
pub fn trace_second_derivative_opposite(inp: &TraceInput) -> f64 {
    0.5 * inp.eta_dd * (inp.lambda0 + inp.lambda0.recip() - 2.0) * (0.5 * (inp.zeta0 - inp.eta0)).sin()
}

/// Positivity of `(λ + λ⁻¹) cos(η/2) sin(ζ/2) + 2 sin(η/2) cos(ζ/2)`, the
/// coefficient of `η̈` (which alone survives when `ζ̈ = 0`).
pub fn stima_inequality(lambda0: f64, eta0: f64, zeta0: f64) -> bool {
    let big = lambda0 + lambda0.recip();
    big * (0.5 * eta0).cos() * (0.5 * zeta0).sin() + 2.0 * (0.5 * eta0).sin() * (0.5 * zeta0).cos() > 0.0
}

/// `exp` of the length of a boundary edge with dihedral angle `β` at every
/// edge, `cosh ℓ = cos β/(1 − cos β)`.
fn boundary_lambda(beta: f64) -> Result<f64> {
    if !(beta > 0.0 && beta < PI / 3.0) {
        return Err(Error::Domain(format!("β = {beta} outside (0, π/3)")));
    }
    let c = beta.cos() / (2.0 * (0.5 * beta).sin().powi(2));
    Ok(CoshLength::new(c)?.length().exp())
}

/// Open interval of admissible `r₀`: the angles `η₀` and `ζ₀` at a boundary
/// vertex must leave room for each other, `η₀ + ζ₀ < 2π`.
pub fn admissible_r0(sig: GKSignature, delta: u8) -> Result<(f64, f64)> {
    check_delta(delta)?;
    let a = solve_complete(sig)?.alpha_bar.value();
    Ok((0.0, 2.0 * PI - (6.0 + 2.0 * delta as f64) * a))
}

/// `n` evenly spaced admissible values of `r₀`, kept `margin` away from the
/// ends of the interval.
pub fn r0_grid(sig: GKSignature, delta: u8, n: usize, margin: f64) -> Result<Vec<f64>> {
    let (lo, hi) = admissible_r0(sig, delta)?;
    let (lo, hi) = (lo + margin, hi - margin);
    if n == 0 || lo >= hi {
        return Err(Error::Domain(format!("no room for {n} grid points with margin {margin}")));
    }
    if n == 1 {
        return Ok(vec![0.5 * (lo + hi)]);
    }
    Ok((0..n).map(|m| lo + (hi - lo) * m as f64 / (n - 1) as f64).collect())
}

/// Trace data at `x₀` along `ς̄`: `λ₀` from the boundary-edge length,
/// `η₀ = 2ᾱ`, `ζ₀ = (4 + 2δ)ᾱ + r₀`, `η̈ = −8 cos ᾱ sin ᾱ`, and
/// `ζ̈ = −η̈` (`δ = 0`) or `0` (`δ = 1`).
pub fn varsigma_trace_data(sig: GKSignature, delta: u8, r0: f64) -> Result<TraceInput> {
    let (_, hi) = admissible_r0(sig, delta)?;
    if !(r0 > 0.0 && r0 < hi) {
        return Err(Error::Domain(format!("r₀ = {r0} outside the admissible range (0, {hi})")));
    }
    let sol = solve_complete(sig)?;
    let a = sol.alpha_bar.value();
    let eta_dd = -8.0 * a.cos() * a.sin();
    let zeta_dd = if delta == 0 { -eta_dd } else { 0.0 };
    TraceInput::new(
        boundary_lambda(sol.beta_bar.value())?,
        2.0 * a,
        (4.0 + 2.0 * delta as f64) * a + r0,
        eta_dd,
        zeta_dd,
        delta,
    )
}

/// `(λ, η, ζ)` read off a point of `Ω`: `η = x₃ + x₉`,
/// `ζ = x₁ + x₇ + x₂ + x₈ + δ(x₃ + x₉) + r₀`.
pub fn trace_angles(x: &AngleVector, delta: u8, r0: f64) -> Result<(f64, f64, f64)> {
    check_delta(delta)?;
    let eta = x.x(3) + x.x(9);
    let zeta = x.x(1) + x.x(7) + x.x(2) + x.x(8) + delta as f64 * eta + r0;
    Ok((boundary_lambda(x.beta())?, eta, zeta))
}

/// The trace of the boundary loop at the point `ς̄(t)` of the solved curve.
pub fn curve_trace(sig: GKSignature, delta: u8, r0: f64, t: f64) -> Result<f64> {
    let x0 = solve_complete(sig)?.x0;
    let guess = x0.coords().to_vec();
    let x = varsigma_curve_in(sig, t, &guess)?;
    let (lambda, eta, zeta) = trace_angles(&x, delta, r0)?;
    trace_gamma(lambda, eta, zeta)
}

/// First and second derivatives at `t = 0` of [`curve_trace`], by
/// Richardson-extrapolated central differences with base step `h`.
pub fn curve_trace_derivatives(sig: GKSignature, delta: u8, r0: f64, h: f64) -> Result<(f64, f64)> {
    let f = |t: f64| curve_trace(sig, delta, r0, t);
    let f0 = f(0.0)?;
    let (p1, m1, p2, m2) = (f(h)?, f(-h)?, f(2.0 * h)?, f(-2.0 * h)?);
    let d1 = |s: f64, p: f64, m: f64| (p - m) / (2.0 * s);
    let d2 = |s: f64, p: f64, m: f64| (p - 2.0 * f0 + m) / (s * s);
    let first = (4.0 * d1(h, p1, m1) - d1(2.0 * h, p2, m2)) / 3.0;
    let second = (4.0 * d2(h, p1, m1) - d2(2.0 * h, p2, m2)) / 3.0;
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_has_unit_determinant_and_the_right_geometry() {
        for (lambda, theta) in [(1.5, 0.3), (4.0, PI), (20.0, 5.9)] {
            let a = mobius_A(lambda, theta).unwrap();
            assert!((a.det() - 1.0).abs() < 1e-12);
            // i ↦ λi, and the image of the half-geodesic towards ∞ leaves λi
            // at angle θ from the direction back to i (straight down).
            let z = a.apply(Complex64::i());
            assert!((z - Complex64::new(0.0, lambda)).norm() < 1e-12 * lambda);
            let eps = 1e-7;
            let w = a.apply(Complex64::new(0.0, 1.0 + eps));
            let dir = (w - z) / (w - z).norm();
            let down = Complex64::new(0.0, -1.0);
            let angle = (dir / down).arg().abs();
            let expected = if theta <= PI { theta } else { 2.0 * PI - theta };
            assert!((angle - expected).abs() < 1e-5, "{angle} vs {expected}");
        }
        let a = mobius_A(4.0, PI).unwrap();
        assert!((a.matrix() - Matrix2::new(2.0, 0.0, 0.0, 0.5)).amax() < 1e-15);
        assert!(mobius_A(1.0, 1.0).is_err() && mobius_A(2.0, 0.0).is_err());
    }

    #[test]
    fn trace_closed_form_and_symmetry() {
        let (l, e, z) = (3.0, 0.8, 2.5);
        let t = trace_gamma(l, e, z).unwrap();
        let closed = (l + 1.0 / l) * (e / 2.0).sin() * (z / 2.0).sin() - 2.0 * (e / 2.0).cos() * (z / 2.0).cos();
        assert!((t - closed).abs() < 1e-14);
        assert!((t - trace_gamma(l, z, e).unwrap()).abs() < 1e-14);
        let neg = Isometry2(-*mobius_A(l, e).unwrap().matrix());
        assert!(neg.same_isometry(&mobius_A(l, e).unwrap(), 0.0));
        // λ → 1 gives the elliptic trace −2cos((η + ζ)/2).
        let near = trace_gamma(1.0 + 1e-9, e, z).unwrap();
        assert!((near + 2.0 * ((e + z) / 2.0).cos()).abs() < 1e-8);
    }

    #[test]
    fn second_derivative_formula_matches_finite_differences() {
        let inp = TraceInput::new(2.7, 1.1, 2.9, -1.3, 0.7, 0).unwrap();
        let h = 1e-3;
        let d2 = |s: f64| {
            (inp.trace_at(s).unwrap() - 2.0 * inp.trace_at(0.0).unwrap() + inp.trace_at(-s).unwrap()) / (s * s)
        };
        let fd = (4.0 * d2(h) - d2(2.0 * h)) / 3.0;
        assert!((fd - trace_second_derivative(&inp)).abs() < 1e-6);
        let zero = TraceInput { eta_dd: 0.0, zeta_dd: 0.0, ..inp };
        assert_eq!(trace_second_derivative(&zero), 0.0);
        let opposite = TraceInput { zeta_dd: 1.3, ..inp };
        assert!((trace_second_derivative(&opposite) - trace_second_derivative_opposite(&opposite)).abs() < 1e-14);
    }

    #[test]
    fn stima_sign_analysis() {
        for e in [0.1, 1.0, 3.0] {
            for z in [0.1, 1.5, 3.1] {
                assert!(stima_inequality(1.5, e, z));
            }
        }
        assert!(!stima_inequality(1.5, 0.2, 2.0 * PI - 0.05));
    }

    #[test]
    fn varsigma_data_and_the_solved_curve_agree() {
        let sig = GKSignature::new(2, 1).unwrap();
        for delta in [0, 1] {
            let r0 = 0.7;
            let inp = varsigma_trace_data(sig, delta, r0).unwrap();
            assert!(inp.lambda0 > 1.0);
            assert!(stima_inequality(inp.lambda0, inp.eta0, inp.zeta0));
            let x0 = solve_complete(sig).unwrap().x0;
            let (l, e, z) = trace_angles(&x0, delta, r0).unwrap();
            assert!((l - inp.lambda0).abs() < 1e-12 && (e - inp.eta0).abs() < 1e-15 && (z - inp.zeta0).abs() < 1e-14);
            let (d1, d2) = curve_trace_derivatives(sig, delta, r0, 1e-2).unwrap();
            let expected = trace_second_derivative(&inp);
            assert!(d1.abs() < 1e-8, "first derivative {d1}");
            assert!((d2 - expected).abs() < 1e-5 * expected.abs().max(1.0), "{d2} vs {expected}");
        }
        assert_eq!(varsigma_trace_data(sig, 1, 0.5).unwrap().zeta_dd, 0.0);
        assert!(varsigma_trace_data(sig, 0, 7.0).is_err());
        assert!(varsigma_trace_data(sig, 2, 1.0).is_err());
    }

    #[test]
    fn r0_grid_is_admissible() {
        let sig = GKSignature::new(3, 2).unwrap();
        let grid = r0_grid(sig, 1, 20, 0.1).unwrap();
        assert_eq!(grid.len(), 20);
        for r0 in grid {
            let inp = varsigma_trace_data(sig, 1, r0).unwrap();
            assert!(inp.eta0 + inp.zeta0 < 2.0 * PI);
        }
    }
}
