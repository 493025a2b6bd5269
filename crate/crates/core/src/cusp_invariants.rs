//! Invariants of a solved structure: holonomy dilations, cusp shapes,
//! complex lengths of the core geodesics, the shortest return path and the
//! scalar topological invariants.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::deformation::{uv, AngleVector, GKSignature};
use crate::error::{Error, Result};
use crate::hyptrig::{hexagon_side_cosh, CoshLength};

/// Dilation components `a_i, b_i` of the holonomies of `μ_i, λ_i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HolonomyDilation {
    pub a: Complex64,
    pub b: Complex64,
}

/// Computes the dilations directly from the sine ratios and angle
/// differences (independently of [`uv`]).
pub fn holonomy_dilations(x: &AngleVector, i: usize) -> Result<HolonomyDilation> {
    x.signature().check_cusp(i)?;
    let (o, e) = (2 * i - 1, 2 * i);
    let so = |j| x.gamma(o, j).sin();
    let se = |j| x.gamma(e, j).sin();
    for j in 1..=3 {
        if !(so(j) > 0.0 && se(j) > 0.0) {
            return Err(Error::Domain(format!("γ angles of cusp {i} outside (0, π)")));
        }
    }
    let a = Complex64::from_polar(so(1) * se(2) / (so(2) * se(1)), x.gamma(o, 3) - x.gamma(e, 3));
    let b = Complex64::from_polar(so(2) * se(3) / (so(3) * se(2)), x.gamma(o, 1) - x.gamma(e, 1));
    Ok(HolonomyDilation { a, b })
}

/// Similarity class of a flat cusp torus: `τ` in the standard fundamental
/// domain `|τ| ≥ 1`, `−1/2 < Re τ ≤ 1/2` (with `Re τ ≥ 0` on the unit circle).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CuspShape {
    pub tau: Complex64,
}

impl CuspShape {
    /// The regular hexagonal shape `e^{iπ/3}`.
    pub fn hexagonal() -> Self {
        CuspShape { tau: Complex64::from_polar(1.0, PI / 3.0) }
    }

    /// Reduces any `τ` with `Im τ > 0` into the fundamental domain.
    pub fn canonical(mut tau: Complex64) -> Result<Self> {
        if !(tau.im > 0.0 && tau.is_finite()) {
            return Err(Error::Domain(format!("modulus {tau} not in the upper half-plane")));
        }
        const EPS: f64 = 1e-13;
        for _ in 0..1000 {
            tau.re -= tau.re.round();
            if tau.norm_sqr() < 1.0 - EPS {
                tau = -tau.inv();
            } else {
                break;
            }
        }
        if tau.re < -0.5 + EPS {
            tau.re += 1.0;
        }
        if (tau.norm_sqr() - 1.0).abs() < EPS && tau.re < 0.0 {
            tau = -tau.conj();
        }
        Ok(CuspShape { tau })
    }

    pub fn distance(&self, other: &CuspShape) -> f64 {
        (self.tau - other.tau).norm()
    }
}

fn triangle_modulus(gamma: [f64; 3]) -> Complex64 {
    // Vertices 0, 1 and (sin γ²/sin γ³)·e^{iγ¹}; the two edges from the
    // first vertex generate the lattice of the torus.
    Complex64::from_polar(gamma[1].sin() / gamma[2].sin(), gamma[0])
}

/// Shape of the flat torus of a complete cusp, read off the Euclidean
/// link triangles of `Δ_{2i−1}` and `Δ_{2i}`.
pub fn cusp_modulus(x: &AngleVector, i: usize) -> Result<CuspShape> {
    let (u, _) = uv(x, i)?;
    let abs_u = u.norm();
    if abs_u >= 1e-8 {
        return Err(Error::IncompleteCusp { cusp: i, abs_u });
    }
    let (o, e) = (2 * i - 1, 2 * i);
    let odd = CuspShape::canonical(triangle_modulus([1, 2, 3].map(|j| x.gamma(o, j))))?;
    let even = CuspShape::canonical(triangle_modulus([1, 2, 3].map(|j| x.gamma(e, j))))?;
    if odd.distance(&even) > 1e-7 {
        return Err(Error::IncompleteCusp { cusp: i, abs_u });
    }
    Ok(odd)
}

/// Complex length of the core geodesic of a filled cusp, `Re > 0`,
/// `Im ∈ (−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexLength {
    pub value: Complex64,
}

/// `(a, b, g)` with `a·p + b·q = g = gcd(p, q) ≥ 0`.
pub fn extended_gcd(p: i64, q: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (p, q);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let quot = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - quot * r1);
        (s0, s1) = (s1, s0 - quot * s1);
        (t0, t1) = (t1, t0 - quot * t1);
    }
    if r0 < 0 {
        (-s0, -t0, -r0)
    } else {
        (s0, t0, r0)
    }
}

/// Integers `(r, s)` with `p·s − q·r = −1`.
pub fn dual_pair(p: i64, q: i64) -> Result<(i64, i64)> {
    let (a, b, g) = extended_gcd(p, q);
    if g != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    Ok((b, -a))
}

fn reduce_im(z: Complex64) -> Complex64 {
    let two_pi = 2.0 * PI;
    let mut im = z.im - two_pi * (z.im / two_pi).round();
    if im <= -PI {
        im += two_pi;
    }
    Complex64::new(z.re, im)
}

/// `CL = r·u + s·v` reduced mod `2πi` and sign-normalized.
pub fn complex_length(x: &AngleVector, i: usize, (p, q): (i64, i64)) -> Result<ComplexLength> {
    let (u, v) = uv(x, i)?;
    if u.norm() < crate::deformation::COMPLETE_CUSP_TOL {
        return Err(Error::UnfilledCusp { cusp: i });
    }
    let (r, s) = dual_pair(p, q)?;
    Ok(ComplexLength { value: normalize_length(u * r as f64 + v * s as f64) })
}

pub(crate) fn normalize_length(z: Complex64) -> Complex64 {
    let z = reduce_im(z);
    if z.re < 0.0 {
        reduce_im(-z)
    } else {
        z
    }
}

/// Length of the compact internal edge, the shortest return path at `x₀`:
/// `arccosh(c/(c−1))` with `c = cos β/(1 − cos β)`.
pub fn return_path_length(x: &AngleVector) -> Result<f64> {
    let beta = x.beta();
    if !(beta > 0.0 && beta < PI / 3.0) {
        return Err(Error::Domain(format!("β = {beta} outside (0, π/3)")));
    }
    let c = CoshLength::new(beta.cos() / (2.0 * (0.5 * beta).sin().powi(2)))?;
    Ok(hexagon_side_cosh(c, c, c)?.length())
}

/// Rank of `H₁` of the manifold with `h` cusps filled: `g + k − h`.
pub fn homology_rank(sig: GKSignature, h: usize) -> Result<usize> {
    if h > sig.k() {
        return Err(Error::Domain(format!("{h} filled cusps but only {} cusps", sig.k())));
    }
    Ok(sig.g() + sig.k() - h)
}

/// Heegaard genus `g + 1`, shared by the manifold and all its hyperbolic fillings.
pub fn heegaard_genus(sig: GKSignature) -> usize {
    sig.g() + 1
}
