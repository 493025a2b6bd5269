use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::AngleVector;
use crate::error::{Error, Result};

/// Below this modulus `u` is treated as zero: the cusp is complete.
pub const COMPLETE_CUSP_TOL: f64 = 1e-11;

/// `(u_i, v_i)`, the logarithms of the holonomy dilations of `μ_i` and `λ_i`.
pub fn uv(x: &AngleVector, i: usize) -> Result<(Complex64, Complex64)> {
    x.signature().check_cusp(i)?;
    x.check_range()?;
    Ok(uv_unchecked(x, i))
}

pub(crate) fn uv_unchecked(x: &AngleVector, i: usize) -> (Complex64, Complex64) {
    let (o, e) = (2 * i - 1, 2 * i);
    let lo = |j| x.gamma(o, j).sin().ln();
    let le = |j| x.gamma(e, j).sin().ln();
    let u = Complex64::new(lo(1) + le(2) - lo(2) - le(1), x.gamma(o, 3) - x.gamma(e, 3));
    let v = Complex64::new(lo(2) + le(3) - lo(3) - le(2), x.gamma(o, 1) - x.gamma(e, 1));
    (u, v)
}

/// Gradients of `Re u, Im u, Re v, Im v` for cusp `i` as sparse
/// `(coordinate index, partial)` lists.
pub(crate) fn uv_gradients(x: &AngleVector, i: usize) -> [Vec<(usize, f64)>; 4] {
    let (o, e) = (2 * i - 1, 2 * i);
    let go = |j: usize| 6 * (o - 1) + 2 + j;
    let ge = |j: usize| 6 * (e - 1) + 2 + j;
    let cot = |m: usize| 1.0 / x.coords()[m].tan();
    let re = |a1: usize, b2: usize, a2: usize, b1: usize| {
        vec![(go(a1), cot(go(a1))), (ge(b2), cot(ge(b2))), (go(a2), -cot(go(a2))), (ge(b1), -cot(ge(b1)))]
    };
    [re(1, 2, 2, 1), vec![(go(3), 1.0), (ge(3), -1.0)], re(2, 3, 3, 2), vec![(go(1), 1.0), (ge(1), -1.0)]]
}

/// The generalized Dehn filling coefficient of a cusp.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DehnCoefficient {
    Infinity,
    Finite { p: f64, q: f64 },
}

impl DehnCoefficient {
    pub fn finite(self) -> Option<(f64, f64)> {
        match self {
            DehnCoefficient::Infinity => None,
            DehnCoefficient::Finite { p, q } => Some((p, q)),
        }
    }
}

/// Solves `p·u + q·v = 2πi` over the reals; `∞` when `u = 0`.
pub fn dehn_coefficients(x: &AngleVector, i: usize) -> Result<DehnCoefficient> {
    let (u, v) = uv(x, i)?;
    if u.norm() < COMPLETE_CUSP_TOL {
        return Ok(DehnCoefficient::Infinity);
    }
    // [Re u  Re v] [p]   [0 ]
    // [Im u  Im v] [q] = [2π]
    let det = u.re * v.im - v.re * u.im;
    if det.abs() <= 1e-12 * u.norm() * v.norm().max(f64::MIN_POSITIVE) || det == 0.0 {
        return Err(Error::SingularSystem { cusp: i });
    }
    let p = -v.re * 2.0 * PI / det;
    let q = u.re * 2.0 * PI / det;
    Ok(DehnCoefficient::Finite { p, q })
}
