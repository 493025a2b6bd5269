use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{AngleVector, GKSignature};
use crate::error::{Error, Result};
use crate::tetrahedron::cyc;

/// The `10k + 1` consistency residuals, in the order
/// length matching (`6k`), ideal-vertex sums (`2k`), σ-matching (`2k`),
/// angle sum (`1`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualVector {
    k: usize,
    values: Vec<f64>,
}

impl ResidualVector {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Residual of the length-matching equation for the boundary edge `j` of `Δ_l`.
    pub fn length(&self, l: usize, j: usize) -> f64 {
        self.values[3 * (l - 1) + j - 1]
    }

    pub fn ideal_sum(&self, l: usize) -> f64 {
        self.values[6 * self.k + l - 1]
    }

    /// The two σ-matching residuals `Π¹ − Π²`, `Π² − Π³` of cusp `i`.
    pub fn sigma(&self, i: usize) -> [f64; 2] {
        let base = 8 * self.k + 2 * (i - 1);
        [self.values[base], self.values[base + 1]]
    }

    pub fn angle_sum(&self) -> f64 {
        self.values[10 * self.k]
    }

    pub fn max_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// `cos β / (1 − cos β)`, the common cosh-length of all boundary edges.
#[inline]
pub(crate) fn boundary_target(beta: f64) -> f64 {
    // 1 − cos β = 2 sin²(β/2) keeps precision for small β.
    beta.cos() / (2.0 * (0.5 * beta).sin().powi(2))
}

/// `Π^j = sin α_{2i}^j sin α_{2i−1}^j sin γ_{2i}^j sin γ_{2i−1}^j`.
#[inline]
pub(crate) fn sigma_product(x: &AngleVector, i: usize, j: usize) -> f64 {
    let (o, e) = (2 * i - 1, 2 * i);
    x.alpha(o, j).sin() * x.alpha(e, j).sin() * x.gamma(o, j).sin() * x.gamma(e, j).sin()
}

fn check(sig: GKSignature, x: &AngleVector) -> Result<()> {
    if x.signature() != sig {
        return Err(Error::SignatureMismatch(format!("vector has signature {}, expected {sig}", x.signature())));
    }
    x.check_range()
}

pub(crate) fn residuals_unchecked(x: &AngleVector) -> Vec<f64> {
    let sig = x.signature();
    let (g, k) = (sig.g(), sig.k());
    let mut r = Vec::with_capacity(sig.n_residuals());
    let target = boundary_target(x.beta());
    for l in 1..=2 * k {
        for j in 1..=3 {
            let (a, b, c) = (x.alpha(l, j), x.alpha(l, cyc(j + 1)), x.gamma(l, cyc(j + 2)));
            r.push((a.cos() * b.cos() + c.cos()) / (a.sin() * b.sin()) - target);
        }
    }
    for l in 1..=2 * k {
        r.push(x.gamma(l, 1) + x.gamma(l, 2) + x.gamma(l, 3) - PI);
    }
    for i in 1..=k {
        let p = [1, 2, 3].map(|j| sigma_product(x, i, j));
        r.push(p[0] - p[1]);
        r.push(p[1] - p[2]);
    }
    let alpha_sum: f64 = (1..=2 * k).flat_map(|l| (1..=3).map(move |j| (l, j))).map(|(l, j)| x.alpha(l, j)).sum();
    r.push(6.0 * (g - k) as f64 * x.beta() + alpha_sum - 2.0 * PI);
    r
}

/// Evaluates the consistency system at `x`.
pub fn residuals(sig: GKSignature, x: &AngleVector) -> Result<ResidualVector> {
    check(sig, x)?;
    Ok(ResidualVector { k: sig.k(), values: residuals_unchecked(x) })
}

/// Index (0-based) of `α_l^j` / `γ_l^j` in the coordinate vector.
#[inline]
fn ia(l: usize, j: usize) -> usize {
    6 * (l - 1) + j - 1
}

#[inline]
fn ig(l: usize, j: usize) -> usize {
    6 * (l - 1) + 2 + j
}

pub(crate) fn jacobian_unchecked(x: &AngleVector) -> DMatrix<f64> {
    let sig = x.signature();
    let (g, k) = (sig.g(), sig.k());
    let n = sig.dim();
    let ib = n - 1;
    let mut jac = DMatrix::zeros(sig.n_residuals(), n);

    let beta = x.beta();
    let one_minus = 2.0 * (0.5 * beta).sin().powi(2);
    let dtarget = -beta.sin() / (one_minus * one_minus);
    for l in 1..=2 * k {
        for j in 1..=3 {
            let row = 3 * (l - 1) + j - 1;
            let (jb, jc) = (cyc(j + 1), cyc(j + 2));
            let (a, b, c) = (x.alpha(l, j), x.alpha(l, jb), x.gamma(l, jc));
            let (sa, ca, sb, cb) = (a.sin(), a.cos(), b.sin(), b.cos());
            jac[(row, ia(l, j))] = -(cb + ca * c.cos()) / (sa * sa * sb);
            jac[(row, ia(l, jb))] = -(ca + cb * c.cos()) / (sa * sb * sb);
            jac[(row, ig(l, jc))] = -c.sin() / (sa * sb);
            jac[(row, ib)] = -dtarget;
        }
    }
    for l in 1..=2 * k {
        let row = 6 * k + l - 1;
        for j in 1..=3 {
            jac[(row, ig(l, j))] = 1.0;
        }
    }
    for i in 1..=k {
        let (o, e) = (2 * i - 1, 2 * i);
        // Gradient of Π^j: four entries, each the product with one sine replaced by a cosine.
        let grad = |j: usize| -> [(usize, f64); 4] {
            let idx = [ia(o, j), ia(e, j), ig(o, j), ig(e, j)];
            let s = idx.map(|m| x.coords()[m].sin());
            let c = idx.map(|m| x.coords()[m].cos());
            [
                (idx[0], c[0] * s[1] * s[2] * s[3]),
                (idx[1], s[0] * c[1] * s[2] * s[3]),
                (idx[2], s[0] * s[1] * c[2] * s[3]),
                (idx[3], s[0] * s[1] * s[2] * c[3]),
            ]
        };
        let row = 8 * k + 2 * (i - 1);
        for (r, (plus, minus)) in [(row, (1, 2)), (row + 1, (2, 3))] {
            for (m, d) in grad(plus) {
                jac[(r, m)] += d;
            }
            for (m, d) in grad(minus) {
                jac[(r, m)] -= d;
            }
        }
    }
    let row = 10 * k;
    for l in 1..=2 * k {
        for j in 1..=3 {
            jac[(row, ia(l, j))] = 1.0;
        }
    }
    jac[(row, ib)] = 6.0 * (g - k) as f64;
    jac
}

/// Analytic Jacobian `∂R/∂x`, a `(10k+1) × (12k+1)` matrix.
pub fn jacobian(sig: GKSignature, x: &AngleVector) -> Result<DMatrix<f64>> {
    check(sig, x)?;
    Ok(jacobian_unchecked(x))
}
