use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::hyptrig::EPS_DOM;

/// A square nonlinear system `F(x) = 0` on the open box `(0, π)^n`.
pub trait NonlinearSystem {
    fn dim(&self) -> usize;
    fn residual(&self, x: &[f64]) -> DVector<f64>;
    fn jacobian(&self, x: &[f64]) -> DMatrix<f64>;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOptions {
    /// Convergence threshold on `‖F‖∞`.
    pub tol: f64,
    pub max_iter: usize,
    /// Extra full Newton steps taken after convergence, kept only while they
    /// reduce the residual.
    pub polish_steps: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions { tol: 1e-12, max_iter: 25, polish_steps: 2 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonReport {
    pub x: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

fn max_norm(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn clip(x: f64) -> f64 {
    x.clamp(EPS_DOM, PI - EPS_DOM)
}

fn step(sys: &impl NonlinearSystem, x: &[f64], f: &DVector<f64>) -> Option<DVector<f64>> {
    let delta = sys.jacobian(x).lu().solve(f)?;
    delta.iter().all(|d| d.is_finite()).then_some(delta)
}

/// Damped Newton iteration with backtracking on `‖F‖₂` and coordinate
/// clipping into `(ε, π − ε)`.
pub fn newton(sys: &impl NonlinearSystem, x0: &[f64], opts: &NewtonOptions) -> Result<NewtonReport> {
    let mut x = x0.iter().copied().map(clip).collect::<Vec<_>>();
    let mut f = sys.residual(&x);
    let mut iterations = 0;
    let fail = |f: &DVector<f64>, iterations| Error::Convergence { residual: max_norm(f), iterations };

    while max_norm(&f) >= opts.tol {
        if iterations == opts.max_iter || !f.iter().all(|v| v.is_finite()) {
            return Err(fail(&f, iterations));
        }
        iterations += 1;
        let delta = step(sys, &x, &f).ok_or_else(|| fail(&f, iterations))?;
        let norm = f.norm();
        let mut lambda = 1.0;
        loop {
            let trial: Vec<f64> = x.iter().zip(delta.iter()).map(|(a, d)| clip(a - lambda * d)).collect();
            let ft = sys.residual(&trial);
            if ft.iter().all(|v| v.is_finite()) && ft.norm() < norm * (1.0 - 1e-4 * lambda) {
                x = trial;
                f = ft;
                break;
            }
            lambda *= 0.5;
            if lambda < 1e-10 {
                return Err(fail(&f, iterations));
            }
        }
    }

    for _ in 0..opts.polish_steps {
        let Some(delta) = step(sys, &x, &f) else { break };
        let trial: Vec<f64> = x.iter().zip(delta.iter()).map(|(a, d)| clip(a - d)).collect();
        let ft = sys.residual(&trial);
        if max_norm(&ft) < max_norm(&f) {
            x = trial;
            f = ft;
        } else {
            break;
        }
    }

    Ok(NewtonReport { residual: max_norm(&f), x, iterations })
}
