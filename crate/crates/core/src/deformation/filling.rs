use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::holonomy::{uv_gradients, uv_unchecked};
use super::newton::{newton, NewtonOptions, NonlinearSystem};
use super::residuals::{jacobian_unchecked, residuals_unchecked};
use super::{solve_complete, AngleVector, CuspFilling, FillingSpec, GKSignature};
use crate::error::{Error, Result};

/// Knobs of the filling solver. The defaults are the documented ones.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub tol_complete: f64,
    pub tol_filled: f64,
    pub max_iter: usize,
    /// Initial continuation ratio `t ← t/ρ`.
    pub rho: f64,
    /// Continuation gives up once `ρ − 1` falls below this.
    pub min_rho_step: f64,
    /// Continuation starts where `t·L(slope) ≥ l_safe`.
    pub l_safe: f64,
    /// Shortest slope accepted by [`solve_filling`].
    pub min_slope_length: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol_complete: 1e-12,
            tol_filled: 1e-10,
            max_iter: 25,
            rho: 1.5,
            min_rho_step: 1e-4,
            l_safe: 20.0,
            min_slope_length: 7f64.sqrt(),
        }
    }
}

/// Real-valued target for one cusp: complete, or `p·u + q·v = 2πi` with
/// arbitrary real `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CuspTarget {
    Complete,
    Coefficients { p: f64, q: f64 },
}

/// Extra equations appended to the consistency system.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Constraint {
    /// `Σ c·x_m = rhs` over 0-based coordinate indices.
    Linear { terms: Vec<(usize, f64)>, rhs: f64 },
    /// `Re u_i = Im u_i = 0`.
    Complete { cusp: usize },
    /// `p·u_i + q·v_i = 2πi`.
    Filling { cusp: usize, p: f64, q: f64 },
}

impl Constraint {
    fn rows(&self) -> usize {
        match self {
            Constraint::Linear { .. } => 1,
            _ => 2,
        }
    }
}

pub(crate) struct ConstrainedSystem {
    pub sig: GKSignature,
    pub constraints: Vec<Constraint>,
}

impl ConstrainedSystem {
    fn point(&self, x: &[f64]) -> AngleVector {
        AngleVector::from_raw(self.sig, x.to_vec())
    }
}

impl NonlinearSystem for ConstrainedSystem {
    fn dim(&self) -> usize {
        self.sig.dim()
    }

    fn residual(&self, x: &[f64]) -> DVector<f64> {
        let pt = self.point(x);
        let mut r = residuals_unchecked(&pt);
        for c in &self.constraints {
            match *c {
                Constraint::Linear { ref terms, rhs } => {
                    r.push(terms.iter().map(|&(m, a)| a * x[m]).sum::<f64>() - rhs);
                }
                Constraint::Complete { cusp } => {
                    let (u, _) = uv_unchecked(&pt, cusp);
                    r.extend([u.re, u.im]);
                }
                Constraint::Filling { cusp, p, q } => {
                    let (u, v) = uv_unchecked(&pt, cusp);
                    let z = u * p + v * q;
                    r.extend([z.re, z.im - 2.0 * PI]);
                }
            }
        }
        DVector::from_vec(r)
    }

    fn jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        let pt = self.point(x);
        let base = jacobian_unchecked(&pt);
        let n = self.sig.dim();
        let extra: usize = self.constraints.iter().map(Constraint::rows).sum();
        let mut jac = DMatrix::zeros(base.nrows() + extra, n);
        jac.rows_mut(0, base.nrows()).copy_from(&base);
        let mut row = base.nrows();
        for c in &self.constraints {
            match *c {
                Constraint::Linear { ref terms, .. } => {
                    for &(m, a) in terms {
                        jac[(row, m)] += a;
                    }
                }
                Constraint::Complete { cusp } => {
                    let [ure, uim, _, _] = uv_gradients(&pt, cusp);
                    for (m, d) in ure {
                        jac[(row, m)] += d;
                    }
                    for (m, d) in uim {
                        jac[(row + 1, m)] += d;
                    }
                }
                Constraint::Filling { cusp, p, q } => {
                    let [ure, uim, vre, vim] = uv_gradients(&pt, cusp);
                    for (grad, r, s) in [(ure, row, p), (uim, row + 1, p), (vre, row, q), (vim, row + 1, q)] {
                        for (m, d) in grad {
                            jac[(r, m)] += s * d;
                        }
                    }
                }
            }
            row += c.rows();
        }
        jac
    }
}

/// Runs Newton on the consistency system augmented by `constraints`, which
/// must contribute exactly `2k` equations.
pub(crate) fn solve_constrained(
    sig: GKSignature,
    constraints: Vec<Constraint>,
    initial: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<AngleVector> {
    let sys = ConstrainedSystem { sig, constraints };
    debug_assert_eq!(sig.n_residuals() + sys.constraints.iter().map(Constraint::rows).sum::<usize>(), sig.dim());
    let opts = NewtonOptions { tol, max_iter, polish_steps: 2 };
    let report = newton(&sys, initial, &opts)?;
    Ok(AngleVector::from_raw(sig, report.x))
}

fn real_slope_length(p: f64, q: f64) -> f64 {
    (p * p + q * q - p * q).max(0.0).sqrt()
}

/// Solves the consistency system together with one real target per cusp,
/// by continuation from the complete structure along `(t·p, t·q)`,
/// `t` decreasing geometrically to 1.
pub fn solve_coefficients(sig: GKSignature, targets: &[CuspTarget], opts: &SolveOptions) -> Result<AngleVector> {
    if targets.len() != sig.k() {
        return Err(Error::SignatureMismatch(format!("{} cusp targets given for {sig}", targets.len())));
    }
    let x0 = solve_complete(sig)?.x0;
    let lengths: Vec<f64> = targets
        .iter()
        .filter_map(|t| match *t {
            CuspTarget::Coefficients { p, q } => Some(real_slope_length(p, q)),
            CuspTarget::Complete => None,
        })
        .collect();
    if lengths.is_empty() {
        return Ok(x0);
    }
    let l_min = lengths.iter().copied().fold(f64::INFINITY, f64::min);
    if !(l_min > 0.0 && l_min.is_finite()) {
        return Err(Error::Domain("filling coefficients must be finite and non-zero".into()));
    }

    let constraints_at = |t: f64| -> Vec<Constraint> {
        targets
            .iter()
            .enumerate()
            .map(|(idx, target)| match *target {
                CuspTarget::Complete => Constraint::Complete { cusp: idx + 1 },
                CuspTarget::Coefficients { p, q } => Constraint::Filling { cusp: idx + 1, p: t * p, q: t * q },
            })
            .collect()
    };
    let solve_at =
        |t: f64, start: &[f64]| solve_constrained(sig, constraints_at(t), start, opts.tol_filled, opts.max_iter);

    // Starting multiplier; pushed outwards if x₀ is not yet in the basin.
    let mut t = (opts.l_safe / l_min).max(1.0);
    let mut x = loop {
        match solve_at(t, x0.coords()) {
            Ok(x) => break x,
            Err(_) if t < 1e6 => t *= 2.0,
            Err(_) => return Err(Error::ContinuationBreakdown { last_t: f64::INFINITY }),
        }
    };
    // Secant predictor in s = 1/t, along which the solution is nearly linear.
    let mut prev: Option<(f64, AngleVector)> = None;
    let mut rho = opts.rho;
    while t > 1.0 {
        let t_next = (t / rho).max(1.0);
        let predicted = prev.as_ref().map(|(t_prev, x_prev)| {
            let (s_prev, s, s_next) = (1.0 / t_prev, 1.0 / t, 1.0 / t_next);
            let w = (s_next - s) / (s - s_prev);
            x.coords().iter().zip(x_prev.coords()).map(|(a, b)| a + w * (a - b)).collect::<Vec<_>>()
        });
        let attempt =
            predicted.and_then(|start| solve_at(t_next, &start).ok()).map_or_else(|| solve_at(t_next, x.coords()), Ok);
        match attempt {
            Ok(next) => {
                prev = Some((t, std::mem::replace(&mut x, next)));
                t = t_next;
            }
            Err(_) => {
                rho = 1.0 + 0.5 * (rho - 1.0);
                if rho - 1.0 < opts.min_rho_step {
                    return Err(Error::ContinuationBreakdown { last_t: t });
                }
            }
        }
    }
    Ok(x)
}

/// Solves for the hyperbolic structure with the given Dehn filling
/// instructions. Filled slopes must be coprime and at least
/// `opts.min_slope_length` long; signs are canonicalized first.
pub fn solve_filling(sig: GKSignature, spec: &FillingSpec, opts: &SolveOptions) -> Result<AngleVector> {
    if spec.len() != sig.k() {
        return Err(Error::SignatureMismatch(format!(
            "filling spec has {} entries, {sig} has {} cusps",
            spec.len(),
            sig.k()
        )));
    }
    let mut targets = Vec::with_capacity(sig.k());
    for c in spec.cusps() {
        match *c {
            CuspFilling::Unfilled => targets.push(CuspTarget::Complete),
            CuspFilling::Filled { p, q } => {
                let CuspFilling::Filled { p, q } = CuspFilling::filled(p, q)? else { unreachable!() };
                let length = ((p * p + q * q - p * q) as f64).sqrt();
                if length < opts.min_slope_length - 1e-12 {
                    return Err(Error::NonHyperbolic { p, q, length });
                }
                targets.push(CuspTarget::Coefficients { p: p as f64, q: q as f64 });
            }
        }
    }
    solve_coefficients(sig, &targets, opts)
}
