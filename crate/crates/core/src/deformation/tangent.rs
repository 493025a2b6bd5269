use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{solve_complete, GKSignature};
use crate::error::Result;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Closed-form basis of the tangent space `Z̄ = T_{x₀}Ω_{g,k}`: two vectors per cusp.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentBasis {
    pub vectors: Vec<Vec<f64>>,
}

impl TangentBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// The basis as the columns of a `(12k+1) × 2k` matrix.
    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.vectors.first().map_or(0, Vec::len);
        DMatrix::from_fn(n, self.vectors.len(), |r, c| self.vectors[c][r])
    }
}

/// Builds the block `(x₁..x₆, −x₁..−x₆)` of `Z` from its α-part, using
/// `x_{j+3} = (√3 cos ᾱ / sin ᾱ)·x_j`.
fn z_block(alpha_part: [f64; 3], c: f64, s: f64) -> [f64; 12] {
    let mut b = [0.0; 12];
    for j in 0..3 {
        b[j] = alpha_part[j];
        b[j + 3] = SQRT3 * c / s * alpha_part[j];
    }
    for j in 0..6 {
        b[j + 6] = -b[j];
    }
    b
}

pub fn tangent_basis(sig: GKSignature) -> Result<TangentBasis> {
    let a = solve_complete(sig)?.alpha_bar.value();
    let (c, s) = (a.cos(), a.sin());
    let mut vectors = Vec::with_capacity(2 * sig.k());
    for i in 0..sig.k() {
        for part in [[2.0 * s, -s, -s], [0.0, s, -s]] {
            let mut v = vec![0.0; sig.dim()];
            v[12 * i..12 * i + 12].copy_from_slice(&z_block(part, c, s));
            vectors.push(v);
        }
    }
    Ok(TangentBasis { vectors })
}

/// `(ς̄′(0), ς̄″(0))` for the curve that deforms only the first cusp,
/// normalized by `ẍ₁ = ẍ₇`.
pub fn varsigma_derivatives(sig: GKSignature) -> Result<(Vec<f64>, Vec<f64>)> {
    let a = solve_complete(sig)?.alpha_bar.value();
    let (c, s) = (a.cos(), a.sin());
    let mut first = vec![0.0; sig.dim()];
    first[..12].copy_from_slice(&z_block([2.0 * s, -s, -s], c, s));
    let half = [8.0 * c * s, -4.0 * c * s, -4.0 * c * s, 2.0 * SQRT3, -SQRT3, -SQRT3];
    let mut second = vec![0.0; sig.dim()];
    second[..6].copy_from_slice(&half);
    second[6..12].copy_from_slice(&half);
    Ok((first, second))
}

/// Numerical nullspace of a wide matrix, from a full SVD of its zero-padded square.
#[derive(Debug, Clone)]
pub struct NumericNullspace {
    /// Orthonormal basis as columns.
    pub basis: DMatrix<f64>,
    /// Singular values in decreasing order (padding included).
    pub singular_values: Vec<f64>,
    /// Ratio between the smallest retained and the largest discarded singular value.
    pub gap: f64,
}

impl NumericNullspace {
    pub fn nullity(&self) -> usize {
        self.basis.ncols()
    }
}

/// Singular values below `rel_tol · σ_max` are treated as zero.
pub fn nullspace(m: &DMatrix<f64>, rel_tol: f64) -> NumericNullspace {
    let n = m.ncols();
    let mut sq = DMatrix::zeros(n.max(m.nrows()), n);
    sq.rows_mut(0, m.nrows()).copy_from(m);
    let svd = sq.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let sv: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let cutoff = rel_tol * sv.first().copied().unwrap_or(0.0);
    let rank = sv.iter().take_while(|&&s| s > cutoff).count();
    let null_idx = &order[rank..];
    let basis = DMatrix::from_fn(n, null_idx.len(), |r, c| v_t[(null_idx[c], r)]);
    let gap = match (rank.checked_sub(1).map(|r| sv[r]), sv.get(rank)) {
        (Some(small), Some(&big)) if big > 0.0 => small / big,
        _ => f64::INFINITY,
    };
    NumericNullspace { basis, singular_values: sv, gap }
}

fn orthonormal(m: &DMatrix<f64>) -> DMatrix<f64> {
    m.clone().qr().q()
}

/// Largest principal-angle sine between the column spaces of `a` and `b`
/// (both of full column rank): `max(‖(I − QₐQₐᵀ)Q_b‖₂, ‖(I − Q_bQ_bᵀ)Qₐ‖₂)`.
pub fn subspace_distance(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    let (qa, qb) = (orthonormal(a), orthonormal(b));
    let dist = |q1: &DMatrix<f64>, q2: &DMatrix<f64>| {
        let resid = q2 - q1 * (q1.transpose() * q2);
        resid.singular_values().max()
    };
    dist(&qa, &qb).max(dist(&qb, &qa))
}
