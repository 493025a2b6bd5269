//! The deformation space `Ω_{g,k} ⊂ R^{12k+1}` of angle assignments on the
//! canonical triangulation of a manifold in `M_{g,k}`.
//!
//! A point is an [`AngleVector`] laid out as
//! `(α_1^1, α_1^2, α_1^3, γ_1^1, γ_1^2, γ_1^3, …, α_{2k}^3, …, γ_{2k}^3, β)`:
//! tetrahedra `Δ_{2i-1}, Δ_{2i}` carry cusp `i`, and `β` is the dihedral angle
//! of the `g - k` compact regular tetrahedra.

mod complete;
mod curve;
mod filling;
mod holonomy;
mod newton;
mod residuals;
mod tangent;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyptrig::EPS_DOM;
use crate::tetrahedron::TruncatedTetrahedron;

pub use complete::{solve_complete, CompleteSolution};
pub use curve::{varsigma_curve, varsigma_curve_in};
pub use filling::{solve_coefficients, solve_filling, CuspTarget, SolveOptions};
pub use holonomy::{dehn_coefficients, uv, DehnCoefficient, COMPLETE_CUSP_TOL};
pub use newton::{newton, NewtonOptions, NewtonReport, NonlinearSystem};
pub use residuals::{jacobian, residuals, ResidualVector};
pub use tangent::{nullspace, subspace_distance, tangent_basis, varsigma_derivatives, NumericNullspace, TangentBasis};

/// The pair `(g, k)` with `g > k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GKSignature {
    g: usize,
    k: usize,
}

impl GKSignature {
    pub fn new(g: usize, k: usize) -> Result<Self> {
        if k >= 1 && g > k {
            Ok(GKSignature { g, k })
        } else {
            Err(Error::InvalidSignature { g: g as i64, k: k as i64 })
        }
    }

    #[inline]
    pub fn g(&self) -> usize {
        self.g
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Dimension `12k + 1` of the ambient coordinate space.
    #[inline]
    pub fn dim(&self) -> usize {
        12 * self.k + 1
    }

    /// Number `10k + 1` of consistency equations.
    #[inline]
    pub fn n_residuals(&self) -> usize {
        10 * self.k + 1
    }

    pub(crate) fn check_cusp(&self, i: usize) -> Result<()> {
        if (1..=self.k).contains(&i) {
            Ok(())
        } else {
            Err(Error::CuspIndex { index: i, k: self.k })
        }
    }
}

impl fmt::Display for GKSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.g, self.k)
    }
}

/// A point of `R^{12k+1}` with the dihedral-angle layout described in the
/// module docs. Indices passed to the accessors are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleVector {
    sig: GKSignature,
    coords: Vec<f64>,
}

impl AngleVector {
    pub fn new(sig: GKSignature, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != sig.dim() {
            return Err(Error::Domain(format!("expected {} coordinates for {sig}, got {}", sig.dim(), coords.len())));
        }
        Ok(AngleVector { sig, coords })
    }

    /// Builds the vector without any checks; `coords` must have length `12k+1`.
    pub(crate) fn from_raw(sig: GKSignature, coords: Vec<f64>) -> Self {
        debug_assert_eq!(coords.len(), sig.dim());
        AngleVector { sig, coords }
    }

    #[inline]
    pub fn signature(&self) -> GKSignature {
        self.sig
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    /// The coordinate `x_n`, `n` in `1..=12k+1`.
    #[inline]
    pub fn x(&self, n: usize) -> f64 {
        self.coords[n - 1]
    }

    #[inline]
    pub fn alpha(&self, l: usize, j: usize) -> f64 {
        self.coords[6 * (l - 1) + j - 1]
    }

    #[inline]
    pub fn gamma(&self, l: usize, j: usize) -> f64 {
        self.coords[6 * (l - 1) + 3 + j - 1]
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        self.coords[12 * self.sig.k]
    }

    /// The non-compact tetrahedron `Δ_l`, `l` in `1..=2k`.
    pub fn tetrahedron(&self, l: usize) -> TruncatedTetrahedron {
        TruncatedTetrahedron::with_ideal_apex(
            [self.alpha(l, 1), self.alpha(l, 2), self.alpha(l, 3)],
            [self.gamma(l, 1), self.gamma(l, 2), self.gamma(l, 3)],
        )
    }

    pub fn compact_tetrahedron(&self) -> TruncatedTetrahedron {
        TruncatedTetrahedron::regular(self.beta())
    }

    /// The 12 coordinates `r_i(x)` belonging to cusp `i`.
    pub fn cusp_block(&self, i: usize) -> &[f64] {
        &self.coords[12 * (i - 1)..12 * i]
    }

    pub(crate) fn check_range(&self) -> Result<()> {
        for (n, &v) in self.coords.iter().enumerate() {
            if !(v.is_finite() && v > EPS_DOM && v < std::f64::consts::PI - EPS_DOM) {
                return Err(Error::Domain(format!("x_{} = {v} outside (0, π)", n + 1)));
            }
        }
        Ok(())
    }

    /// Max-norm distance to another vector of the same signature.
    pub fn distance(&self, other: &AngleVector) -> f64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// Filling instruction for one cusp.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CuspFilling {
    Unfilled,
    Filled { p: i64, q: i64 },
}

impl CuspFilling {
    /// A filled cusp; the pair must be coprime and is canonicalized to
    /// `p > 0`, or `p = 0, q > 0`.
    pub fn filled(p: i64, q: i64) -> Result<Self> {
        if gcd(p, q) != 1 {
            return Err(Error::NotCoprime { p, q });
        }
        let (p, q) = if p < 0 || (p == 0 && q < 0) { (-p, -q) } else { (p, q) };
        Ok(CuspFilling::Filled { p, q })
    }

    pub fn is_filled(&self) -> bool {
        matches!(self, CuspFilling::Filled { .. })
    }
}

impl fmt::Display for CuspFilling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CuspFilling::Unfilled => f.write_str("inf"),
            CuspFilling::Filled { p, q } => write!(f, "{p}/{q}"),
        }
    }
}

impl FromStr for CuspFilling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(CuspFilling::Unfilled);
        }
        let (p, q) =
            s.split_once('/').ok_or_else(|| Error::Parse(format!("expected \"p/q\" or \"inf\", got {s:?}")))?;
        let p: i64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad integer {p:?}")))?;
        let q: i64 = q.trim().parse().map_err(|_| Error::Parse(format!("bad integer {q:?}")))?;
        CuspFilling::filled(p, q)
    }
}

/// One [`CuspFilling`] per cusp.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FillingSpec(Vec<CuspFilling>);

impl FillingSpec {
    pub fn new(cusps: Vec<CuspFilling>) -> Self {
        FillingSpec(cusps)
    }

    /// Every cusp unfilled.
    pub fn complete(k: usize) -> Self {
        FillingSpec(vec![CuspFilling::Unfilled; k])
    }

    /// Parses a comma-separated list such as `"inf,5/1"`.
    pub fn parse(s: &str) -> Result<Self> {
        s.split(',').map(str::parse).collect::<Result<Vec<_>>>().map(FillingSpec)
    }

    pub fn cusps(&self) -> &[CuspFilling] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn filled_count(&self) -> usize {
        self.0.iter().filter(|c| c.is_filled()).count()
    }
}

impl fmt::Display for FillingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
