//! Partially truncated tetrahedra.
//!
//! Edge labels: `e^1, e^2, e^3` are the edges of the face opposite the apex
//! (dihedral angles `α^j`), `f^1, f^2, f^3` are the edges through the apex
//! (angles `γ^j`), and `f^j` is opposite `e^j`. Non-apex vertex `m` is the
//! endpoint of `f^m`, so the edges meeting there are `f^m, e^{m+1}, e^{m+2}`
//! and its truncation triangle has angles `(γ^m, α^{m+1}, α^{m+2})`. When the
//! tetrahedron has an ideal vertex it is the apex. All label indices are
//! 1-based and taken mod 3.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyptrig::{self, Angle, CoshLength};

/// Tolerance on `γ^1 + γ^2 + γ^3 = π` at an ideal vertex.
pub const IDEAL_SUM_TOL: f64 = 1e-9;

#[inline]
pub(crate) fn cyc(j: usize) -> usize {
    (j - 1) % 3 + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Edge {
    E(usize),
    F(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Violation {
    AngleOutOfRange {
        edge: Edge,
        value: f64,
    },
    /// The apex is ideal but its angle sum is not π.
    IdealSum {
        sum: f64,
    },
    /// Vertex 0 is the apex, 1..=3 the others.
    VertexSum {
        vertex: usize,
        sum: f64,
    },
}

/// A partially truncated tetrahedron given by its six dihedral angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncatedTetrahedron {
    pub ideal_apex: bool,
    pub alpha: [f64; 3],
    pub gamma: [f64; 3],
}

impl TruncatedTetrahedron {
    pub fn with_ideal_apex(alpha: [f64; 3], gamma: [f64; 3]) -> Self {
        TruncatedTetrahedron { ideal_apex: true, alpha, gamma }
    }

    pub fn compact(alpha: [f64; 3], gamma: [f64; 3]) -> Self {
        TruncatedTetrahedron { ideal_apex: false, alpha, gamma }
    }

    /// The compact regular tetrahedron with all dihedral angles `beta`.
    pub fn regular(beta: f64) -> Self {
        Self::compact([beta; 3], [beta; 3])
    }

    #[inline]
    pub fn alpha(&self, j: usize) -> f64 {
        self.alpha[cyc(j) - 1]
    }

    #[inline]
    pub fn gamma(&self, j: usize) -> f64 {
        self.gamma[cyc(j) - 1]
    }

    pub fn theta(&self, edge: Edge) -> f64 {
        match edge {
            Edge::E(j) => self.alpha(j),
            Edge::F(j) => self.gamma(j),
        }
    }

    /// Existence conditions for a hyperbolic truncated tetrahedron that this angle assignment violates.
    /// Empty iff the assignment is realized by a geometric tetrahedron.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for j in 1..=3 {
            for edge in [Edge::E(j), Edge::F(j)] {
                let v = self.theta(edge);
                if !(v > 0.0 && v < PI) {
                    out.push(Violation::AngleOutOfRange { edge, value: v });
                }
            }
        }
        let apex: f64 = self.gamma.iter().sum();
        if self.ideal_apex {
            if (apex - PI).abs() > IDEAL_SUM_TOL {
                out.push(Violation::IdealSum { sum: apex });
            }
        } else if apex >= PI {
            out.push(Violation::VertexSum { vertex: 0, sum: apex });
        }
        for m in 1..=3 {
            let sum = self.gamma(m) + self.alpha(m + 1) + self.alpha(m + 2);
            if sum >= PI {
                out.push(Violation::VertexSum { vertex: m, sum });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn ensure_valid(&self) -> Result<()> {
        match self.validate().first() {
            None => Ok(()),
            Some(v) => Err(Error::Domain(format!("invalid tetrahedron: {v:?}"))),
        }
    }

    /// Cosh of the side of the truncation triangle at vertex `m` opposite
    /// the angle `γ^m`; that side lies on the face opposite the apex.
    fn truncation_side(&self, m: usize) -> Result<CoshLength> {
        hyptrig::triangle_side_cosh(
            Angle::new(self.gamma(m))?,
            Angle::new(self.alpha(m + 1))?,
            Angle::new(self.alpha(m + 2))?,
        )
    }

    /// Cosh of the boundary edge of the face opposite the apex joining
    /// `e^j` and `e^{j+1}`:
    /// `(cos α^j cos α^{j+1} + cos γ^{j+2}) / (sin α^j sin α^{j+1})`.
    pub fn boundary_edge_cosh(&self, j: usize) -> Result<CoshLength> {
        self.ensure_valid()?;
        self.truncation_side(j + 2)
    }

    /// Cosh of the internal edge `e^j`, from the right-angled hexagon on
    /// the face opposite the apex.
    pub fn internal_edge_cosh(&self, j: usize) -> Result<CoshLength> {
        // e^j sits between vertices j+1 and j+2; the opposite boundary edge
        // is the one at vertex j, i.e. boundary_edge_cosh(j + 1).
        let opposite = self.boundary_edge_cosh(j + 1)?;
        let b2 = self.boundary_edge_cosh(j)?;
        let b3 = self.boundary_edge_cosh(j + 2)?;
        internal_edge_cosh(opposite, b2, b3)
    }

    /// Data of the exceptional hexagon `F^j` (the face through the apex that
    /// contains `e^j`) needed by [`sigma`].
    pub fn exceptional_hexagon(&self, j: usize, labeling: HexagonLabeling) -> Result<ExceptionalHexagonData> {
        if !self.ideal_apex {
            return Err(Error::Domain("exceptional hexagons need an ideal apex".into()));
        }
        self.ensure_valid()?;
        let (a, b) = match labeling {
            HexagonLabeling::Forward => (j + 1, j + 2),
            HexagonLabeling::Reversed => (j + 2, j + 1),
        };
        // e6 = e^j, e1 = f^a, e2 = f^b, e4 = e^a, e5 = e^b. The boundary edge
        // joining e^b and e^j sits at the vertex they share, which is `a`.
        Ok(ExceptionalHexagonData {
            theta_e1: Angle::new(self.gamma(a))?,
            theta_e2: Angle::new(self.gamma(b))?,
            theta_e4: Angle::new(self.alpha(a))?,
            theta_e5: Angle::new(self.alpha(b))?,
            l_e46: self.truncation_side(b)?.length(),
            l_e56: self.truncation_side(a)?.length(),
        })
    }
}

/// Which of the two faces' edges through the apex plays the role of `e1`
/// in the σ formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HexagonLabeling {
    /// `e1 = f^{j+1}`, `e2 = f^{j+2}`.
    Forward,
    /// `e1 = f^{j+2}`, `e2 = f^{j+1}`.
    Reversed,
}

/// Cosh of the internal edge opposite the boundary edge `b1` in a compact
/// right-angled lateral hexagon.
pub fn internal_edge_cosh(b1: CoshLength, b2: CoshLength, b3: CoshLength) -> Result<CoshLength> {
    hyptrig::hexagon_side_cosh(b1, b2, b3)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExceptionalHexagonData {
    pub theta_e1: Angle,
    pub theta_e2: Angle,
    pub theta_e4: Angle,
    pub theta_e5: Angle,
    pub l_e46: f64,
    pub l_e56: f64,
}

fn ln_sinh(x: f64) -> f64 {
    if x > 20.0 {
        x - std::f64::consts::LN_2 + (-(-2.0 * x).exp()).ln_1p()
    } else {
        x.sinh().ln()
    }
}

/// Signed horosphere offset of an exceptional hexagon.
pub fn sigma(hex: &ExceptionalHexagonData) -> Result<f64> {
    if !(hex.l_e46 > 0.0 && hex.l_e56 > 0.0) {
        return Err(Error::Domain(format!("boundary lengths must be positive, got {} and {}", hex.l_e46, hex.l_e56)));
    }
    let lengths = ln_sinh(hex.l_e56) - ln_sinh(hex.l_e46);
    let angles = hex.theta_e2.value().sin().ln() + hex.theta_e5.value().sin().ln()
        - hex.theta_e1.value().sin().ln()
        - hex.theta_e4.value().sin().ln();
    Ok(lengths + angles)
}
