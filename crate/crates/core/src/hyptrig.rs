//! Hyperbolic trigonometry of triangles and right-angled hexagons.
//!
//! Lengths are carried as their hyperbolic cosines ([`CoshLength`]); the
//! length itself is only recovered with [`CoshLength::length`] when a report
//! needs it.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Margin kept between an angle and the ends of `(0, π)`.
pub const EPS_DOM: f64 = 1e-12;

/// A dihedral or planar angle in radians, strictly inside `(0, π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Angle(f64);

impl Angle {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > EPS_DOM && value < PI - EPS_DOM {
            Ok(Angle(value))
        } else {
            Err(Error::Domain(format!("angle {value} outside (0, π)")))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Hyperbolic cosine of a geodesic length.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct CoshLength(f64);

impl CoshLength {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value >= 1.0 {
            Ok(CoshLength(value))
        } else {
            Err(Error::Domain(format!("cosh length {value} is not >= 1")))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn sinh(self) -> f64 {
        (self.0 * self.0 - 1.0).sqrt()
    }

    /// The length in hyperbolic units.
    #[inline]
    pub fn length(self) -> f64 {
        self.0.acosh()
    }
}

fn check_triangle(a1: Angle, a2: Angle, a3: Angle) -> Result<()> {
    let sum = a1.0 + a2.0 + a3.0;
    if sum < PI {
        Ok(())
    } else {
        Err(Error::Domain(format!("angle sum {sum} >= π: not a hyperbolic triangle")))
    }
}

/// Cosine rule: cosh of the side opposite `alpha1`.
pub fn triangle_side_cosh(alpha1: Angle, alpha2: Angle, alpha3: Angle) -> Result<CoshLength> {
    check_triangle(alpha1, alpha2, alpha3)?;
    let (c1, c2, c3) = (alpha1.0.cos(), alpha2.0.cos(), alpha3.0.cos());
    let value = (c2 * c3 + c1) / (alpha2.0.sin() * alpha3.0.sin());
    // The angle-sum check guarantees value > 1 up to rounding.
    Ok(CoshLength(value.max(1.0)))
}

/// All three sides; side `i` is opposite angle `i`.
pub fn triangle_sides(alpha1: Angle, alpha2: Angle, alpha3: Angle) -> Result<(CoshLength, CoshLength, CoshLength)> {
    Ok((
        triangle_side_cosh(alpha1, alpha2, alpha3)?,
        triangle_side_cosh(alpha2, alpha3, alpha1)?,
        triangle_side_cosh(alpha3, alpha1, alpha2)?,
    ))
}

/// Right-angled hexagon rule: given the alternating sides `c1, c2, c3`,
/// returns cosh of the side opposite `c1`.
pub fn hexagon_side_cosh(c1: CoshLength, c2: CoshLength, c3: CoshLength) -> Result<CoshLength> {
    for c in [c1, c2, c3] {
        if c.0 <= 1.0 {
            return Err(Error::Domain(format!("hexagon side cosh {} must exceed 1", c.0)));
        }
    }
    let value = (c2.0 * c3.0 + c1.0) / (c2.sinh() * c3.sinh());
    CoshLength::new(value)
}
