//! The family `X_k` (`k` odd, `g = k + 1`): the angle cycle around the
//! compact edge, the edge-angle sums `(a, b, c)` that decide
//! commensurability, and the two symmetries used to build similar
//! fillings, `Θ(r)` and `τ₁₃`.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::deformation::{AngleVector, GKSignature};
use crate::error::{Error, Result};
use crate::slopes::D6Element;
use crate::symmetry::{d6_act_on_cusp, kappa_hat};

/// Default absolute tolerance of [`commensurable`].
pub const DEFAULT_COMMENSURABILITY_TOL: f64 = 1e-8;

/// Signature of `X_k`: an odd number of cusps and genus `k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct XkSignature {
    k: usize,
}

impl XkSignature {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 || k.is_multiple_of(2) {
            return Err(Error::InvalidXkSignature(k as i64));
        }
        Ok(XkSignature { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn g(&self) -> usize {
        self.k + 1
    }

    /// The underlying `(k + 1, k)` signature of the consistency system.
    pub fn gk(&self) -> GKSignature {
        GKSignature::new(self.g(), self.k).expect("k + 1 > k >= 1")
    }

    fn check(&self, x: &AngleVector) -> Result<()> {
        if x.signature() != self.gk() {
            return Err(Error::SignatureMismatch(format!(
                "vector has signature {}, X_{} needs {}",
                x.signature(),
                self.k,
                self.gk()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for XkSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X_{}", self.k)
    }
}

/// The cyclic sequence of (1-based) coordinate indices whose angles meet
/// around the compact edge: three rows, preceded by one, two and three
/// copies of `β = x_{12k+1}`. It has `6(k + 1)` entries, the valence of the
/// edge.
pub fn edge_angle_cycle(sig: XkSignature) -> Vec<usize> {
    let k = sig.k();
    let beta = 12 * k + 1;
    let mut cycle = Vec::with_capacity(6 * (k + 1));
    for j in 1..=3 {
        cycle.extend(std::iter::repeat_n(beta, j));
        cycle.extend((0..2 * k).map(|l| 6 * l + j));
    }
    cycle
}

/// Sum of the angles of `x` along [`edge_angle_cycle`]; `2π` at any solution.
pub fn edge_angle_sum(x: &AngleVector, sig: XkSignature) -> Result<f64> {
    sig.check(x)?;
    Ok(edge_angle_cycle(sig).into_iter().map(|n| x.x(n)).sum())
}

/// Edge-angle sums `(a, b, c)`, totals over the cusps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ABCInvariant {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl ABCInvariant {
    /// Max-norm distance between two triples.
    pub fn distance(&self, other: &ABCInvariant) -> f64 {
        (self.a - other.a).abs().max((self.b - other.b).abs()).max((self.c - other.c).abs())
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }
}

/// `(a_i, b_i, c_i)` for each cusp `i`: the two angles at apex `j` of
/// `Δ_{2i−1}` and `Δ_{2i}`, summed, for `j = 1, 2, 3`.
pub fn abc_per_cusp(x: &AngleVector, sig: XkSignature) -> Result<Vec<ABCInvariant>> {
    sig.check(x)?;
    Ok((1..=sig.k())
        .map(|i| {
            let pair = |j| x.alpha(2 * i - 1, j) + x.alpha(2 * i, j);
            ABCInvariant { a: pair(1), b: pair(2), c: pair(3) }
        })
        .collect())
}

/// The invariant `(a, b, c)`; `a + b + c + 6β = 2π` at a solution.
pub fn abc(x: &AngleVector, sig: XkSignature) -> Result<ABCInvariant> {
    let per = abc_per_cusp(x, sig)?;
    Ok(per.iter().fold(ABCInvariant { a: 0.0, b: 0.0, c: 0.0 }, |s, t| ABCInvariant {
        a: s.a + t.a,
        b: s.b + t.b,
        c: s.c + t.c,
    }))
}

/// Defect `a + b + c + 6β − 2π` of the compact-edge angle condition.
pub fn abc_defect(x: &AngleVector, sig: XkSignature) -> Result<f64> {
    let t = abc(x, sig)?;
    Ok(t.a + t.b + t.c + 6.0 * x.beta() - 2.0 * PI)
}

/// Outcome of comparing two `(a, b, c)` triples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Commensurability {
    Commensurable,
    NotCommensurable,
    /// The triples differ by an amount between `tol` and `10·tol`: too close
    /// to call either way.
    Indeterminate,
}

impl Commensurability {
    /// `Some(true/false)` for a definite verdict.
    pub fn as_bool(self) -> Option<bool> {
        match self {
            Commensurability::Commensurable => Some(true),
            Commensurability::NotCommensurable => Some(false),
            Commensurability::Indeterminate => None,
        }
    }
}

impl fmt::Display for Commensurability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Commensurability::Commensurable => "commensurable",
            Commensurability::NotCommensurable => "not commensurable",
            Commensurability::Indeterminate => "indeterminate",
        })
    }
}

/// Two fillings of `X_k` are commensurable exactly when their `(a, b, c)`
/// triples agree.
pub fn commensurable(x1: &AngleVector, x2: &AngleVector, sig: XkSignature, tol: f64) -> Result<Commensurability> {
    let d = abc(x1, sig)?.distance(&abc(x2, sig)?);
    Ok(if d < tol {
        Commensurability::Commensurable
    } else if d > 10.0 * tol {
        Commensurability::NotCommensurable
    } else {
        Commensurability::Indeterminate
    })
}

/// `Θ(r)`: the rotation by `π/3` on every cusp torus, positive on odd and
/// negative on even cusps with respect to their geometric orientation.
///
/// Because the hexagons of consecutive cusps are arranged with opposite
/// orientations, this is the same apex relabeling on every cusp, namely
/// `φ_i(r)⁻¹`. It moves apex 3 to apex 1, so `a_i(Θ(r)x) = c_i(x)`,
/// `b_i(Θ(r)x) = a_i(x)`, `c_i(Θ(r)x) = b_i(x)`; Dehn coefficients (in the
/// apex-labelled basis of each cusp) transform by `(p, q) ↦ (q, q − p)`.
pub fn theta_r(x: &AngleVector, sig: XkSignature) -> Result<AngleVector> {
    sig.check(x)?;
    let r_inv = D6Element::R.inverse();
    Ok((1..=sig.k()).fold(x.clone(), |y, i| d6_act_on_cusp(&y, i, r_inv)))
}

/// `Θ(r²) = Θ(r) ∘ Θ(r)`.
pub fn theta_r2(x: &AngleVector, sig: XkSignature) -> Result<AngleVector> {
    theta_r(&theta_r(x, sig)?, sig)
}

/// `τ₁₃`: exchanges the first and third cusp.
pub fn tau_13(x: &AngleVector, sig: XkSignature) -> Result<AngleVector> {
    sig.check(x)?;
    if sig.k() < 3 {
        return Err(Error::Domain(format!("τ₁₃ needs at least 3 cusps, {sig} has {}", sig.k())));
    }
    let mut perm: Vec<usize> = (0..sig.k()).collect();
    perm.swap(0, 2);
    Ok(kappa_hat(x, &perm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::{dehn_coefficients, solve_complete, solve_filling, FillingSpec, SolveOptions};

    fn numbered(sig: XkSignature) -> AngleVector {
        let gk = sig.gk();
        AngleVector::new(gk, (1..=gk.dim()).map(|n| n as f64 / 100.0).collect()).unwrap()
    }

    #[test]
    fn signature_rules() {
        assert!(XkSignature::new(0).is_err());
        assert!(matches!(XkSignature::new(2), Err(Error::InvalidXkSignature(2))));
        let s = XkSignature::new(3).unwrap();
        assert_eq!((s.g(), s.k()), (4, 3));
    }

    #[test]
    fn cycle_layout() {
        let c1 = edge_angle_cycle(XkSignature::new(1).unwrap());
        assert_eq!(c1, vec![13, 1, 7, 13, 13, 2, 8, 13, 13, 13, 3, 9]);
        for k in [1, 3, 5, 7] {
            let s = XkSignature::new(k).unwrap();
            let c = edge_angle_cycle(s);
            assert_eq!(c.len(), 6 * s.g());
            assert_eq!(c.iter().filter(|&&n| n == 12 * k + 1).count(), 6);
        }
    }

    #[test]
    fn invariants_at_x0() {
        let s = XkSignature::new(3).unwrap();
        let sol = solve_complete(s.gk()).unwrap();
        let t = abc(&sol.x0, s).unwrap();
        let expected = 6.0 * sol.alpha_bar.value();
        assert!((t.a - expected).abs() < 1e-14 && (t.b - expected).abs() < 1e-14);
        assert!((edge_angle_sum(&sol.x0, s).unwrap() - 2.0 * PI).abs() < 1e-12);
        assert!(abc_defect(&sol.x0, s).unwrap().abs() < 1e-12);
        assert_eq!(theta_r(&sol.x0, s).unwrap(), sol.x0);
    }

    #[test]
    fn transformation_tables_hold_exactly() {
        let s = XkSignature::new(3).unwrap();
        let x = numbered(s);
        let before = abc_per_cusp(&x, s).unwrap();
        let r1 = abc_per_cusp(&theta_r(&x, s).unwrap(), s).unwrap();
        let r2 = abc_per_cusp(&theta_r2(&x, s).unwrap(), s).unwrap();
        for i in 0..3 {
            assert_eq!(r1[i].as_array(), [before[i].c, before[i].a, before[i].b]);
            assert_eq!(r2[i].as_array(), [before[i].b, before[i].c, before[i].a]);
        }
        let t = abc_per_cusp(&tau_13(&x, s).unwrap(), s).unwrap();
        assert_eq!(t[0], before[2]);
        assert_eq!(t[1], before[1]);
        assert_eq!(t[2], before[0]);
        assert_eq!(tau_13(&tau_13(&x, s).unwrap(), s).unwrap(), x);
        let mut y = x.clone();
        for _ in 0..6 {
            y = theta_r(&y, s).unwrap();
        }
        assert_eq!(y, x);
        assert_ne!(theta_r2(&theta_r(&x, s).unwrap(), s).unwrap(), x);
    }

    #[test]
    fn tau_needs_three_cusps_and_signatures_must_match() {
        let s1 = XkSignature::new(1).unwrap();
        assert!(tau_13(&numbered(s1), s1).is_err());
        let s3 = XkSignature::new(3).unwrap();
        assert!(matches!(abc(&numbered(s1), s3), Err(Error::SignatureMismatch(_))));
    }

    #[test]
    fn rotated_filling_is_a_filling_with_rotated_coefficients() {
        let s = XkSignature::new(1).unwrap();
        let y = solve_filling(s.gk(), &FillingSpec::parse("7/2").unwrap(), &SolveOptions::default()).unwrap();
        let (p, q) = dehn_coefficients(&y, 1).unwrap().finite().unwrap();
        let z = theta_r(&y, s).unwrap();
        let (pr, qr) = dehn_coefficients(&z, 1).unwrap().finite().unwrap();
        assert!((pr - q).abs() < 1e-9 && (qr - (q - p)).abs() < 1e-9);
        assert!(abc_defect(&z, s).unwrap().abs() < 1e-10);
        let verdict = commensurable(&y, &z, s, DEFAULT_COMMENSURABILITY_TOL).unwrap();
        assert_eq!(verdict, Commensurability::NotCommensurable);
        assert_eq!(commensurable(&y, &y, s, 1e-8).unwrap(), Commensurability::Commensurable);
    }
}
