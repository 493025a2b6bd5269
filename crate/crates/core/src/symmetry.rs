//! The symmetry group `Sym(Ω_{g,k}) ≅ S_k ⋉ (S_3 × Z/2)^k` acting on angle
//! vectors, and its identification with the isometries of the cusp tori.

use crate::deformation::AngleVector;
use crate::slopes::{D6Element, SlopeSetIsometry};

/// A permutation of `{1, 2, 3}` as `[σ(1), σ(2), σ(3)]`.
pub type Perm3 = [usize; 3];

/// The 3-cycle `(132)`: `1 ↦ 3 ↦ 2 ↦ 1`.
pub const CYCLE_132: Perm3 = [3, 1, 2];
/// The transposition `(12)`.
pub const SWAP_12: Perm3 = [2, 1, 3];

fn invert3(sigma: Perm3) -> Perm3 {
    let mut inv = [0; 3];
    for j in 1..=3 {
        inv[sigma[j - 1] - 1] = j;
    }
    inv
}

/// `σ̂_i`: permutes the apices of `Δ_{2i−1}` and `Δ_{2i}`,
/// `α_l^j(σ̂x) = α_l^{σ⁻¹(j)}(x)` and likewise for `γ`.
pub fn sigma_hat(x: &AngleVector, i: usize, sigma: Perm3) -> AngleVector {
    let inv = invert3(sigma);
    let mut c = x.coords().to_vec();
    for l in [2 * i - 1, 2 * i] {
        for j in 1..=3 {
            c[6 * (l - 1) + j - 1] = x.alpha(l, inv[j - 1]);
            c[6 * (l - 1) + 2 + j] = x.gamma(l, inv[j - 1]);
        }
    }
    AngleVector::from_raw(x.signature(), c)
}

/// `ζ_i`: exchanges the roles of `Δ_{2i−1}` and `Δ_{2i}`.
pub fn zeta(x: &AngleVector, i: usize) -> AngleVector {
    let mut c = x.coords().to_vec();
    let base = 12 * (i - 1);
    for m in 0..6 {
        c.swap(base + m, base + 6 + m);
    }
    AngleVector::from_raw(x.signature(), c)
}

/// `κ̂`: cusp `i` of the result carries the tetrahedra of cusp `κ⁻¹(i)`.
/// `kappa` is 0-based: `kappa[i] = κ(i+1) − 1`.
pub fn kappa_hat(x: &AngleVector, kappa: &[usize]) -> AngleVector {
    let mut c = x.coords().to_vec();
    for (src, &dst) in kappa.iter().enumerate() {
        c[12 * dst..12 * dst + 12].copy_from_slice(x.cusp_block(src + 1));
    }
    AngleVector::from_raw(x.signature(), c)
}

/// `φ_i(r) = σ̂_{(132)} ∘ ζ_i`; on coefficients `(p, q) ↦ (p − q, p)`.
pub fn phi_r(x: &AngleVector, i: usize) -> AngleVector {
    sigma_hat(&zeta(x, i), i, CYCLE_132)
}

/// `φ_i(s) = σ̂_{(12)}`; on coefficients `(p, q) ↦ (p − q, −q)`.
pub fn phi_s(x: &AngleVector, i: usize) -> AngleVector {
    sigma_hat(x, i, SWAP_12)
}

/// Applies the local element `r^a s^e` at cusp `i`.
pub fn d6_act_on_cusp(x: &AngleVector, i: usize, e: D6Element) -> AngleVector {
    let mut y = if e.refl() { phi_s(x, i) } else { x.clone() };
    for _ in 0..e.rot() {
        y = phi_r(&y, i);
    }
    y
}

/// The element of `Sym(Ω_{g,k})` corresponding to `psi`: local actions on
/// each cusp, followed by the cusp permutation. Dehn coefficients transform
/// as `d(ψ·x) = ψ_*(d(x))`.
pub fn sym_act(psi: &SlopeSetIsometry, x: &AngleVector) -> AngleVector {
    let mut y = x.clone();
    for (i, &e) in psi.local.iter().enumerate() {
        y = d6_act_on_cusp(&y, i + 1, e);
    }
    kappa_hat(&y, &psi.perm)
}
