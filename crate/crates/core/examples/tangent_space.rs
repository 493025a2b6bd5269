//! The tangent space at x₀: the numerical nullspace of the Jacobian has
//! dimension 2k and coincides with the closed-form basis Z̄.

use mgk::deformation::{jacobian, nullspace, solve_complete, subspace_distance, tangent_basis, GKSignature};

fn main() -> mgk::Result<()> {
    for (g, k) in [(2, 1), (3, 2), (4, 3), (6, 5)] {
        let sig = GKSignature::new(g, k)?;
        let x0 = solve_complete(sig)?.x0;
        let ns = nullspace(&jacobian(sig, &x0)?, 1e-10);
        let z = tangent_basis(sig)?.matrix();
        println!(
            "{sig}: nullity {} (2k = {}), gap {:.2e}, distance to Z̄ {:.2e}",
            ns.nullity(),
            2 * k,
            ns.gap,
            subspace_distance(&ns.basis, &z)
        );
    }
    Ok(())
}
