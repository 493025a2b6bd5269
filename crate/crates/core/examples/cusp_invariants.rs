//! Geometric isolation: filling one cusp leaves the shape of an unfilled
//! cusp exactly hexagonal. Also prints the scalar invariants.

use mgk::cusp_invariants::{cusp_modulus, heegaard_genus, homology_rank, return_path_length, CuspShape};
use mgk::deformation::{solve_filling, FillingSpec, GKSignature, SolveOptions};

fn main() -> mgk::Result<()> {
    let sig = GKSignature::new(3, 2)?;
    let hex = CuspShape::hexagonal();
    for slope in ["3/1", "5/1", "8/3", "7/-2"] {
        let spec = FillingSpec::parse(&format!("inf,{slope}"))?;
        let x = solve_filling(sig, &spec, &SolveOptions::default())?;
        let shape = cusp_modulus(&x, 1)?;
        println!(
            "fill cusp 2 with {slope:<5} cusp-1 modulus {:.12} (distance to e^{{iπ/3}}: {:.1e})  return path {:.12}  H₁ rank {}  Heegaard genus {}",
            shape.tau,
            shape.distance(&hex),
            return_path_length(&x)?,
            homology_rank(sig, spec.filled_count())?,
            heegaard_genus(sig)
        );
    }
    Ok(())
}
