//! Hyperbolic Dehn filling: solve for a filled structure and read back its
//! Dehn coefficients and the complex length of the core geodesic.

use mgk::cusp_invariants::complex_length;
use mgk::deformation::{dehn_coefficients, residuals, solve_filling, FillingSpec, GKSignature, SolveOptions};

fn main() -> mgk::Result<()> {
    let sig = GKSignature::new(2, 1)?;
    let opts = SolveOptions::default();
    for (p, q) in [(3, 1), (5, 1), (7, 2), (19, 11), (16, -1)] {
        let spec: FillingSpec = FillingSpec::parse(&format!("{p}/{q}"))?;
        let x = solve_filling(sig, &spec, &opts)?;
        let (pc, qc) = dehn_coefficients(&x, 1)?.finite().expect("cusp is filled");
        let cl = complex_length(&x, 1, (p, q))?.value;
        println!(
            "{p:>3}/{q:<3} residual {:.1e}  coefficients ({pc:.12}, {qc:.12})  core length {:.10} {:+.10}i",
            residuals(sig, &x)?.max_norm(),
            cl.re,
            cl.im
        );
    }

    // Slopes shorter than √7 do not give hyperbolic fillings.
    let short = FillingSpec::parse("2/1")?;
    println!("2/1: {}", solve_filling(sig, &short, &opts).unwrap_err());
    Ok(())
}
