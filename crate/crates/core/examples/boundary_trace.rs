//! The boundary surface is not isolated: along ς̄ the trace of a boundary
//! loop has zero first derivative but a non-zero second derivative.

use mgk::boundary_trace::{
    curve_trace_derivatives, r0_grid, stima_inequality, trace_second_derivative, varsigma_trace_data,
};
use mgk::deformation::GKSignature;

fn main() -> mgk::Result<()> {
    let sig = GKSignature::new(2, 1)?;
    for delta in [0, 1] {
        println!("δ = {delta}");
        println!("{:>8} {:>14} {:>14} {:>12} {:>6}", "r0", "tr'' formula", "tr'' curve", "tr' curve", "stima");
        for r0 in r0_grid(sig, delta, 6, 0.1)? {
            let inp = varsigma_trace_data(sig, delta, r0)?;
            let (d1, d2) = curve_trace_derivatives(sig, delta, r0, 1e-2)?;
            println!(
                "{r0:>8.4} {:>14.8} {d2:>14.8} {d1:>12.1e} {:>6}",
                trace_second_derivative(&inp),
                stima_inequality(inp.lambda0, inp.eta0, inp.zeta0)
            );
        }
    }
    Ok(())
}
