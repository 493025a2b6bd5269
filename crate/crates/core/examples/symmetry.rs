//! The symmetry generators acting on a filled structure: holonomy parameters
//! and Dehn coefficients transform by the expected integer matrices.

use mgk::deformation::{dehn_coefficients, solve_filling, uv, FillingSpec, GKSignature, SolveOptions};
use mgk::slopes::D6Element;
use mgk::symmetry::{d6_act_on_cusp, phi_r};

fn main() -> mgk::Result<()> {
    let sig = GKSignature::new(3, 2)?;
    let x = solve_filling(sig, &FillingSpec::parse("7/2,inf")?, &SolveOptions::default())?;
    let (u, v) = uv(&x, 1)?;
    let (ur, vr) = uv(&phi_r(&x, 1), 1)?;
    println!("u = {u:.10}, v = {v:.10}");
    println!("after r: u' = {ur:.10} (−v), v' = {vr:.10} (u + v)");
    let d = dehn_coefficients(&x, 1)?.finite().expect("filled");
    for e in D6Element::all() {
        let y = d6_act_on_cusp(&x, 1, e);
        let got = dehn_coefficients(&y, 1)?.finite().expect("filled");
        let want = e.act_real(d);
        println!("{e:<6} ({:+.9}, {:+.9})  expected ({:+.0}, {:+.0})", got.0, got.1, want.0, want.1);
    }
    Ok(())
}
