//! Fillings of X_3 distinguished by their edge-angle sums (a, b, c): a filling
//! and its two rotations are pairwise non-commensurable, while the filling of
//! cusp 1 and the same filling of cusp 3 are commensurable.

use mgk::deformation::{solve_filling, FillingSpec, SolveOptions};
use mgk::xk::{abc, commensurable, edge_angle_cycle, theta_r, theta_r2, XkSignature, DEFAULT_COMMENSURABILITY_TOL};

fn main() -> mgk::Result<()> {
    let xs = XkSignature::new(3)?;
    println!("{xs}: compact-edge cycle {:?}", edge_angle_cycle(xs));
    let opts = SolveOptions::default();
    let y = solve_filling(xs.gk(), &FillingSpec::parse("7/2,inf,inf")?, &opts)?;
    let y3 = solve_filling(xs.gk(), &FillingSpec::parse("inf,inf,7/2")?, &opts)?;
    let family = [("y", y.clone()), ("Θ(r)y", theta_r(&y, xs)?), ("Θ(r²)y", theta_r2(&y, xs)?), ("y₃", y3)];
    for (name, x) in &family {
        let t = abc(x, xs)?;
        println!("{name:<7} a = {:.12}  b = {:.12}  c = {:.12}", t.a, t.b, t.c);
    }
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            let verdict = commensurable(&family[i].1, &family[j].1, xs, DEFAULT_COMMENSURABILITY_TOL)?;
            println!("{} vs {}: {verdict}", family[i].0, family[j].0);
        }
    }
    Ok(())
}
