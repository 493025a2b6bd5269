//! Slopes on a hexagonal cusp torus: lengths, D6 orbits, and the equal-length
//! but inequivalent pair 19/11 and 16/-1.

use mgk::slopes::{classify_slopes, slope_length, slope_sets_equivalent, Slope, SlopeSet};

fn main() -> mgk::Result<()> {
    println!("{:>5} {:>9} {:>5} {:>5}  slopes", "L²", "L", "D6", "C6");
    for orbit in classify_slopes(49) {
        let names: Vec<String> = orbit.slopes.iter().map(ToString::to_string).collect();
        println!(
            "{:>5} {:>9.5} {:>5} {:>5}  {}",
            orbit.length_sq,
            (orbit.length_sq as f64).sqrt(),
            orbit.slopes.len(),
            orbit.rotation_orbit_size,
            names.join(" ")
        );
    }
    let (a, b) = (Slope::new(19, 11)?, Slope::new(16, -1)?);
    let related = slope_sets_equivalent(&SlopeSet::new(vec![Some(a)]), &SlopeSet::new(vec![Some(b)]), false)?;
    println!(
        "L({a}) = {:.6}, L({b}) = {:.6}, related by an isometry: {}",
        slope_length(a),
        slope_length(b),
        related.is_some()
    );
    Ok(())
}
