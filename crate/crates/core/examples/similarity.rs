//! Similar fillings: the orbit of a set of slopes under the isometries of the
//! cusp tori, each member certified by an explicit witness.

use mgk::slopes::{enumerate_equivalent_sets, similarity_count_bound, slope_sets_equivalent, SlopeSet};

fn main() -> mgk::Result<()> {
    for text in ["3/1@1,2/3@2", "3/1@1,5/1@2"] {
        let a = SlopeSet::parse(3, text)?;
        let sets = enumerate_equivalent_sets(&a)?;
        println!("{a}: {} equivalent sets (lower bound {})", sets.len(), similarity_count_bound(3, a.filled()));
        for b in sets.iter().take(4) {
            let w = slope_sets_equivalent(&a, b, true)?.expect("member of the orbit");
            let local: Vec<String> = w.local.iter().map(ToString::to_string).collect();
            println!(
                "  {b}  via tori {:?}, local [{}]",
                w.perm.iter().map(|p| p + 1).collect::<Vec<_>>(),
                local.join(", ")
            );
        }
    }
    Ok(())
}
