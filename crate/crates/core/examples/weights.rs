//! Weight sets for the usual objective counts, and one neighborhood.
//!
//!     cargo run --example weights

use manyopt::weights::{included_angle, WeightSet};

fn main() -> manyopt::Result<()> {
    for (m, d1, d2) in [(3, 12, None), (5, 6, None), (8, 3, Some(2)), (10, 3, Some(2)), (15, 2, Some(1))] {
        let set = match d2 {
            Some(d2) => WeightSet::two_layer(m, d1, d2, 0.5)?,
            None => WeightSet::simplex_lattice(m, d1)?,
        };
        println!("M={m:>2} D={d1} D2={d2:?}: {} vectors", set.len());
    }

    let set = WeightSet::simplex_lattice(3, 4)?.with_neighborhoods(4)?;
    let owner = set.vector(7).components();
    println!("\nneighborhood of w7 = {owner:?}");
    for &j in set.neighborhood(7) {
        let w = set.vector(j).components();
        println!("  w{j:<2} {w:?}  angle {:.4} rad", included_angle(owner, w)?);
    }
    Ok(())
}
