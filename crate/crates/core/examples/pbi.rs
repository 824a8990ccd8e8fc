//! PBI values of a few points against one weight vector, in both
//! normalization modes.
//!
//!     cargo run --example pbi

use manyopt::scalarize::{Normalization, ScalarizerState};

fn main() -> manyopt::Result<()> {
    let frame = ScalarizerState::from_points(vec![0.0, 0.0], vec![2.0, 4.0], 5.0)?;
    let w = [0.5, 0.5];
    for mode in [Normalization::Ideal, Normalization::IdealNadir] {
        let frame = frame.clone().with_normalization(mode);
        println!("normalization = {}", mode.name());
        for f in [[1.0, 1.0], [1.0, 2.0], [0.2, 3.0]] {
            let p = frame.pbi(&f, &w)?;
            println!("  f = {f:?}  d1 = {:.4}  d2 = {:.4}  pbi = {:.4}", p.d1, p.d2, p.value);
        }
    }
    Ok(())
}
