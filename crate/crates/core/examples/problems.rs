//! Evaluates every benchmark at a fixed decision vector and shows an
//! analytic Pareto point.
//!
//!     cargo run --example problems

use manyopt::problems::{pareto_point_from_weight, Problem, ProblemId, ProblemInstance};

fn main() -> manyopt::Result<()> {
    for id in ProblemId::ALL {
        let p = ProblemInstance::new(id, 3)?;
        let x: Vec<f64> = (0..p.variables()).map(|j| 0.5 * (p.bounds().lower(j) + p.bounds().upper(j))).collect();
        let f = p.evaluate(&x)?;
        println!("{:<6} n = {:>2}  f(mid) = {f:.4?}", id.name(), p.variables());
    }
    let w = [0.2, 0.3, 0.5];
    println!("\nDTLZ1 point on w = {w:?}: {:.4?}", pareto_point_from_weight(ProblemId::Dtlz1, &w)?);
    println!("DTLZ2 point on w = {w:?}: {:.4?}", pareto_point_from_weight(ProblemId::Dtlz2, &w)?);
    Ok(())
}
