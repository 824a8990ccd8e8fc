//! Plugging a user-defined problem into the engine.
//!
//!     cargo run --release --example custom_problem

use manyopt::engine::{run, EngineConfig};
use manyopt::metrics::{hv_exact, Front, HvReference};
use manyopt::problems::{Bounds, Problem};
use manyopt::weights::WeightSet;

/// Two-objective ZDT1: a convex front `f2 = 1 - sqrt(f1)`.
struct Zdt1 {
    bounds: Bounds,
}

impl Problem for Zdt1 {
    fn objectives(&self) -> usize {
        2
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64]) -> manyopt::Result<Vec<f64>> {
        let g = 1.0 + 9.0 * x[1..].iter().sum::<f64>() / (x.len() - 1) as f64;
        Ok(vec![x[0], g * (1.0 - (x[0] / g).sqrt())])
    }
}

fn main() -> manyopt::Result<()> {
    let problem = Zdt1 {
        bounds: Bounds::new(vec![0.0; 30], vec![1.0; 30])?,
    };
    let weights = WeightSet::simplex_lattice(2, 99)?.with_neighborhoods(20)?;
    let record = run(&problem, &weights, &EngineConfig::for_problem(&problem, 300), 11)?;
    let front = Front::new(record.final_objectives())?.nondominated();
    let hv = hv_exact(&front, &HvReference::new(vec![1.1, 1.1])?)?;
    println!("{} nondominated points, normalized HV {hv:.5}", front.len());
    let gap = front
        .points()
        .iter()
        .map(|f| (f[1] - (1.0 - f[0].sqrt())).abs())
        .fold(0.0, f64::max);
    println!("largest distance above the true front: {gap:.2e}");
    Ok(())
}
