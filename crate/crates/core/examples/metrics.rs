//! IGD, exact hypervolume and its Monte-Carlo estimate on a run's front.
//!
//!     cargo run --release --example metrics

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use manyopt::engine::{run, EngineConfig};
use manyopt::metrics::{hv_exact, hv_monte_carlo, igd, reference_set, Front, HvReference};
use manyopt::problems::{ProblemId, ProblemInstance};
use manyopt::weights::WeightSet;

fn main() -> manyopt::Result<()> {
    let problem = ProblemInstance::new(ProblemId::Dtlz2, 3)?;
    let lattice = WeightSet::simplex_lattice(3, 12)?;
    let reference = reference_set(ProblemId::Dtlz2, &lattice)?;
    let record = run(&problem, &lattice.with_neighborhoods(30)?, &EngineConfig::for_problem(&problem, 250), 1)?;
    let front = Front::new(record.final_objectives())?;

    println!("IGD               {:.6e}", igd(&front, &reference)?);
    let z = HvReference::new(vec![1.1, 1.1, 1.1])?;
    println!("HV exact          {:.6}", hv_exact(&front, &z)?);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for samples in [10_000, 1_000_000] {
        let e = hv_monte_carlo(&front, &z, samples, &mut rng)?;
        println!("HV {samples:>9} MC  {:.6} +/- {:.6}", e.value, e.std_error);
    }
    Ok(())
}
