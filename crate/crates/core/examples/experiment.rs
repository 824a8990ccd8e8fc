//! A 20-seed experiment with artifacts written to a directory.
//!
//!     cargo run --release --example experiment -- [output_dir]

use manyopt::harness::{run_experiment, ExperimentConfig, Metric};
use manyopt::problems::ProblemId;

fn main() -> manyopt::Result<()> {
    let mut config = ExperimentConfig::defaults(ProblemId::Dtlz1, 3)?;
    config.output_dir = std::env::args().nth(1).map(Into::into);
    let report = run_experiment(&config)?;
    let stats = &report.stats;
    println!(
        "{} with {} update: N = {}, G = {}, {} seeds",
        stats.problem,
        stats.update,
        stats.population_size,
        stats.generations,
        stats.seeds.len()
    );
    if let Some(row) = stats.metric(Metric::Igd) {
        println!("IGD best {:.4e}  median {:.4e}  worst {:.4e}", row.best, row.median, row.worst);
    }
    if let Some(dir) = &config.output_dir {
        println!("artifacts in {}", dir.display());
    }
    Ok(())
}
