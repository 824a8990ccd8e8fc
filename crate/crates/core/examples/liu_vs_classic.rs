//! One update pass by each strategy on the same neighborhood, then full runs
//! on DTLZ4 comparing duplicate slots and IGD.
//!
//!     cargo run --release --example liu_vs_classic

use manyopt::engine::{classic_update, liu_update, run, EngineConfig, Population, UpdateStrategy};
use manyopt::metrics::{igd, reference_set, Front};
use manyopt::problems::{ProblemId, ProblemInstance};
use manyopt::scalarize::ScalarizerState;
use manyopt::variation::Individual;
use manyopt::weights::WeightSet;

fn individual(id: u64, objectives: [f64; 2]) -> Individual {
    Individual {
        id,
        decision: vec![],
        objectives: objectives.to_vec(),
    }
}

fn ids(p: &Population) -> Vec<u64> {
    p.slots().iter().map(|s| s.id).collect()
}

fn main() -> manyopt::Result<()> {
    let weights = WeightSet::simplex_lattice(2, 4)?.with_neighborhoods(5)?;
    let start = Population::new(vec![
        individual(0, [0.0, 1.0]),
        individual(1, [0.6, 0.9]),
        individual(2, [0.9, 0.6]),
        individual(3, [0.9, 0.4]),
        individual(4, [1.0, 0.0]),
    ]);
    let frame = ScalarizerState::from_points(vec![0.0, 0.0], vec![1.0, 1.0], 5.0)?;
    let c = individual(5, [0.5, 0.5]);
    let nb = weights.neighborhood(2).to_vec();
    println!("slots before: {:?}, offspring id 5, neighborhood {nb:?}", ids(&start));

    let mut liu = start.clone();
    let out = liu_update(c.clone(), &nb, &mut liu, &weights, &frame);
    println!("liu:         {:?}, discarded {:?}", ids(&liu), out.discarded.map(|d| d.id));
    for (name, cap) in [("replace_all", None), ("replace_2", Some(2))] {
        let mut p = start.clone();
        classic_update(&c, &nb, &mut p, &weights, &frame, cap);
        println!("{name:<12} {:?}", ids(&p));
    }

    println!("\nDTLZ4, M = 3, 600 generations, 5 seeds");
    let problem = ProblemInstance::new(ProblemId::Dtlz4, 3)?;
    let weights = WeightSet::simplex_lattice(3, 12)?.with_neighborhoods(30)?;
    let reference = reference_set(ProblemId::Dtlz4, &WeightSet::simplex_lattice(3, 12)?)?;
    for update in UpdateStrategy::ALL {
        let config = EngineConfig::for_problem(&problem, 600).with_update(update);
        for seed in 1..=5 {
            let record = run(&problem, &weights, &config, seed)?;
            let value = igd(&Front::new(record.final_objectives())?, &reference)?;
            println!(
                "  {update:<12} seed {seed}: duplicates {:>3}  IGD {value:.4e}",
                record.population.duplicate_slots()
            );
        }
    }
    Ok(())
}
