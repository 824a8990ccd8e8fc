use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use manyopt::harness::{default_sweep_axes, io, run_experiment, sensitivity_sweep, ExperimentConfig};
use manyopt::metrics::{hv_exact, hv_monte_carlo, igd, HvReference};
use manyopt::problems::{Problem, ProblemId, ProblemInstance};
use manyopt::weights::WeightSet;
use manyopt::Error;

#[derive(Parser)]
#[command(name = "manyopt", version, about = "Many-objective optimization with local iterative update")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment and print its statistics as JSON.
    Run {
        config: PathBuf,
        /// Overrides `output_dir` from the config.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a T x p_s grid; omitted axes take the default 11-value ranges.
    Sweep {
        config: PathBuf,
        #[arg(long, value_delimiter = ',')]
        t_values: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        ps_values: Vec<f64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compute IGD or hypervolume of a front CSV.
    Metrics(MetricsArgs),
    /// Print a weight set as CSV, or its neighborhoods with --neighbors.
    Weights {
        #[arg(long)]
        m: usize,
        /// Divisions, or boundary-layer divisions with --d2.
        #[arg(long)]
        d: usize,
        #[arg(long)]
        d2: Option<usize>,
        #[arg(long, default_value_t = 0.5)]
        tau: f64,
        /// Print the T nearest indices of each vector instead of the vectors.
        #[arg(long)]
        neighbors: Option<usize>,
    },
    /// List the benchmark problems.
    Problems {
        #[command(subcommand)]
        action: ProblemsAction,
    },
}

#[derive(Subcommand)]
enum ProblemsAction {
    List,
}

#[derive(Args)]
struct MetricsArgs {
    front: PathBuf,
    /// Reference front for IGD.
    #[arg(long, conflicts_with = "hv")]
    igd: Option<PathBuf>,
    #[arg(long, requires = "hv_ref")]
    hv: bool,
    #[arg(long, value_delimiter = ',')]
    hv_ref: Option<Vec<f64>>,
    /// Estimate hypervolume from this many samples instead of computing it exactly.
    #[arg(long)]
    mc_samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let detail = match &e {
                Error::Config { field, message } => json!({"kind": "config", "field": field, "message": message}),
                Error::Domain(m) => json!({"kind": "domain", "message": m}),
                Error::Unsupported(m) => json!({"kind": "unsupported", "message": m}),
                Error::Parse { path, message } => json!({"kind": "parse", "path": path, "message": message}),
                Error::Io { path, source } => json!({"kind": "io", "path": path, "message": source.to_string()}),
                Error::Json(err) => json!({"kind": "json", "message": err.to_string()}),
            };
            eprintln!("{}", json!({ "error": detail }));
            ExitCode::from(2)
        }
    }
}

fn print_json(value: &impl serde::Serialize) -> manyopt::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn execute(cli: Cli) -> manyopt::Result<()> {
    match cli.command {
        Command::Run { config, output } => {
            let mut config = ExperimentConfig::load(&config)?;
            if output.is_some() {
                config.output_dir = output;
            }
            print_json(&run_experiment(&config)?.stats)
        }
        Command::Sweep {
            config,
            t_values,
            ps_values,
            output,
        } => {
            let mut config = ExperimentConfig::load(&config)?;
            if output.is_some() {
                config.output_dir = output;
            }
            let (default_t, default_ps) = default_sweep_axes();
            let t_values = if t_values.is_empty() { default_t } else { t_values };
            let ps_values = if ps_values.is_empty() { default_ps } else { ps_values };
            print_json(&sensitivity_sweep(&config, &t_values, &ps_values)?)
        }
        Command::Metrics(args) => metrics(args),
        Command::Weights {
            m,
            d,
            d2,
            tau,
            neighbors,
        } => {
            let set = match d2 {
                Some(d2) => WeightSet::two_layer(m, d, d2, tau)?,
                None => WeightSet::simplex_lattice(m, d)?,
            };
            match neighbors {
                Some(t) => {
                    let set = set.with_neighborhoods(t)?;
                    for nb in set.neighborhoods() {
                        let row: Vec<String> = nb.iter().map(|j| j.to_string()).collect();
                        println!("{}", row.join(","));
                    }
                }
                None => {
                    for w in set.vectors() {
                        let row: Vec<String> = w.components().iter().map(|v| io::format_f64(*v)).collect();
                        println!("{}", row.join(","));
                    }
                }
            }
            Ok(())
        }
        Command::Problems {
            action: ProblemsAction::List,
        } => {
            println!("name\tsuite\tvariables_at_m3\thv_reference_at_m3");
            for id in ProblemId::ALL {
                let p = ProblemInstance::new(id, 3)?;
                let suite = if id.is_dtlz() { "dtlz" } else { "wfg" };
                let z: Vec<String> = id.hv_reference(3).iter().map(|v| v.to_string()).collect();
                println!("{id}\t{suite}\t{}\t{}", p.variables(), z.join(","));
            }
            Ok(())
        }
    }
}

fn metrics(args: MetricsArgs) -> manyopt::Result<()> {
    let front = io::read_front(&args.front)?;
    if let Some(reference) = args.igd {
        let reference = io::read_front(&reference)?;
        return print_json(&json!({ "igd": igd(&front, &reference)? }));
    }
    if args.hv {
        let z = HvReference::new(args.hv_ref.unwrap_or_default())?;
        return match args.mc_samples {
            Some(samples) => {
                let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
                let e = hv_monte_carlo(&front, &z, samples, &mut rng)?;
                print_json(&json!({ "hv": e.value, "std_error": e.std_error, "samples": e.samples }))
            }
            None => print_json(&json!({ "hv": hv_exact(&front, &z)? })),
        };
    }
    Err(Error::Config {
        field: "metrics".into(),
        message: "pass --igd <ref.csv> or --hv --hv-ref z1,z2,...".into(),
    })
}
