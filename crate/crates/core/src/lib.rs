//! # manyopt
//!
//! Decomposition-based many-objective evolutionary optimization built around
//! the *local iterative update* (LIU) population update, together with the
//! classic MOEA/D replacement rules it is compared against, the DTLZ1-4 and
//! WFG1-9 benchmark suites, and the IGD / hypervolume quality indicators.
//!
//! The crate is organised bottom-up:
//!
//! - [`weights`]: Das-Dennis simplex-lattice weight vectors (single and
//!   two-layer) and angle-based neighborhoods.
//! - [`scalarize`]: PBI scalarization against a moving ideal/nadir frame.
//! - [`variation`]: mating selection, SBX and polynomial mutation.
//! - [`problems`]: DTLZ1-4 and WFG1-9 generators.
//! - [`engine`]: the generational loop and the LIU / replace-all /
//!   replace-at-most-2 update strategies.
//! - [`metrics`]: IGD, exact (WFG) and Monte-Carlo hypervolume.
//! - [`harness`]: seeded multi-run experiments, statistics, sweeps and
//!   artifact output.
//!
//! ```no_run
//! use manyopt::engine::{run, EngineConfig};
//! use manyopt::problems::{ProblemId, ProblemInstance};
//! use manyopt::weights::WeightSet;
//!
//! let problem = ProblemInstance::new(ProblemId::Dtlz2, 3)?;
//! let weights = WeightSet::simplex_lattice(3, 12)?.with_neighborhoods(30)?;
//! let config = EngineConfig::for_problem(&problem, 250);
//! let record = run(&problem, &weights, &config, 7)?;
//! println!("{} evaluations", record.counters.evaluations);
//! # Ok::<(), manyopt::Error>(())
//! ```
//!
//! Runnable walkthroughs for each capability live in `examples/`.

pub mod engine;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod problems;
pub mod scalarize;
pub mod variation;
pub mod weights;

pub use error::{Error, Result};
