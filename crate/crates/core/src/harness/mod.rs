//! Seeded multi-run experiments, statistics tables, sensitivity sweeps and
//! artifact output.
//!
//! An experiment with `runs = R` and `seed = s` executes runs with seeds
//! `s, s+1, ..., s+R-1`. Each run is single-threaded and owns its RNG, so a
//! batch gives the same per-seed records whether it runs sequentially or on
//! the rayon pool.
//!
//! With an output directory, [`run_experiment`] writes:
//!
//! - `config.toml`: the resolved configuration in canonical form;
//! - `front_seed<k>.csv`: the final population's objectives, one row per slot;
//! - `stats.json`: per-metric values and best/median/worst, deterministic;
//! - `counters.json`: operation counters per seed;
//! - `timing.json`: wall-clock seconds per seed (the only nondeterministic file).

mod config;
pub mod io;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{run_with_trace, Counters, EngineConfig, RunRecord};
use crate::error::{Error, Result};
use crate::metrics::{hypervolume, igd, reference_set, Front, HvReference, HvSettings};
use crate::problems::ProblemInstance;
use crate::weights::WeightSet;

pub use config::{default_divisions, default_generations, ExperimentConfig, ENV_PREFIX};

/// Mixed into a run's seed to seed its Monte-Carlo hypervolume sampler.
const HV_SEED_SALT: u64 = 0x005e_ed0f_4b1d_e7a1;

/// A quality indicator selectable in a config.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Igd,
    Hv,
}

impl Metric {
    pub fn direction(self) -> Direction {
        match self {
            Metric::Igd => Direction::Minimize,
            Metric::Hv => Direction::Maximize,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

/// Best, median and worst of a metric over a batch.
///
/// For an even count the median is the mean of the two middle values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatsRow {
    pub best: f64,
    pub median: f64,
    pub worst: f64,
}

impl StatsRow {
    pub fn from_values(values: &[f64], direction: Direction) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("statistics of an empty batch"));
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::domain("statistics over NaN values"));
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        let median = if n % 2 == 1 {
            sorted[n / 2]
        } else {
            0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
        };
        let (lo, hi) = (sorted[0], sorted[n - 1]);
        Ok(match direction {
            Direction::Minimize => StatsRow {
                best: lo,
                median,
                worst: hi,
            },
            Direction::Maximize => StatsRow {
                best: hi,
                median,
                worst: lo,
            },
        })
    }
}

/// One metric over a batch: per-seed values in seed order plus the summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub values: Vec<f64>,
    #[serde(flatten)]
    pub stats: StatsRow,
}

/// Contents of `stats.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentStats {
    pub problem: String,
    pub update: String,
    pub population_size: usize,
    pub generations: usize,
    pub seeds: Vec<u64>,
    pub metrics: BTreeMap<Metric, MetricSummary>,
    /// Slots holding a copy of another slot's individual, per seed.
    pub duplicate_slots: Vec<usize>,
}

impl ExperimentStats {
    pub fn metric(&self, metric: Metric) -> Option<&StatsRow> {
        self.metrics.get(&metric).map(|m| &m.stats)
    }
}

/// One finished run with its metrics.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub record: RunRecord,
    pub metrics: BTreeMap<Metric, f64>,
    pub duplicate_slots: usize,
    pub elapsed: Duration,
}

/// A finished experiment.
#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub runs: Vec<RunOutcome>,
    pub stats: ExperimentStats,
}

/// Everything derived from a config that is shared by its runs.
pub struct Experiment {
    config: ExperimentConfig,
    problem: ProblemInstance,
    weights: WeightSet,
    engine: EngineConfig,
    igd_reference: Option<Front>,
    hv_reference: HvReference,
}

impl Experiment {
    pub fn new(config: ExperimentConfig) -> Result<Self> {
        config.validate()?;
        let problem = config.problem_instance()?;
        let weights = config.weight_set()?;
        let engine = config.engine_config()?;
        let igd_reference = if config.metrics.contains(&Metric::Igd) {
            Some(reference_set(config.problem, &weights)?)
        } else {
            None
        };
        let hv_reference = HvReference::new(config.hv_reference.clone())
            .map_err(|e| Error::config("hv_reference", e.to_string()))?;
        Ok(Experiment {
            config,
            problem,
            weights,
            engine,
            igd_reference,
            hv_reference,
        })
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.config
    }

    pub fn problem(&self) -> &ProblemInstance {
        &self.problem
    }

    pub fn weights(&self) -> &WeightSet {
        &self.weights
    }

    pub fn engine_config(&self) -> &EngineConfig {
        &self.engine
    }

    pub fn seeds(&self) -> Vec<u64> {
        (0..self.config.runs as u64).map(|k| self.config.seed + k).collect()
    }

    /// `metric` of an objective-vector set.
    pub fn evaluate_metric(&self, metric: Metric, objectives: Vec<Vec<f64>>, seed: u64) -> Result<f64> {
        let front = Front::new(objectives)?;
        match metric {
            Metric::Igd => {
                let reference = self
                    .igd_reference
                    .as_ref()
                    .ok_or_else(|| Error::config("metrics", "igd not selected"))?;
                igd(&front, reference)
            }
            Metric::Hv => {
                let settings = HvSettings {
                    exact_limit: self.config.hv_exact_limit,
                    samples: self.config.hv_samples,
                };
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ HV_SEED_SALT);
                hypervolume(&front, &self.hv_reference, settings, &mut rng)
            }
        }
    }

    /// One run with `seed`, metrics included.
    pub fn run_seed(&self, seed: u64) -> Result<RunOutcome> {
        let started = Instant::now();
        let interval = self.config.trace_interval;
        let last = self.config.generations;
        let first_metric = self.config.metrics[0];
        let mut trace_error = None;
        let record = run_with_trace(&self.problem, &self.weights, &self.engine, seed, |view| {
            let due = interval.is_some_and(|k| view.generation % k == 0 || view.generation == last);
            if !due || trace_error.is_some() {
                return None;
            }
            match self.evaluate_metric(first_metric, view.population.objectives(), seed) {
                Ok(v) => Some(v),
                Err(e) => {
                    trace_error = Some(e);
                    None
                }
            }
        })?;
        if let Some(e) = trace_error {
            return Err(e);
        }
        let mut metrics = BTreeMap::new();
        for &m in &self.config.metrics {
            metrics.insert(m, self.evaluate_metric(m, record.final_objectives(), seed)?);
        }
        Ok(RunOutcome {
            duplicate_slots: record.population.duplicate_slots(),
            record,
            metrics,
            elapsed: started.elapsed(),
        })
    }

    /// All runs, in seed order.
    pub fn run_batch(&self, parallel: bool) -> Result<Vec<RunOutcome>> {
        let seeds = self.seeds();
        if parallel {
            seeds.into_par_iter().map(|s| self.run_seed(s)).collect()
        } else {
            seeds.into_iter().map(|s| self.run_seed(s)).collect()
        }
    }

    pub fn summarize(&self, runs: &[RunOutcome]) -> Result<ExperimentStats> {
        let mut metrics = BTreeMap::new();
        for &m in &self.config.metrics {
            let values: Vec<f64> = runs.iter().map(|r| r.metrics[&m]).collect();
            let stats = StatsRow::from_values(&values, m.direction())?;
            metrics.insert(m, MetricSummary { values, stats });
        }
        Ok(ExperimentStats {
            problem: self.problem.key(),
            update: self.config.update.to_string(),
            population_size: self.weights.len(),
            generations: self.config.generations,
            seeds: runs.iter().map(|r| r.record.seed).collect(),
            metrics,
            duplicate_slots: runs.iter().map(|r| r.duplicate_slots).collect(),
        })
    }
}

#[derive(Serialize)]
struct CounterEntry {
    seed: u64,
    #[serde(flatten)]
    counters: Counters,
    duplicate_slots: usize,
}

#[derive(Serialize)]
struct TimingEntry {
    seed: u64,
    seconds: f64,
}

/// Runs every seed of `config`, and writes artifacts when `output_dir` is set.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let experiment = Experiment::new(config.clone())?;
    let runs = experiment.run_batch(config.parallel)?;
    let stats = experiment.summarize(&runs)?;
    let report = ExperimentReport {
        config: config.clone(),
        runs,
        stats,
    };
    if let Some(dir) = &config.output_dir {
        write_artifacts(&report, dir)?;
    }
    Ok(report)
}

/// Writes the experiment's artifacts into `dir`.
pub fn write_artifacts(report: &ExperimentReport, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let config_path = dir.join("config.toml");
    std::fs::write(&config_path, report.config.to_toml()).map_err(|e| Error::io(&config_path, e))?;
    for run in &report.runs {
        export_plot_data(
            &run.record,
            PlotKind::Scatter,
            &dir.join(format!("front_seed{}.csv", run.record.seed)),
        )?;
    }
    io::write_json(&dir.join("stats.json"), &report.stats)?;
    let counters: Vec<CounterEntry> = report
        .runs
        .iter()
        .map(|r| CounterEntry {
            seed: r.record.seed,
            counters: r.record.counters,
            duplicate_slots: r.duplicate_slots,
        })
        .collect();
    io::write_json(&dir.join("counters.json"), &counters)?;
    let timing: Vec<TimingEntry> = report
        .runs
        .iter()
        .map(|r| TimingEntry {
            seed: r.record.seed,
            seconds: r.elapsed.as_secs_f64(),
        })
        .collect();
    io::write_json(&dir.join("timing.json"), &timing)
}

/// Layout of an exported population.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlotKind {
    /// Columns `f1..fM`.
    Scatter,
    /// Columns `slot,f1..fM`: one polyline per slot, one axis per objective.
    Parallel,
}

/// Writes the final population's objectives, one row per slot.
pub fn export_plot_data(record: &RunRecord, kind: PlotKind, path: &Path) -> Result<()> {
    let objectives = record.final_objectives();
    let m = objectives.first().map_or(0, Vec::len);
    let mut header = io::objective_header(m);
    let rows = match kind {
        PlotKind::Scatter => objectives,
        PlotKind::Parallel => {
            header.insert(0, "slot".to_string());
            objectives
                .into_iter()
                .enumerate()
                .map(|(i, mut row)| {
                    row.insert(0, i as f64);
                    row
                })
                .collect()
        }
    };
    io::write_rows(path, &header, &rows)
}

/// One cell of a sensitivity grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub neighborhood_size: usize,
    pub p_s: f64,
    pub stats: ExperimentStats,
}

/// A `T x p_s` grid, row-major in `t_values` then `ps_values`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub t_values: Vec<usize>,
    pub ps_values: Vec<f64>,
    pub cells: Vec<SweepCell>,
}

impl SweepGrid {
    pub fn cell(&self, t: usize, p_s: f64) -> Option<&SweepCell> {
        self.cells
            .iter()
            .find(|c| c.neighborhood_size == t && c.p_s == p_s)
    }
}

/// Default sweep axes: `T = 10, 15, ..., 60` and `p_s = 0, 0.1, ..., 1`.
pub fn default_sweep_axes() -> (Vec<usize>, Vec<f64>) {
    (
        (0..11).map(|i| 10 + 5 * i).collect(),
        (0..=10).map(|i| i as f64 / 10.0).collect(),
    )
}

/// Runs `base` once per `(T, p_s)` pair. With an output directory each cell
/// writes into `t<T>_ps<p_s>/` below it, and the grid goes to `sweep.json`.
pub fn sensitivity_sweep(base: &ExperimentConfig, t_values: &[usize], ps_values: &[f64]) -> Result<SweepGrid> {
    if t_values.is_empty() {
        return Err(Error::config("t_values", "empty"));
    }
    if ps_values.is_empty() {
        return Err(Error::config("ps_values", "empty"));
    }
    let mut cells = Vec::with_capacity(t_values.len() * ps_values.len());
    for &t in t_values {
        for &p_s in ps_values {
            let mut config = base.clone();
            config.neighborhood_size = t;
            config.p_s = p_s;
            config.output_dir = base.output_dir.as_ref().map(|d| cell_dir(d, t, p_s));
            let report = run_experiment(&config)?;
            cells.push(SweepCell {
                neighborhood_size: t,
                p_s,
                stats: report.stats,
            });
        }
    }
    let grid = SweepGrid {
        t_values: t_values.to_vec(),
        ps_values: ps_values.to_vec(),
        cells,
    };
    if let Some(dir) = &base.output_dir {
        io::write_json(&dir.join("sweep.json"), &grid)?;
    }
    Ok(grid)
}

fn cell_dir(base: &Path, t: usize, p_s: f64) -> PathBuf {
    base.join(format!("t{t}_ps{p_s}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::ProblemId;
    use proptest::prelude::*;

    fn quick(problem: ProblemId) -> ExperimentConfig {
        let mut c = ExperimentConfig::defaults(problem, 3).unwrap();
        c.divisions = 4;
        c.neighborhood_size = 5;
        c.generations = 10;
        c.runs = 3;
        c.seed = 40;
        c
    }

    #[test]
    fn stats_examples() {
        let one = StatsRow::from_values(&[0.3], Direction::Minimize).unwrap();
        assert_eq!((one.best, one.median, one.worst), (0.3, 0.3, 0.3));
        let even = StatsRow::from_values(&[4.0, 1.0, 3.0, 2.0], Direction::Maximize).unwrap();
        assert_eq!((even.best, even.median, even.worst), (4.0, 2.5, 1.0));
        assert!(StatsRow::from_values(&[], Direction::Minimize).is_err());
    }

    #[test]
    fn seeds_follow_base() {
        let report = run_experiment(&quick(ProblemId::Dtlz2)).unwrap();
        assert_eq!(report.stats.seeds, vec![40, 41, 42]);
        assert_eq!(report.stats.metrics[&Metric::Igd].values.len(), 3);
        assert_eq!(report.stats.population_size, 15);
    }

    #[test]
    fn sequential_and_parallel_batches_agree() {
        let e = Experiment::new(quick(ProblemId::Wfg4)).unwrap();
        let a = e.run_batch(false).unwrap();
        let b = e.run_batch(true).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.record, y.record);
            assert_eq!(x.metrics, y.metrics);
        }
    }

    #[test]
    fn trace_records_requested_generations() {
        let mut c = quick(ProblemId::Dtlz1);
        c.trace_interval = Some(4);
        c.runs = 1;
        let report = run_experiment(&c).unwrap();
        let gens: Vec<usize> = report.runs[0].record.trace.iter().map(|t| t.generation).collect();
        assert_eq!(gens, vec![0, 4, 8, 10]);
        let last = report.runs[0].record.trace.last().unwrap().value;
        assert_eq!(last, report.runs[0].metrics[&Metric::Igd]);
    }

    #[test]
    fn one_by_one_sweep_matches_experiment() {
        let c = quick(ProblemId::Dtlz2);
        let grid = sensitivity_sweep(&c, &[c.neighborhood_size], &[c.p_s]).unwrap();
        let direct = run_experiment(&c).unwrap();
        assert_eq!(grid.cells.len(), 1);
        assert_eq!(grid.cells[0].stats, direct.stats);
        let (t, ps) = default_sweep_axes();
        assert_eq!(t.len() * ps.len(), 121);
        assert!(sensitivity_sweep(&c, &[], &[0.9]).is_err());
    }

    #[test]
    fn exported_front_reproduces_igd() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = quick(ProblemId::Dtlz2);
        c.runs = 1;
        let e = Experiment::new(c).unwrap();
        let run = e.run_seed(40).unwrap();
        for kind in [PlotKind::Scatter, PlotKind::Parallel] {
            let path = dir.path().join("front.csv");
            export_plot_data(&run.record, kind, &path).unwrap();
            let front = io::read_front(&path).unwrap();
            assert_eq!(front.len(), 15);
            let again = e.evaluate_metric(Metric::Igd, front.into_points(), 40).unwrap();
            assert_eq!(again.to_bits(), run.metrics[&Metric::Igd].to_bits());
        }
    }

    proptest! {
        #[test]
        fn stats_ordering(values in proptest::collection::vec(0.0f64..10.0, 1..30)) {
            let lo = StatsRow::from_values(&values, Direction::Minimize).unwrap();
            prop_assert!(lo.best <= lo.median && lo.median <= lo.worst);
            let hi = StatsRow::from_values(&values, Direction::Maximize).unwrap();
            prop_assert!(hi.best >= hi.median && hi.median >= hi.worst);
        }
    }
}
