//! The generational loop and the population-update strategies.
//!
//! A run initializes one random individual per weight vector, then for each
//! generation visits subproblems `0..N` in order. A visit selects mates,
//! produces one offspring, moves the ideal/nadir frame to include it, and
//! hands it to the update strategy under a snapshot of that frame.
//!
//! The single RNG stream is consumed as follows: initialization draws one
//! uniform per variable for each slot in index order; every visit then draws
//! in the order documented in [`crate::variation`].

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problems::Problem;
use crate::scalarize::{Normalization, ScalarizerState, DEFAULT_THETA};
use crate::variation::{reproduce, select_mates, Individual, VariationConfig};
use crate::weights::WeightSet;

/// How an offspring is merged into its neighborhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum UpdateStrategy {
    /// Local iterative update: swap through the neighborhood, discard the last carried individual.
    #[default]
    #[serde(rename = "liu")]
    Liu,
    /// Copy the offspring into every neighbor it beats.
    #[serde(rename = "replace_all")]
    ReplaceAll,
    /// Copy the offspring into at most two neighbors it beats, in visit order.
    #[serde(rename = "replace_2")]
    ReplaceAtMost2,
}

impl UpdateStrategy {
    pub const ALL: [UpdateStrategy; 3] = [
        UpdateStrategy::Liu,
        UpdateStrategy::ReplaceAll,
        UpdateStrategy::ReplaceAtMost2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            UpdateStrategy::Liu => "liu",
            UpdateStrategy::ReplaceAll => "replace_all",
            UpdateStrategy::ReplaceAtMost2 => "replace_2",
        }
    }
}

impl fmt::Display for UpdateStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for UpdateStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        UpdateStrategy::ALL
            .into_iter()
            .find(|u| u.name() == s)
            .ok_or_else(|| {
                Error::config("update", format!("unknown strategy `{s}` (liu, replace_all, replace_2)"))
            })
    }
}

/// Everything [`run`] needs besides the problem, the weights and the seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub variation: VariationConfig,
    /// PBI penalty.
    pub theta: f64,
    pub normalization: Normalization,
    pub generations: usize,
    pub update: UpdateStrategy,
}

impl EngineConfig {
    /// Default operators for the problem's variable count, `theta = 5`,
    /// ideal-point translation, LIU.
    pub fn for_problem<P: Problem + ?Sized>(problem: &P, generations: usize) -> Self {
        EngineConfig {
            variation: VariationConfig::for_variables(problem.variables()),
            theta: DEFAULT_THETA,
            normalization: Normalization::Ideal,
            generations,
            update: UpdateStrategy::Liu,
        }
    }

    pub fn with_update(mut self, update: UpdateStrategy) -> Self {
        self.update = update;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.variation.validate()?;
        if !(self.theta > 0.0) || !self.theta.is_finite() {
            return Err(Error::config("pbi_theta", format!("must be positive, got {}", self.theta)));
        }
        Ok(())
    }
}

/// `N` slots, slot `i` attached to weight vector `i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Population {
    slots: Vec<Individual>,
}

impl Population {
    pub fn new(slots: Vec<Individual>) -> Self {
        Population { slots }
    }

    pub fn slots(&self) -> &[Individual] {
        &self.slots
    }

    pub fn slots_mut(&mut self) -> &mut [Individual] {
        &mut self.slots
    }

    pub fn slot(&self, i: usize) -> &Individual {
        &self.slots[i]
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn objectives(&self) -> Vec<Vec<f64>> {
        self.slots.iter().map(|s| s.objectives.clone()).collect()
    }

    pub fn decisions(&self) -> Vec<Vec<f64>> {
        self.slots.iter().map(|s| s.decision.clone()).collect()
    }

    /// Slots holding a copy of an individual that already occupies an earlier slot.
    pub fn duplicate_slots(&self) -> usize {
        let distinct: HashSet<u64> = self.slots.iter().map(|s| s.id).collect();
        self.slots.len() - distinct.len()
    }
}

/// Operation counts for one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Counters {
    /// All objective evaluations, including the `N` of initialization.
    pub evaluations: u64,
    /// Evaluations of offspring only: `N` per generation.
    pub offspring_evaluations: u64,
    /// PBI comparisons made by update passes.
    pub pbi_comparisons: u64,
    /// Slot changes: swaps for LIU, copies for the classic strategies.
    pub slot_changes: u64,
    pub update_passes: u64,
}

/// One entry of the optional per-generation trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub generation: usize,
    pub value: f64,
}

/// The complete result of one seeded run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub seed: u64,
    pub config: EngineConfig,
    pub population: Population,
    /// Frame after the last generation.
    pub frame: ScalarizerState,
    pub counters: Counters,
    pub trace: Vec<TracePoint>,
}

impl RunRecord {
    pub fn final_objectives(&self) -> Vec<Vec<f64>> {
        self.population.objectives()
    }
}

/// What a trace observer sees at the end of each generation (and after initialization, as generation 0).
pub struct GenerationView<'a> {
    pub generation: usize,
    pub population: &'a Population,
    pub frame: &'a ScalarizerState,
    pub counters: &'a Counters,
}

/// Result of one update pass.
#[derive(Debug, Clone, PartialEq)]
pub struct PassOutcome<T> {
    /// The individual that left the population (LIU), or `None` for classic strategies.
    pub discarded: Option<T>,
    pub comparisons: u64,
    pub slot_changes: u64,
}

/// LIU over abstract items: `score(item, j)` is the item's scalar cost on subproblem `j`.
///
/// For each `j` in `neighborhood` order, if the carried item scores strictly
/// lower than `slots[j]` on `j`, the two are exchanged. The item carried after
/// the last comparison is returned as discarded.
pub fn liu_pass<T, S>(carried: T, neighborhood: &[usize], slots: &mut [T], mut score: S) -> PassOutcome<T>
where
    S: FnMut(&T, usize) -> f64,
{
    let mut carried = carried;
    let mut swaps = 0;
    for &j in neighborhood {
        if score(&carried, j) < score(&slots[j], j) {
            std::mem::swap(&mut carried, &mut slots[j]);
            swaps += 1;
        }
    }
    PassOutcome {
        discarded: Some(carried),
        comparisons: neighborhood.len() as u64,
        slot_changes: swaps,
    }
}

/// Classic replacement over abstract items: copy `offspring` into every slot
/// it beats, stopping after `max_replacements` copies when given.
pub fn classic_pass<T, S>(
    offspring: &T,
    neighborhood: &[usize],
    slots: &mut [T],
    max_replacements: Option<usize>,
    mut score: S,
) -> PassOutcome<T>
where
    T: Clone,
    S: FnMut(&T, usize) -> f64,
{
    let mut comparisons = 0;
    let mut replaced = 0;
    for &j in neighborhood {
        if max_replacements.is_some_and(|cap| replaced >= cap) {
            break;
        }
        comparisons += 1;
        if score(offspring, j) < score(&slots[j], j) {
            slots[j] = offspring.clone();
            replaced += 1;
        }
    }
    PassOutcome {
        discarded: None,
        comparisons,
        slot_changes: replaced as u64,
    }
}

fn pbi_scorer<'a>(
    weights: &'a WeightSet,
    frame: &'a ScalarizerState,
) -> impl FnMut(&Individual, usize) -> f64 + 'a {
    let mut scratch = vec![0.0; frame.objectives()];
    move |ind: &Individual, j: usize| frame.pbi_value(&ind.objectives, weights.vector(j).components(), &mut scratch)
}

/// LIU pass of offspring `c` through `neighborhood` under the frozen `frame`.
pub fn liu_update(
    c: Individual,
    neighborhood: &[usize],
    population: &mut Population,
    weights: &WeightSet,
    frame: &ScalarizerState,
) -> PassOutcome<Individual> {
    liu_pass(c, neighborhood, &mut population.slots, pbi_scorer(weights, frame))
}

/// Classic MOEA/D replacement; `max_replacements = None` replaces every beaten slot.
pub fn classic_update(
    c: &Individual,
    neighborhood: &[usize],
    population: &mut Population,
    weights: &WeightSet,
    frame: &ScalarizerState,
    max_replacements: Option<usize>,
) -> PassOutcome<Individual> {
    classic_pass(c, neighborhood, &mut population.slots, max_replacements, pbi_scorer(weights, frame))
}

fn check_consistency<P: Problem + ?Sized>(problem: &P, weights: &WeightSet, config: &EngineConfig) -> Result<()> {
    config.validate()?;
    if weights.objectives() != problem.objectives() {
        return Err(Error::config(
            "objectives",
            format!(
                "weights have {} objectives, problem has {}",
                weights.objectives(),
                problem.objectives()
            ),
        ));
    }
    if !weights.has_neighborhoods() {
        return Err(Error::config("neighborhood_size", "weight set has no neighborhoods"));
    }
    if problem.bounds().len() != problem.variables() {
        return Err(Error::config("variables", "bounds length differs from variable count"));
    }
    Ok(())
}

/// Runs the algorithm for `config.generations` generations from `seed`.
pub fn run<P: Problem + ?Sized>(
    problem: &P,
    weights: &WeightSet,
    config: &EngineConfig,
    seed: u64,
) -> Result<RunRecord> {
    run_with_trace(problem, weights, config, seed, |_| None)
}

/// [`run`], recording `observer`'s value after initialization and after every generation when it returns one.
pub fn run_with_trace<P, F>(
    problem: &P,
    weights: &WeightSet,
    config: &EngineConfig,
    seed: u64,
    mut observer: F,
) -> Result<RunRecord>
where
    P: Problem + ?Sized,
    F: FnMut(&GenerationView<'_>) -> Option<f64>,
{
    check_consistency(problem, weights, config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds = problem.bounds();
    let n = weights.len();
    let mut counters = Counters::default();
    let mut next_id: u64 = 0;

    let mut slots = Vec::with_capacity(n);
    for _ in 0..n {
        let decision: Vec<f64> = (0..bounds.len())
            .map(|j| bounds.lower(j) + (bounds.upper(j) - bounds.lower(j)) * rng.gen::<f64>())
            .collect();
        let objectives = problem.evaluate(&decision)?;
        counters.evaluations += 1;
        slots.push(Individual {
            id: next_id,
            decision,
            objectives,
        });
        next_id += 1;
    }
    let mut population = Population::new(slots);
    let mut frame = ScalarizerState::init_from_population(
        population.slots.iter().map(|s| &s.objectives),
        config.theta,
    )?
    .with_normalization(config.normalization);
    let mut trace = Vec::new();
    let mut observe = |generation: usize, population: &Population, frame: &ScalarizerState, counters: &Counters| {
        let view = GenerationView {
            generation,
            population,
            frame,
            counters,
        };
        if let Some(value) = observer(&view) {
            trace.push(TracePoint { generation, value });
        }
    };
    observe(0, &population, &frame, &counters);

    let v = &config.variation;
    for generation in 1..=config.generations {
        for i in 0..n {
            let neighborhood = weights.neighborhood(i);
            let (a, b) = select_mates(i, neighborhood, n, v.p_s, &mut rng);
            let decision = reproduce(
                &population.slots[a].decision,
                &population.slots[b].decision,
                v,
                bounds,
                &mut rng,
            );
            let objectives = problem.evaluate(&decision)?;
            counters.evaluations += 1;
            counters.offspring_evaluations += 1;
            frame.update_ideal(&objectives);
            frame.update_nadir(&objectives);
            let child = Individual {
                id: next_id,
                decision,
                objectives,
            };
            next_id += 1;
            let outcome = match config.update {
                UpdateStrategy::Liu => liu_update(child, neighborhood, &mut population, weights, &frame),
                UpdateStrategy::ReplaceAll => {
                    classic_update(&child, neighborhood, &mut population, weights, &frame, None)
                }
                UpdateStrategy::ReplaceAtMost2 => {
                    classic_update(&child, neighborhood, &mut population, weights, &frame, Some(2))
                }
            };
            counters.pbi_comparisons += outcome.comparisons;
            counters.slot_changes += outcome.slot_changes;
            counters.update_passes += 1;
        }
        observe(generation, &population, &frame, &counters);
    }

    Ok(RunRecord {
        seed,
        config: config.clone(),
        population,
        frame,
        counters,
        trace,
    })
}
