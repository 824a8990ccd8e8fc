//! Experiment configuration: a flat TOML document with environment overrides.
//!
//! Every key is optional except `problem` and `objectives`. Missing keys take
//! the standard benchmark protocol's values: divisions per objective count, generation
//! budgets per DTLZ instance and 3000 for WFG, 20 runs, `T = 30`,
//! `p_s = 0.9`, `theta = 5`.
//!
//! An environment variable `MANYOPT_<KEY>` (key upper-cased) replaces `<key>`.
//! Its value is read as a TOML value when it parses as one (`30`, `0.9`,
//! `[3, 5, 7]`, `"liu"`) and as a bare string otherwise.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::engine::{EngineConfig, UpdateStrategy};
use crate::error::{Error, Result};
use crate::problems::{ProblemId, ProblemInstance, Wfg3Mapping};
use crate::scalarize::{Normalization, DEFAULT_THETA};
use crate::variation::{SbxScheme, VariationConfig};
use crate::weights::WeightSet;

use super::Metric;

/// Prefix of environment overrides.
pub const ENV_PREFIX: &str = "MANYOPT_";

/// The configuration as written by a user; every field optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    problem: Option<ProblemId>,
    objectives: Option<usize>,
    update: Option<UpdateStrategy>,
    divisions: Option<usize>,
    inside_divisions: Option<usize>,
    tau: Option<f64>,
    neighborhood_size: Option<usize>,
    p_s: Option<f64>,
    p_c: Option<f64>,
    eta_c: Option<f64>,
    p_m: Option<f64>,
    eta_m: Option<f64>,
    pbi_theta: Option<f64>,
    normalization: Option<Normalization>,
    sbx_scheme: Option<SbxScheme>,
    generations: Option<usize>,
    runs: Option<usize>,
    seed: Option<u64>,
    metrics: Option<Vec<Metric>>,
    hv_reference: Option<Vec<f64>>,
    hv_samples: Option<u64>,
    hv_exact_limit: Option<usize>,
    position_variables: Option<usize>,
    distance_variables: Option<usize>,
    wfg3_mapping: Option<Wfg3Mapping>,
    trace_interval: Option<usize>,
    parallel: Option<bool>,
    output_dir: Option<PathBuf>,
}

/// A fully resolved experiment. Serializes to the canonical `config.toml`,
/// which parses back to the same value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub problem: ProblemId,
    pub objectives: usize,
    pub update: UpdateStrategy,
    /// `D`, or the boundary-layer `D1` when `inside_divisions` is set.
    pub divisions: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inside_divisions: Option<usize>,
    pub tau: f64,
    pub neighborhood_size: usize,
    pub p_s: f64,
    pub p_c: f64,
    pub eta_c: f64,
    pub p_m: f64,
    pub eta_m: f64,
    pub pbi_theta: f64,
    pub normalization: Normalization,
    pub sbx_scheme: SbxScheme,
    pub generations: usize,
    pub runs: usize,
    /// Run `k` uses seed `seed + k`.
    pub seed: u64,
    pub metrics: Vec<Metric>,
    pub hv_reference: Vec<f64>,
    /// Monte-Carlo samples when `objectives > hv_exact_limit`.
    pub hv_samples: u64,
    pub hv_exact_limit: usize,
    pub position_variables: usize,
    pub distance_variables: usize,
    pub wfg3_mapping: Wfg3Mapping,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_interval: Option<usize>,
    pub parallel: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

/// `(D1, D2)` for the objective counts the protocol fixes.
pub fn default_divisions(objectives: usize) -> Option<(usize, Option<usize>)> {
    match objectives {
        3 => Some((12, None)),
        5 => Some((6, None)),
        8 => Some((3, Some(2))),
        10 => Some((3, Some(2))),
        15 => Some((2, Some(1))),
        _ => None,
    }
}

/// Generation budget of the protocol, where it defines one.
pub fn default_generations(problem: ProblemId, objectives: usize) -> Option<usize> {
    if problem.is_wfg() {
        return Some(3000);
    }
    let column = [3, 5, 8, 10, 15].iter().position(|&m| m == objectives)?;
    let row: [usize; 5] = match problem {
        ProblemId::Dtlz1 => [400, 600, 750, 1000, 1500],
        ProblemId::Dtlz2 => [250, 350, 500, 750, 1000],
        ProblemId::Dtlz3 => [1000, 1000, 1000, 1500, 2000],
        ProblemId::Dtlz4 => [600, 1000, 1250, 2000, 3000],
        _ => unreachable!(),
    };
    Some(row[column])
}

fn toml_error(path: &Path, err: toml::de::Error) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        message: err.message().to_string(),
    }
}

/// Reads an override value as TOML when possible, else as a string.
fn env_value(raw: &str) -> toml::Value {
    match toml::from_str::<toml::Table>(&format!("v = {raw}")) {
        Ok(mut t) => t.remove("v").unwrap_or_else(|| toml::Value::String(raw.to_string())),
        Err(_) => toml::Value::String(raw.to_string()),
    }
}

impl ExperimentConfig {
    /// Reads `path` and applies `MANYOPT_*` variables from the process environment.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path, std::env::vars())
    }

    /// Parses `text` (reported as `origin` in errors) with explicit overrides.
    pub fn parse<I>(text: &str, origin: &Path, env: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        let mut table: toml::Table = text.parse().map_err(|e| toml_error(origin, e))?;
        for (key, value) in env {
            if let Some(field) = key.strip_prefix(ENV_PREFIX) {
                table.insert(field.to_ascii_lowercase(), env_value(&value));
            }
        }
        let raw: RawConfig = table.try_into().map_err(|e| toml_error(origin, e))?;
        Self::resolve(raw)
    }

    /// Defaults for `problem` with `objectives` objectives.
    pub fn defaults(problem: ProblemId, objectives: usize) -> Result<Self> {
        Self::resolve(RawConfig {
            problem: Some(problem),
            objectives: Some(objectives),
            ..RawConfig::default()
        })
    }

    fn resolve(raw: RawConfig) -> Result<Self> {
        let problem = raw
            .problem
            .ok_or_else(|| Error::config("problem", "missing"))?;
        let objectives = raw
            .objectives
            .ok_or_else(|| Error::config("objectives", "missing"))?;
        if objectives < 2 {
            return Err(Error::config("objectives", format!("must be >= 2, got {objectives}")));
        }
        let (divisions, inside_divisions) = match (raw.divisions, raw.inside_divisions) {
            (Some(d), inside) => (d, inside),
            (None, None) => default_divisions(objectives).ok_or_else(|| {
                Error::config("divisions", format!("no default for {objectives} objectives"))
            })?,
            (None, Some(_)) => {
                return Err(Error::config("divisions", "inside_divisions given without divisions"))
            }
        };
        let generations = match raw.generations {
            Some(g) => g,
            None => default_generations(problem, objectives).ok_or_else(|| {
                Error::config("generations", format!("no default for {problem} with {objectives} objectives"))
            })?,
        };
        let (position_variables, distance_variables) = if problem.is_dtlz() {
            if raw.position_variables.is_some_and(|k| k != objectives - 1) {
                return Err(Error::config(
                    "position_variables",
                    "DTLZ problems always have objectives - 1 position variables",
                ));
            }
            let r = if problem == ProblemId::Dtlz1 { 5 } else { 10 };
            (objectives - 1, raw.distance_variables.unwrap_or(r))
        } else {
            (
                raw.position_variables.unwrap_or(2 * (objectives - 1)),
                raw.distance_variables.unwrap_or(20),
            )
        };
        let n = if problem.is_dtlz() {
            objectives + distance_variables - 1
        } else {
            position_variables + distance_variables
        };
        let metrics = raw.metrics.unwrap_or_else(|| {
            if problem.is_dtlz() {
                vec![Metric::Igd]
            } else {
                vec![Metric::Hv]
            }
        });
        let config = ExperimentConfig {
            problem,
            objectives,
            update: raw.update.unwrap_or_default(),
            divisions,
            inside_divisions,
            tau: raw.tau.unwrap_or(0.5),
            neighborhood_size: raw.neighborhood_size.unwrap_or(30),
            p_s: raw.p_s.unwrap_or(0.9),
            p_c: raw.p_c.unwrap_or(1.0),
            eta_c: raw.eta_c.unwrap_or(20.0),
            p_m: raw.p_m.unwrap_or(0.5 / n as f64),
            eta_m: raw.eta_m.unwrap_or(20.0),
            pbi_theta: raw.pbi_theta.unwrap_or(DEFAULT_THETA),
            normalization: raw.normalization.unwrap_or(Normalization::Ideal),
            sbx_scheme: raw.sbx_scheme.unwrap_or_default(),
            generations,
            runs: raw.runs.unwrap_or(20),
            seed: raw.seed.unwrap_or(0),
            metrics,
            hv_reference: raw.hv_reference.unwrap_or_else(|| problem.hv_reference(objectives)),
            hv_samples: raw.hv_samples.unwrap_or(10_000_000),
            hv_exact_limit: raw.hv_exact_limit.unwrap_or(10),
            position_variables,
            distance_variables,
            wfg3_mapping: raw.wfg3_mapping.unwrap_or_default(),
            trace_interval: raw.trace_interval,
            parallel: raw.parallel.unwrap_or(true),
            output_dir: raw.output_dir,
        };
        config.validate()?;
        Ok(config)
    }

    /// Checks field ranges and cross-field consistency.
    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::config("runs", "must be >= 1"));
        }
        if !(0.0..=1.0).contains(&self.tau) {
            return Err(Error::config("tau", format!("must lie in [0, 1], got {}", self.tau)));
        }
        if self.metrics.is_empty() {
            return Err(Error::config("metrics", "select at least one metric"));
        }
        if self.metrics.contains(&Metric::Igd) && !self.problem.is_dtlz() {
            return Err(Error::config(
                "metrics",
                format!("igd needs an analytic front; {} has none", self.problem),
            ));
        }
        if self.hv_reference.len() != self.objectives {
            return Err(Error::config(
                "hv_reference",
                format!("has {} coordinates, expected {}", self.hv_reference.len(), self.objectives),
            ));
        }
        if self.hv_reference.iter().any(|z| !(*z > 0.0)) {
            return Err(Error::config("hv_reference", "coordinates must be positive"));
        }
        if self.hv_samples == 0 {
            return Err(Error::config("hv_samples", "must be >= 1"));
        }
        if self.trace_interval == Some(0) {
            return Err(Error::config("trace_interval", "must be >= 1"));
        }
        if self.divisions == 0 || self.inside_divisions == Some(0) {
            return Err(Error::config("divisions", "must be >= 1"));
        }
        self.engine_config_unchecked().validate()?;
        Ok(())
    }

    /// The benchmark instance this experiment optimizes.
    pub fn problem_instance(&self) -> Result<ProblemInstance> {
        let instance = if self.problem.is_dtlz() {
            ProblemInstance::dtlz(self.problem, self.objectives, self.distance_variables)
        } else {
            ProblemInstance::wfg(
                self.problem,
                self.objectives,
                self.position_variables,
                self.distance_variables,
            )
        };
        let instance = instance.map_err(|e| Error::config("distance_variables", e.to_string()))?;
        Ok(instance.with_wfg3_mapping(self.wfg3_mapping))
    }

    /// The weight set with neighborhoods built.
    pub fn weight_set(&self) -> Result<WeightSet> {
        let set = match self.inside_divisions {
            Some(d2) => WeightSet::two_layer(self.objectives, self.divisions, d2, self.tau),
            None => WeightSet::simplex_lattice(self.objectives, self.divisions),
        }
        .map_err(|e| Error::config("divisions", e.to_string()))?;
        if self.neighborhood_size == 0 || self.neighborhood_size > set.len() {
            return Err(Error::config(
                "neighborhood_size",
                format!("must lie in 1..={}, got {}", set.len(), self.neighborhood_size),
            ));
        }
        set.with_neighborhoods(self.neighborhood_size)
    }

    fn engine_config_unchecked(&self) -> EngineConfig {
        EngineConfig {
            variation: VariationConfig {
                p_c: self.p_c,
                eta_c: self.eta_c,
                p_m: self.p_m,
                eta_m: self.eta_m,
                p_s: self.p_s,
                sbx_scheme: self.sbx_scheme,
            },
            theta: self.pbi_theta,
            normalization: self.normalization,
            generations: self.generations,
            update: self.update,
        }
    }

    pub fn engine_config(&self) -> Result<EngineConfig> {
        let config = self.engine_config_unchecked();
        config.validate()?;
        Ok(config)
    }

    /// Canonical TOML form.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("experiment config is always representable as TOML")
    }
}
