//! Scalable benchmark problems: DTLZ1-4 and WFG1-9.
//!
//! Instances are named `<suite><number>-m<M>`, e.g. `dtlz3-m10` or `wfg4-m3`.
//! Default sizes:
//!
//! | suite | variables | bounds |
//! |-------|-----------|--------|
//! | DTLZ  | `n = M + r - 1`, `r = 5` (DTLZ1) or `10` | `[0, 1]` |
//! | WFG   | `n = k + l`, `k = 2(M-1)`, `l = 20` | `z_i in [0, 2i]` |

mod dtlz;
pub mod wfg;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use wfg::Wfg3Mapping;

/// Anything the engine can optimize: box-bounded, `M` objectives, minimized.
pub trait Problem: Sync {
    fn objectives(&self) -> usize;

    fn bounds(&self) -> &Bounds;

    fn variables(&self) -> usize {
        self.bounds().len()
    }

    /// Objective vector of `decision`. Decisions outside the bounds are rejected.
    fn evaluate(&self, decision: &[f64]) -> Result<Vec<f64>>;
}

/// Per-variable box `[L_j, U_j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::domain("lower and upper bounds differ in length"));
        }
        if lower.iter().zip(&upper).any(|(l, u)| !(l <= u) || !l.is_finite() || !u.is_finite()) {
            return Err(Error::domain("every bound must be finite with L_j <= U_j"));
        }
        Ok(Bounds { lower, upper })
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn lower(&self, j: usize) -> f64 {
        self.lower[j]
    }

    pub fn upper(&self, j: usize) -> f64 {
        self.upper[j]
    }

    pub fn lowers(&self) -> &[f64] {
        &self.lower
    }

    pub fn uppers(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.len()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| l <= v && v <= u)
    }

    pub fn clamp(&self, x: &mut [f64]) {
        for (v, (l, u)) in x.iter_mut().zip(self.lower.iter().zip(&self.upper)) {
            *v = v.clamp(*l, *u);
        }
    }

    pub(crate) fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.len() {
            return Err(Error::domain(format!(
                "decision has {} variables, expected {}",
                x.len(),
                self.len()
            )));
        }
        if let Some(j) = (0..x.len()).find(|&j| !(self.lower[j] <= x[j] && x[j] <= self.upper[j])) {
            return Err(Error::domain(format!(
                "variable {j} = {} outside [{}, {}]",
                x[j], self.lower[j], self.upper[j]
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemId {
    Dtlz1,
    Dtlz2,
    Dtlz3,
    Dtlz4,
    Wfg1,
    Wfg2,
    Wfg3,
    Wfg4,
    Wfg5,
    Wfg6,
    Wfg7,
    Wfg8,
    Wfg9,
}

impl ProblemId {
    pub const ALL: [ProblemId; 13] = [
        ProblemId::Dtlz1,
        ProblemId::Dtlz2,
        ProblemId::Dtlz3,
        ProblemId::Dtlz4,
        ProblemId::Wfg1,
        ProblemId::Wfg2,
        ProblemId::Wfg3,
        ProblemId::Wfg4,
        ProblemId::Wfg5,
        ProblemId::Wfg6,
        ProblemId::Wfg7,
        ProblemId::Wfg8,
        ProblemId::Wfg9,
    ];

    pub fn is_dtlz(self) -> bool {
        matches!(
            self,
            ProblemId::Dtlz1 | ProblemId::Dtlz2 | ProblemId::Dtlz3 | ProblemId::Dtlz4
        )
    }

    pub fn is_wfg(self) -> bool {
        !self.is_dtlz()
    }

    pub fn name(self) -> &'static str {
        match self {
            ProblemId::Dtlz1 => "dtlz1",
            ProblemId::Dtlz2 => "dtlz2",
            ProblemId::Dtlz3 => "dtlz3",
            ProblemId::Dtlz4 => "dtlz4",
            ProblemId::Wfg1 => "wfg1",
            ProblemId::Wfg2 => "wfg2",
            ProblemId::Wfg3 => "wfg3",
            ProblemId::Wfg4 => "wfg4",
            ProblemId::Wfg5 => "wfg5",
            ProblemId::Wfg6 => "wfg6",
            ProblemId::Wfg7 => "wfg7",
            ProblemId::Wfg8 => "wfg8",
            ProblemId::Wfg9 => "wfg9",
        }
    }

    /// Hypervolume reference point: `(1,..,1)` for DTLZ1, `(2,..,2)` for
    /// DTLZ2-4, `(3, 5, .., 2M+1)` for WFG.
    pub fn hv_reference(self, objectives: usize) -> Vec<f64> {
        match self {
            ProblemId::Dtlz1 => vec![1.0; objectives],
            ProblemId::Dtlz2 | ProblemId::Dtlz3 | ProblemId::Dtlz4 => vec![2.0; objectives],
            _ => (1..=objectives).map(|i| (2 * i + 1) as f64).collect(),
        }
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        ProblemId::ALL
            .into_iter()
            .find(|id| id.name() == lower)
            .ok_or_else(|| Error::domain(format!("unknown problem `{s}`")))
    }
}

/// Suite-specific size parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SuiteParams {
    /// DTLZ: `r` distance variables.
    Dtlz { distance: usize },
    /// WFG: `k` position-related and `l` distance-related variables.
    Wfg { position: usize, distance: usize },
}

/// A concrete benchmark instance.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    id: ProblemId,
    objectives: usize,
    params: SuiteParams,
    bounds: Bounds,
    wfg3_mapping: Wfg3Mapping,
}

impl ProblemInstance {
    /// Instance with the default sizes for `M` objectives.
    pub fn new(id: ProblemId, objectives: usize) -> Result<Self> {
        if objectives < 2 {
            return Err(Error::domain(format!(
                "objective count must be >= 2, got {objectives}"
            )));
        }
        match id {
            ProblemId::Dtlz1 => Self::dtlz(id, objectives, 5),
            ProblemId::Dtlz2 | ProblemId::Dtlz3 | ProblemId::Dtlz4 => {
                Self::dtlz(id, objectives, 10)
            }
            _ => Self::wfg(id, objectives, 2 * (objectives - 1), 20),
        }
    }

    /// DTLZ instance with `distance` (`r`) distance variables.
    pub fn dtlz(id: ProblemId, objectives: usize, distance: usize) -> Result<Self> {
        if !id.is_dtlz() {
            return Err(Error::domain(format!("{id} is not a DTLZ problem")));
        }
        if objectives < 2 || distance < 1 {
            return Err(Error::domain("DTLZ needs M >= 2 and r >= 1"));
        }
        let n = objectives + distance - 1;
        Ok(ProblemInstance {
            id,
            objectives,
            params: SuiteParams::Dtlz { distance },
            bounds: Bounds::new(vec![0.0; n], vec![1.0; n])?,
            wfg3_mapping: Wfg3Mapping::default(),
        })
    }

    /// WFG instance with `k` position and `l` distance variables.
    pub fn wfg(id: ProblemId, objectives: usize, position: usize, distance: usize) -> Result<Self> {
        if !id.is_wfg() {
            return Err(Error::domain(format!("{id} is not a WFG problem")));
        }
        wfg::check_sizes(id, objectives, position, distance)?;
        let n = position + distance;
        let upper = (1..=n).map(|i| 2.0 * i as f64).collect();
        Ok(ProblemInstance {
            id,
            objectives,
            params: SuiteParams::Wfg { position, distance },
            bounds: Bounds::new(vec![0.0; n], upper)?,
            wfg3_mapping: Wfg3Mapping::default(),
        })
    }

    /// Parses `dtlz3-m10` style keys into a default-sized instance.
    pub fn parse(key: &str) -> Result<Self> {
        let (name, m) = key
            .split_once("-m")
            .ok_or_else(|| Error::domain(format!("problem key `{key}` is not of the form <name>-m<M>")))?;
        let objectives: usize = m
            .parse()
            .map_err(|_| Error::domain(format!("bad objective count in `{key}`")))?;
        Self::new(name.parse()?, objectives)
    }

    /// Selects the position mapping used by WFG3; ignored by other problems.
    pub fn with_wfg3_mapping(mut self, mapping: Wfg3Mapping) -> Self {
        self.wfg3_mapping = mapping;
        self
    }

    pub fn id(&self) -> ProblemId {
        self.id
    }

    pub fn key(&self) -> String {
        format!("{}-m{}", self.id, self.objectives)
    }

    pub fn params(&self) -> SuiteParams {
        self.params
    }

    pub fn wfg3_mapping(&self) -> Wfg3Mapping {
        self.wfg3_mapping
    }

    pub fn hv_reference(&self) -> Vec<f64> {
        self.id.hv_reference(self.objectives)
    }
}

impl Problem for ProblemInstance {
    fn objectives(&self) -> usize {
        self.objectives
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, decision: &[f64]) -> Result<Vec<f64>> {
        self.bounds.check(decision)?;
        Ok(match self.params {
            SuiteParams::Dtlz { .. } => dtlz::evaluate(self.id, self.objectives, decision),
            SuiteParams::Wfg { position, .. } => {
                wfg::evaluate(self.id, self.objectives, position, self.wfg3_mapping, decision)
            }
        })
    }
}

/// Free-function form of [`Problem::evaluate`].
pub fn evaluate(instance: &ProblemInstance, decision: &[f64]) -> Result<Vec<f64>> {
    instance.evaluate(decision)
}

/// Intersection of the ray along `w` with the DTLZ Pareto front.
///
/// DTLZ1: `0.5 w_i / sum(w)` (the `sum f = 0.5` plane). DTLZ2-4: `w_i / |w|`
/// (the unit sphere).
pub fn pareto_point_from_weight(id: ProblemId, weight: &[f64]) -> Result<Vec<f64>> {
    if weight.iter().any(|w| *w < 0.0) {
        return Err(Error::domain("weight has a negative component"));
    }
    match id {
        ProblemId::Dtlz1 => {
            let sum: f64 = weight.iter().sum();
            if sum == 0.0 {
                return Err(Error::domain("zero weight vector"));
            }
            Ok(weight.iter().map(|w| 0.5 * w / sum).collect())
        }
        ProblemId::Dtlz2 | ProblemId::Dtlz3 | ProblemId::Dtlz4 => {
            let norm = crate::weights::euclidean_norm(weight);
            if norm == 0.0 {
                return Err(Error::domain("zero weight vector"));
            }
            Ok(weight.iter().map(|w| w / norm).collect())
        }
        _ => Err(Error::Unsupported(format!(
            "no analytic weight intersection for {id}"
        ))),
    }
}
