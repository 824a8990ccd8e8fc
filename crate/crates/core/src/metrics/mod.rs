//! Quality indicators: IGD against analytic reference sets, and exact and
//! Monte-Carlo hypervolume.
//!
//! Hypervolumes are reported normalized: the dominated volume inside the box
//! `[0, z]` divided by `prod(z_i)`. Points with any coordinate at or beyond the
//! reference point contribute nothing. No non-domination filtering is applied
//! before any metric.

mod hypervolume;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problems::{pareto_point_from_weight, ProblemId};
use crate::weights::WeightSet;

pub use hypervolume::{hv_exact, hv_monte_carlo, raw_hypervolume, MonteCarloEstimate};

/// A finite set of objective vectors of common dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Front {
    points: Vec<Vec<f64>>,
}

impl Front {
    /// Rejects mixed dimensions and non-finite coordinates. An empty front is allowed.
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        if let Some(first) = points.first() {
            let m = first.len();
            if m == 0 {
                return Err(Error::domain("front points must have at least one objective"));
            }
            if points.iter().any(|p| p.len() != m) {
                return Err(Error::domain("front points differ in dimension"));
            }
            if points.iter().flatten().any(|v| !v.is_finite()) {
                return Err(Error::domain("front contains a non-finite coordinate"));
            }
        }
        Ok(Front { points })
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Vec<f64>> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Objective count, or `None` for an empty front.
    pub fn objectives(&self) -> Option<usize> {
        self.points.first().map(Vec::len)
    }

    /// The non-dominated members, in original order; duplicates keep their first occurrence.
    pub fn nondominated(&self) -> Front {
        let keep = nondominated_indices(&self.points);
        Front {
            points: keep.into_iter().map(|i| self.points[i].clone()).collect(),
        }
    }
}

/// Hypervolume reference point; every coordinate strictly positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HvReference(Vec<f64>);

impl HvReference {
    pub fn new(z: Vec<f64>) -> Result<Self> {
        if z.is_empty() || z.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
            return Err(Error::domain(format!(
                "hypervolume reference point must be finite and positive, got {z:?}"
            )));
        }
        Ok(HvReference(z))
    }

    pub fn point(&self) -> &[f64] {
        &self.0
    }

    pub fn objectives(&self) -> usize {
        self.0.len()
    }

    /// `prod(z_i)`, the normalization divisor.
    pub fn box_volume(&self) -> f64 {
        self.0.iter().product()
    }
}

/// `a` weakly better everywhere and strictly better somewhere (minimization).
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strict = true;
        }
    }
    strict
}

/// Indices of points not dominated by any other point; of equal points only
/// the first is kept.
pub fn nondominated_indices(points: &[Vec<f64>]) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| {
            !points.iter().enumerate().any(|(j, q)| {
                j != i && (dominates(q, &points[i]) || (j < i && q == &points[i]))
            })
        })
        .collect()
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Mean, over reference points `r`, of the distance from `r` to the nearest member of `solutions`.
pub fn igd(solutions: &Front, reference: &Front) -> Result<f64> {
    if solutions.is_empty() || reference.is_empty() {
        return Err(Error::domain("IGD needs nonempty solution and reference fronts"));
    }
    if solutions.objectives() != reference.objectives() {
        return Err(Error::domain("IGD fronts differ in dimension"));
    }
    let total: f64 = reference
        .points()
        .iter()
        .map(|r| {
            solutions
                .points()
                .iter()
                .map(|s| euclidean(r, s))
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    Ok(total / reference.len() as f64)
}

/// One Pareto-front point per weight vector, for DTLZ1-4.
pub fn reference_set(id: ProblemId, weights: &WeightSet) -> Result<Front> {
    if !id.is_dtlz() {
        return Err(Error::Unsupported(format!(
            "{id} has no analytic IGD reference set; use hypervolume"
        )));
    }
    let points = weights
        .vectors()
        .iter()
        .map(|w| pareto_point_from_weight(id, w.components()))
        .collect::<Result<Vec<_>>>()?;
    Front::new(points)
}

/// Normalized hypervolume, exact when `M` is at most `exact_limit`, Monte-Carlo otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HvSettings {
    pub exact_limit: usize,
    pub samples: u64,
}

impl Default for HvSettings {
    fn default() -> Self {
        HvSettings {
            exact_limit: 10,
            samples: 10_000_000,
        }
    }
}

/// Dispatches between [`hv_exact`] and [`hv_monte_carlo`] by objective count.
pub fn hypervolume<R: Rng + ?Sized>(
    front: &Front,
    reference: &HvReference,
    settings: HvSettings,
    rng: &mut R,
) -> Result<f64> {
    if reference.objectives() <= settings.exact_limit {
        hv_exact(front, reference)
    } else {
        Ok(hv_monte_carlo(front, reference, settings.samples, rng)?.value)
    }
}
