//! PBI scalarization against a moving ideal/nadir frame.
//!
//! Objectives are normalized as `(f_i - z*_i) / (z^nad_i - z*_i)`, or only
//! translated to `f_i - z*_i` under [`Normalization::Ideal`], and the PBI
//! value of the normalized vector `F''` against a weight `w` is
//! `d1 + theta * d2`, where `d1` is the length of the projection of `F''` on
//! `w` and `d2` the length of the residual.
//!
//! Individuals cache raw objectives only; normalization is always recomputed
//! from the current frame.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::{dot, euclidean_norm};

/// Smallest normalization denominator. Narrower ideal/nadir spans use this instead.
pub const DENOMINATOR_FLOOR: f64 = 1e-10;

/// Default PBI penalty.
pub const DEFAULT_THETA: f64 = 5.0;

/// How raw objectives are mapped into the PBI frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// `(f - z*) / (z^nad - z*)`.
    #[default]
    IdealNadir,
    /// `f - z*`; the nadir is still tracked but not used.
    Ideal,
}

impl Normalization {
    pub fn name(self) -> &'static str {
        match self {
            Normalization::IdealNadir => "ideal_nadir",
            Normalization::Ideal => "ideal",
        }
    }
}

impl std::str::FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ideal_nadir" => Ok(Normalization::IdealNadir),
            "ideal" => Ok(Normalization::Ideal),
            _ => Err(Error::config(
                "normalization",
                format!("unknown normalization `{s}` (ideal, ideal_nadir)"),
            )),
        }
    }
}

/// Ideal point, nadir point and penalty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarizerState {
    ideal: Vec<f64>,
    nadir: Vec<f64>,
    theta: f64,
    normalization: Normalization,
}

/// The two distances behind a PBI value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PbiBreakdown {
    /// Distance travelled along the weight direction.
    pub d1: f64,
    /// Perpendicular distance from the weight direction.
    pub d2: f64,
    pub value: f64,
}

impl ScalarizerState {
    /// Ideal and nadir as the exact componentwise min and max of `objectives`.
    pub fn init_from_population<I, V>(objectives: I, theta: f64) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[f64]>,
    {
        if !(theta > 0.0) {
            return Err(Error::domain(format!("PBI penalty must be > 0, got {theta}")));
        }
        let mut iter = objectives.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::domain("cannot initialize a frame from an empty population"))?;
        let mut ideal = first.as_ref().to_vec();
        let mut nadir = ideal.clone();
        for f in iter {
            let f = f.as_ref();
            if f.len() != ideal.len() {
                return Err(Error::domain("objective vectors differ in dimension"));
            }
            for ((lo, hi), &v) in ideal.iter_mut().zip(nadir.iter_mut()).zip(f) {
                *lo = lo.min(v);
                *hi = hi.max(v);
            }
        }
        Ok(ScalarizerState {
            ideal,
            nadir,
            theta,
            normalization: Normalization::default(),
        })
    }

    /// Builds a frame from explicit points; `ideal <= nadir` is required.
    pub fn from_points(ideal: Vec<f64>, nadir: Vec<f64>, theta: f64) -> Result<Self> {
        if ideal.len() != nadir.len() {
            return Err(Error::domain("ideal and nadir differ in dimension"));
        }
        if ideal.iter().zip(&nadir).any(|(lo, hi)| lo > hi) {
            return Err(Error::domain("ideal point exceeds nadir point"));
        }
        if !(theta > 0.0) {
            return Err(Error::domain(format!("PBI penalty must be > 0, got {theta}")));
        }
        Ok(ScalarizerState {
            ideal,
            nadir,
            theta,
            normalization: Normalization::default(),
        })
    }

    pub fn with_normalization(mut self, normalization: Normalization) -> Self {
        self.normalization = normalization;
        self
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn ideal(&self) -> &[f64] {
        &self.ideal
    }

    pub fn nadir(&self) -> &[f64] {
        &self.nadir
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn objectives(&self) -> usize {
        self.ideal.len()
    }

    /// Componentwise `ideal = min(ideal, f)`.
    pub fn update_ideal(&mut self, objectives: &[f64]) {
        for (z, &f) in self.ideal.iter_mut().zip(objectives) {
            if f < *z {
                *z = f;
            }
        }
    }

    /// Componentwise `nadir = max(nadir, f)`.
    pub fn update_nadir(&mut self, objectives: &[f64]) {
        for (z, &f) in self.nadir.iter_mut().zip(objectives) {
            if f > *z {
                *z = f;
            }
        }
    }

    /// Writes the normalized form of `objectives` into `out`.
    pub fn normalize_into(&self, objectives: &[f64], out: &mut [f64]) {
        for (((o, &f), &lo), &hi) in out
            .iter_mut()
            .zip(objectives)
            .zip(&self.ideal)
            .zip(&self.nadir)
        {
            *o = match self.normalization {
                Normalization::Ideal => f - lo,
                Normalization::IdealNadir => (f - lo) / (hi - lo).max(DENOMINATOR_FLOOR),
            };
        }
    }

    pub fn normalize(&self, objectives: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; objectives.len()];
        self.normalize_into(objectives, &mut out);
        out
    }

    /// PBI of raw `objectives` against `weight` under this frame.
    pub fn pbi(&self, objectives: &[f64], weight: &[f64]) -> Result<PbiBreakdown> {
        let normalized = self.normalize(objectives);
        pbi_normalized(&normalized, weight, self.theta)
    }

    /// Allocation-free PBI value for hot loops; `scratch` must have length `M`.
    pub(crate) fn pbi_value(&self, objectives: &[f64], weight: &[f64], scratch: &mut [f64]) -> f64 {
        self.normalize_into(objectives, scratch);
        let w_norm = euclidean_norm(weight);
        let (d1, d2) = pbi_distances(scratch, weight, w_norm);
        d1 + self.theta * d2
    }
}

/// Free-function form of [`ScalarizerState::normalize`].
pub fn normalize(objectives: &[f64], state: &ScalarizerState) -> Vec<f64> {
    state.normalize(objectives)
}

/// Free-function form of [`ScalarizerState::pbi`].
pub fn pbi(objectives: &[f64], weight: &[f64], state: &ScalarizerState) -> Result<PbiBreakdown> {
    state.pbi(objectives, weight)
}

/// PBI of an already-normalized vector `F''`.
pub fn pbi_normalized(normalized: &[f64], weight: &[f64], theta: f64) -> Result<PbiBreakdown> {
    if normalized.len() != weight.len() {
        return Err(Error::domain("objective and weight dimensions differ"));
    }
    let w_norm = euclidean_norm(weight);
    if w_norm == 0.0 {
        return Err(Error::domain("PBI against a zero weight vector"));
    }
    let (d1, d2) = pbi_distances(normalized, weight, w_norm);
    Ok(PbiBreakdown {
        d1,
        d2,
        value: d1 + theta * d2,
    })
}

fn pbi_distances(f: &[f64], w: &[f64], w_norm: f64) -> (f64, f64) {
    let d1 = dot(f, w).abs() / w_norm;
    let d2 = f
        .iter()
        .zip(w)
        .map(|(fi, wi)| {
            let r = fi - d1 * wi / w_norm;
            r * r
        })
        .sum::<f64>()
        .sqrt();
    (d1, d2)
}
