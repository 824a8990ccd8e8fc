//! WFG toolkit: transformation and shape functions and the WFG1-9 problems.
//!
//! Every problem maps the working vector `z` (with `z_i in [0, 2i]`) to
//! `y = (z_1/2, .., z_n/2n)`, applies its transformation chain to reach the
//! `M`-vector `t`, derives the shape parameters `x`, and returns
//! `f_m = x_M + 2m h_m(x_1..x_{M-1})`.
//!
//! Transformation outputs are clamped to `[0, 1]` after every stage to absorb
//! rounding.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::ProblemId;
use crate::error::{Error, Result};

/// How WFG3 derives the shape parameters `x_1..x_{M-1}` from `t`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Wfg3Mapping {
    /// `x_1 = t_1`, `x_i = t_M (t_i - 0.5) + 0.5` for `i >= 2`: the toolkit's
    /// degeneracy construction, collapsing the front to a line at optimality.
    #[default]
    Canonical,
    /// `x_i = t_i (t_i - 0.5) + 0.5` for every position parameter. This keeps
    /// `x_i` inside `[0.4375, 1]` and does not produce a degenerate front;
    /// available for side-by-side comparison only.
    SelfScaled,
}

const B_PARAM_A: f64 = 0.98 / 49.98;
const B_PARAM_B: f64 = 0.02;
const B_PARAM_C: f64 = 50.0;

pub(super) fn check_sizes(id: ProblemId, objectives: usize, position: usize, distance: usize) -> Result<()> {
    if objectives < 2 {
        return Err(Error::domain("WFG needs M >= 2"));
    }
    if position == 0 || position % (objectives - 1) != 0 {
        return Err(Error::domain(format!(
            "WFG position count k = {position} must be a positive multiple of M - 1 = {}",
            objectives - 1
        )));
    }
    if distance == 0 {
        return Err(Error::domain("WFG distance count l must be >= 1"));
    }
    if matches!(id, ProblemId::Wfg2 | ProblemId::Wfg3) && distance % 2 != 0 {
        return Err(Error::domain(format!("{id} needs an even distance count, got {distance}")));
    }
    Ok(())
}

// ---- transformation functions ---------------------------------------------

pub fn s_linear(y: f64, a: f64) -> f64 {
    (y - a).abs() / ((a - y).floor() + a).abs()
}

pub fn s_decept(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let left = (y - a + b).floor() * (1.0 - c + (a - b) / b) / (a - b);
    let right = (a + b - y).floor() * (1.0 - c + (1.0 - a - b) / b) / (1.0 - a - b);
    1.0 + ((y - a).abs() - b) * (left + right + 1.0 / b)
}

pub fn s_multi(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let r = (y - c).abs() / (2.0 * ((c - y).floor() + c));
    let angle = (4.0 * a + 2.0) * PI * (0.5 - r);
    (1.0 + angle.cos() + 4.0 * b * r * r) / (b + 2.0)
}

pub fn b_flat(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let below = (y - b).floor().min(0.0) * a * (b - y) / b;
    let above = (c - y).floor().min(0.0) * (1.0 - a) * (y - c) / (1.0 - c);
    a + below - above
}

pub fn b_poly(y: f64, alpha: f64) -> f64 {
    y.powf(alpha)
}

pub fn b_param(y: f64, u: f64, a: f64, b: f64, c: f64) -> f64 {
    y.powf(b_param_exponent(u, a, b, c))
}

fn b_param_exponent(u: f64, a: f64, b: f64, c: f64) -> f64 {
    let v = a - (1.0 - 2.0 * u) * ((0.5 - u).floor() + a).abs();
    b + (c - b) * v
}

pub fn r_sum(y: &[f64], w: &[f64]) -> f64 {
    let num: f64 = y.iter().zip(w).map(|(a, b)| a * b).sum();
    num / w.iter().sum::<f64>()
}

fn r_sum_uniform(y: &[f64]) -> f64 {
    y.iter().sum::<f64>() / y.len() as f64
}

pub fn r_nonsep(y: &[f64], a: usize) -> f64 {
    let n = y.len();
    let mut num = 0.0;
    for j in 0..n {
        num += y[j];
        for k in 0..a.saturating_sub(1) {
            num += (y[j] - y[(1 + j + k) % n]).abs();
        }
    }
    let half = (a as f64 / 2.0).ceil();
    let denom = n as f64 * half * (1.0 + 2.0 * a as f64 - 2.0 * half) / a as f64;
    num / denom
}

// ---- shape functions ---------------------------------------------------------
// `x` holds the M-1 position parameters; `m` is 1-based.

pub fn linear(x: &[f64], m: usize) -> f64 {
    let big_m = x.len() + 1;
    let mut h: f64 = x[..big_m - m].iter().product();
    if m > 1 {
        h *= 1.0 - x[big_m - m];
    }
    h
}

pub fn convex(x: &[f64], m: usize) -> f64 {
    let big_m = x.len() + 1;
    let mut h: f64 = x[..big_m - m].iter().map(|v| 1.0 - (v * FRAC_PI_2).cos()).product();
    if m > 1 {
        h *= 1.0 - (x[big_m - m] * FRAC_PI_2).sin();
    }
    h
}

pub fn concave(x: &[f64], m: usize) -> f64 {
    let big_m = x.len() + 1;
    let mut h: f64 = x[..big_m - m].iter().map(|v| (v * FRAC_PI_2).sin()).product();
    if m > 1 {
        h *= (x[big_m - m] * FRAC_PI_2).cos();
    }
    h
}

pub fn mixed(x: &[f64], a: f64, alpha: f64) -> f64 {
    let t = 2.0 * a * PI;
    (1.0 - x[0] - (t * x[0] + FRAC_PI_2).cos() / t).powf(alpha)
}

pub fn disc(x: &[f64], a: f64, alpha: f64, beta: f64) -> f64 {
    let c = (a * x[0].powf(beta) * PI).cos();
    1.0 - x[0].powf(alpha) * c * c
}

// ---- problems ------------------------------------------------------------------

fn clamp01(y: &mut [f64]) {
    for v in y {
        *v = v.clamp(0.0, 1.0);
    }
}

/// `t_1..t_{M-1}` by reducing equal position blocks with `reduce`, then `t_M`
/// from the distance block.
fn reduce_blocks(
    y: &[f64],
    objectives: usize,
    position: usize,
    mut block: impl FnMut(&[f64], usize) -> f64,
    tail: impl FnOnce(&[f64], usize) -> f64,
) -> Vec<f64> {
    let width = position / (objectives - 1);
    let mut t: Vec<f64> = (0..objectives - 1)
        .map(|i| block(&y[i * width..(i + 1) * width], i * width))
        .collect();
    t.push(tail(&y[position..], position));
    clamp01(&mut t);
    t
}

/// Weights `2j` (1-based `j`) starting at offset `start`.
fn index_weights(start: usize, len: usize) -> Vec<f64> {
    (start + 1..=start + len).map(|j| 2.0 * j as f64).collect()
}

fn transform(id: ProblemId, objectives: usize, position: usize, mut y: Vec<f64>) -> Vec<f64> {
    let n = y.len();
    let width = position / (objectives - 1);
    match id {
        ProblemId::Wfg1 => {
            for v in &mut y[position..] {
                *v = s_linear(*v, 0.35);
            }
            for v in &mut y[position..] {
                *v = b_flat(*v, 0.8, 0.75, 0.85);
            }
            for v in &mut y {
                *v = b_poly(*v, 0.02);
            }
            clamp01(&mut y);
            reduce_blocks(
                &y,
                objectives,
                position,
                |b, start| r_sum(b, &index_weights(start, b.len())),
                |b, start| r_sum(b, &index_weights(start, b.len())),
            )
        }
        ProblemId::Wfg2 | ProblemId::Wfg3 => {
            for v in &mut y[position..] {
                *v = s_linear(*v, 0.35);
            }
            let pairs: Vec<f64> = y[position..].chunks(2).map(|p| r_nonsep(p, 2)).collect();
            y.truncate(position);
            y.extend(pairs);
            clamp01(&mut y);
            reduce_blocks(&y, objectives, position, |b, _| r_sum_uniform(b), |b, _| r_sum_uniform(b))
        }
        ProblemId::Wfg4 => {
            for v in &mut y {
                *v = s_multi(*v, 30.0, 10.0, 0.35);
            }
            clamp01(&mut y);
            reduce_blocks(&y, objectives, position, |b, _| r_sum_uniform(b), |b, _| r_sum_uniform(b))
        }
        ProblemId::Wfg5 => {
            for v in &mut y {
                *v = s_decept(*v, 0.35, 0.001, 0.05);
            }
            clamp01(&mut y);
            reduce_blocks(&y, objectives, position, |b, _| r_sum_uniform(b), |b, _| r_sum_uniform(b))
        }
        ProblemId::Wfg6 => {
            for v in &mut y[position..] {
                *v = s_linear(*v, 0.35);
            }
            clamp01(&mut y);
            let l = n - position;
            reduce_blocks(&y, objectives, position, |b, _| r_nonsep(b, width), |b, _| r_nonsep(b, l))
        }
        ProblemId::Wfg7 => {
            let src = y.clone();
            for i in 0..position {
                let u = r_sum_uniform(&src[i + 1..]);
                y[i] = b_param(src[i], u, B_PARAM_A, B_PARAM_B, B_PARAM_C);
            }
            for v in &mut y[position..] {
                *v = s_linear(*v, 0.35);
            }
            clamp01(&mut y);
            reduce_blocks(&y, objectives, position, |b, _| r_sum_uniform(b), |b, _| r_sum_uniform(b))
        }
        ProblemId::Wfg8 => {
            let src = y.clone();
            for i in position..n {
                let u = r_sum_uniform(&src[..i]);
                y[i] = b_param(src[i], u, B_PARAM_A, B_PARAM_B, B_PARAM_C);
            }
            for v in &mut y[position..] {
                *v = s_linear(*v, 0.35);
            }
            clamp01(&mut y);
            reduce_blocks(&y, objectives, position, |b, _| r_sum_uniform(b), |b, _| r_sum_uniform(b))
        }
        ProblemId::Wfg9 => {
            let src = y.clone();
            for i in 0..n - 1 {
                let u = r_sum_uniform(&src[i + 1..]);
                y[i] = b_param(src[i], u, B_PARAM_A, B_PARAM_B, B_PARAM_C);
            }
            clamp01(&mut y);
            for v in &mut y[..position] {
                *v = s_decept(*v, 0.35, 0.001, 0.05);
            }
            for v in &mut y[position..] {
                *v = s_multi(*v, 30.0, 95.0, 0.35);
            }
            clamp01(&mut y);
            let l = n - position;
            reduce_blocks(&y, objectives, position, |b, _| r_nonsep(b, width), |b, _| r_nonsep(b, l))
        }
        _ => unreachable!("not a WFG problem"),
    }
}

/// Shape parameters `x_1..x_{M-1}` and the distance parameter `x_M` from `t`.
fn shape_parameters(id: ProblemId, mapping: Wfg3Mapping, t: &[f64]) -> (Vec<f64>, f64) {
    let m = t.len();
    let distance = t[m - 1];
    let position = match (id, mapping) {
        (ProblemId::Wfg3, Wfg3Mapping::Canonical) => t[..m - 1]
            .iter()
            .enumerate()
            .map(|(i, &ti)| {
                let degeneracy = if i == 0 { 1.0 } else { 0.0 };
                distance.max(degeneracy) * (ti - 0.5) + 0.5
            })
            .collect(),
        (ProblemId::Wfg3, Wfg3Mapping::SelfScaled) => {
            t[..m - 1].iter().map(|&ti| ti * (ti - 0.5) + 0.5).collect()
        }
        // with A_i = 1 the toolkit mapping is the identity
        _ => t[..m - 1].to_vec(),
    };
    (position, distance)
}

fn shape(id: ProblemId, x: &[f64], m: usize) -> f64 {
    let big_m = x.len() + 1;
    match id {
        ProblemId::Wfg1 if m == big_m => mixed(x, 5.0, 1.0),
        ProblemId::Wfg1 => convex(x, m),
        ProblemId::Wfg2 if m == big_m => disc(x, 5.0, 1.0, 1.0),
        ProblemId::Wfg2 => convex(x, m),
        ProblemId::Wfg3 => linear(x, m),
        _ => concave(x, m),
    }
}

pub(super) fn evaluate(
    id: ProblemId,
    objectives: usize,
    position: usize,
    mapping: Wfg3Mapping,
    z: &[f64],
) -> Vec<f64> {
    let y = working_vector(z);
    let t = transform(id, objectives, position, y);
    let (x, distance) = shape_parameters(id, mapping, &t);
    (1..=objectives)
        .map(|m| distance + 2.0 * m as f64 * shape(id, &x, m))
        .collect()
}

/// `(z_1/2, z_2/4, .., z_n/2n)`, each in `[0, 1]` for in-bounds `z`.
pub fn working_vector(z: &[f64]) -> Vec<f64> {
    z.iter()
        .enumerate()
        .map(|(i, v)| v / (2.0 * (i + 1) as f64))
        .collect()
}

/// A Pareto-optimal decision vector for the given position parameters
/// (fractions in `[0, 1]`, one per position variable).
///
/// Distance variables are placed where every distance transformation reaches
/// its optimum: `y = 0.35` for WFG1-7, and the parameter-dependent values
/// solved in order for WFG8 (forward) and WFG9 (backward).
pub fn optimal_decision(id: ProblemId, position: &[f64], distance: usize) -> Result<Vec<f64>> {
    if !id.is_wfg() {
        return Err(Error::domain(format!("{id} is not a WFG problem")));
    }
    if position.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Error::domain("position fractions must lie in [0, 1]"));
    }
    let k = position.len();
    let n = k + distance;
    let mut y: Vec<f64> = position.to_vec();
    y.resize(n, 0.35);
    match id {
        ProblemId::Wfg8 => {
            for i in k..n {
                let u = r_sum_uniform(&y[..i]);
                y[i] = 0.35f64.powf(1.0 / b_param_exponent(u, B_PARAM_A, B_PARAM_B, B_PARAM_C));
            }
        }
        ProblemId::Wfg9 => {
            for i in (k..n - 1).rev() {
                let u = r_sum_uniform(&y[i + 1..]);
                y[i] = 0.35f64.powf(1.0 / b_param_exponent(u, B_PARAM_A, B_PARAM_B, B_PARAM_C));
            }
        }
        _ => {}
    }
    Ok(y.iter()
        .enumerate()
        .map(|(i, v)| (2.0 * (i + 1) as f64 * v).min(2.0 * (i + 1) as f64))
        .collect())
}
