//! Exact hypervolume by the WFG exclusive-volume recursion, and a Monte-Carlo estimator.
//!
//! Points are processed in descending order of their last objective. Every
//! point after `p` in that order has a last objective no larger than `p`'s, so
//! the limit set of `p` shares `p`'s last coordinate and its volume factors
//! into `(z_M - p_M)` times an `(M-1)`-dimensional hypervolume. Two objectives
//! are handled by a direct sweep.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{dominates, Front, HvReference};
use crate::error::{Error, Result};

/// A Monte-Carlo hypervolume estimate, already normalized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub value: f64,
    /// Binomial standard error `sqrt(p (1 - p) / samples)`.
    pub std_error: f64,
    pub samples: u64,
}

fn check_dims(front: &Front, reference: &HvReference) -> Result<()> {
    match front.objectives() {
        Some(m) if m != reference.objectives() => Err(Error::domain(format!(
            "front has {m} objectives, reference point has {}",
            reference.objectives()
        ))),
        _ => Ok(()),
    }
}

/// Points strictly inside the reference box.
fn inside_box(front: &Front, z: &[f64]) -> Vec<Vec<f64>> {
    front
        .points()
        .iter()
        .filter(|p| p.iter().zip(z).all(|(v, r)| v < r))
        .cloned()
        .collect()
}

/// Exact dominated volume, not normalized.
pub fn raw_hypervolume(front: &Front, reference: &HvReference) -> Result<f64> {
    check_dims(front, reference)?;
    let z = reference.point();
    let pts = inside_box(front, z);
    Ok(wfg(pts, z))
}

/// Exact hypervolume divided by `prod(z_i)`.
pub fn hv_exact(front: &Front, reference: &HvReference) -> Result<f64> {
    Ok(raw_hypervolume(front, reference)? / reference.box_volume())
}

fn wfg(mut pts: Vec<Vec<f64>>, z: &[f64]) -> f64 {
    let m = z.len();
    if pts.is_empty() {
        return 0.0;
    }
    match m {
        1 => {
            let best = pts.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
            return (z[0] - best).max(0.0);
        }
        2 => return sweep_2d(pts, z),
        _ => {}
    }
    if pts.len() == 1 {
        return box_volume(&pts[0], z);
    }
    let last = m - 1;
    // descending last objective, then ascending lexicographic for a fixed order
    pts.sort_by(|a, b| {
        b[last]
            .total_cmp(&a[last])
            .then_with(|| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal))
    });
    let z_lower = &z[..last];
    let mut total = 0.0;
    for i in 0..pts.len() {
        let p = &pts[i];
        let height = z[last] - p[last];
        if height <= 0.0 {
            continue;
        }
        let limit: Vec<Vec<f64>> = pts[i + 1..]
            .iter()
            .map(|q| p[..last].iter().zip(&q[..last]).map(|(a, b)| a.max(*b)).collect())
            .collect();
        let limit = filter_nondominated(limit);
        let exclusive = box_volume(&p[..last], z_lower) - wfg(limit, z_lower);
        total += height * exclusive;
    }
    total
}

fn box_volume(p: &[f64], z: &[f64]) -> f64 {
    p.iter().zip(z).map(|(v, r)| (r - v).max(0.0)).product()
}

fn sweep_2d(mut pts: Vec<Vec<f64>>, z: &[f64]) -> f64 {
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut area = 0.0;
    let mut ceiling = z[1];
    for p in &pts {
        if p[1] < ceiling {
            area += (z[0] - p[0]) * (ceiling - p[1]);
            ceiling = p[1];
        }
    }
    area
}

fn filter_nondominated(pts: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let mut keep: Vec<Vec<f64>> = Vec::with_capacity(pts.len());
    'outer: for p in pts {
        for k in &keep {
            if k == &p || dominates(k, &p) {
                continue 'outer;
            }
        }
        keep.retain(|k| !dominates(&p, k));
        keep.push(p);
    }
    keep
}

/// Fraction of `samples` uniform points in `[0, z]` dominated by the front.
///
/// Objectives are assumed non-negative, as for every benchmark in this crate.
pub fn hv_monte_carlo<R: Rng + ?Sized>(
    front: &Front,
    reference: &HvReference,
    samples: u64,
    rng: &mut R,
) -> Result<MonteCarloEstimate> {
    check_dims(front, reference)?;
    if samples == 0 {
        return Err(Error::domain("Monte-Carlo hypervolume needs at least one sample"));
    }
    let z = reference.point();
    let pts = inside_box(front, z);
    if pts.is_empty() {
        return Ok(MonteCarloEstimate {
            value: 0.0,
            std_error: 0.0,
            samples,
        });
    }
    let m = z.len();
    let mut sample = vec![0.0; m];
    let mut hits: u64 = 0;
    for _ in 0..samples {
        for (s, r) in sample.iter_mut().zip(z) {
            *s = rng.gen::<f64>() * r;
        }
        if pts.iter().any(|p| p.iter().zip(&sample).all(|(a, b)| a <= b)) {
            hits += 1;
        }
    }
    let value = hits as f64 / samples as f64;
    Ok(MonteCarloEstimate {
        value,
        std_error: (value * (1.0 - value) / samples as f64).sqrt(),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn front(points: &[&[f64]]) -> Front {
        Front::new(points.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    fn unit(m: usize) -> HvReference {
        HvReference::new(vec![1.0; m]).unwrap()
    }

    #[test]
    fn exact_examples() {
        assert_eq!(hv_exact(&front(&[&[0.0, 0.0, 0.0]]), &unit(3)).unwrap(), 1.0);
        assert_eq!(hv_exact(&front(&[&[0.5, 0.5]]), &unit(2)).unwrap(), 0.25);
        assert_abs_diff_eq!(
            hv_exact(&front(&[&[0.2, 0.6], &[0.6, 0.2]]), &unit(2)).unwrap(),
            0.48,
            epsilon = 1e-15
        );
        let outside = front(&[&[1.0, 0.2], &[0.5, 1.5]]);
        assert_eq!(hv_exact(&outside, &unit(2)).unwrap(), 0.0);
        assert_eq!(hv_exact(&Front::new(vec![]).unwrap(), &unit(2)).unwrap(), 0.0);
    }

    #[test]
    fn exact_normalizes_by_box() {
        let z = HvReference::new(vec![2.0, 4.0]).unwrap();
        // box [1,2] x [2,4] has area 2, normalized by 8
        assert_eq!(hv_exact(&front(&[&[1.0, 2.0]]), &z).unwrap(), 0.25);
    }

    #[test]
    fn exact_three_d_by_hand() {
        // two overlapping cubes: 0.5^3 + 0.5^3 - overlap (0.5*0.5*0.25)
        let f = front(&[&[0.5, 0.5, 0.5], &[0.5, 0.5, 0.25]]);
        assert_abs_diff_eq!(hv_exact(&f, &unit(3)).unwrap(), 0.1875, epsilon = 1e-15);
        let f = front(&[&[0.5, 0.0, 0.0], &[0.0, 0.5, 0.0], &[0.0, 0.0, 0.5]]);
        // inclusion-exclusion: 3*0.5 - 3*0.25 + 0.125
        assert_abs_diff_eq!(hv_exact(&f, &unit(3)).unwrap(), 0.875, epsilon = 1e-15);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(hv_exact(&front(&[&[0.5, 0.5]]), &unit(3)).is_err());
    }

    #[test]
    fn monte_carlo_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let origin = front(&[&[0.0, 0.0, 0.0, 0.0]]);
        for n in [1, 10, 1000] {
            let e = hv_monte_carlo(&origin, &unit(4), n, &mut rng).unwrap();
            assert_eq!(e.value, 1.0);
            assert_eq!(e.std_error, 0.0);
        }
        let outside = front(&[&[1.5, 0.1], &[0.1, 1.0]]);
        assert_eq!(hv_monte_carlo(&outside, &unit(2), 1000, &mut rng).unwrap().value, 0.0);
        assert!(hv_monte_carlo(&origin, &unit(4), 0, &mut rng).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn adding_points_never_decreases(
            pts in proptest::collection::vec(proptest::collection::vec(0.0f64..1.2, 4), 1..12),
            extra in proptest::collection::vec(0.0f64..1.2, 4),
        ) {
            let z = unit(4);
            let base = hv_exact(&Front::new(pts.clone()).unwrap(), &z).unwrap();
            let mut more = pts.clone();
            more.push(extra);
            let grown = hv_exact(&Front::new(more).unwrap(), &z).unwrap();
            prop_assert!(grown >= base - 1e-12);
            prop_assert!((0.0..=1.0).contains(&base));
        }

        #[test]
        fn dominated_points_are_inert(
            pts in proptest::collection::vec(proptest::collection::vec(0.0f64..1.0, 3), 1..10),
            which in 0usize..10,
            bump in proptest::collection::vec(0.0f64..0.3, 3),
        ) {
            let z = unit(3);
            let base = hv_exact(&Front::new(pts.clone()).unwrap(), &z).unwrap();
            let src = &pts[which % pts.len()];
            let mut more = pts.clone();
            more.push(src.iter().zip(&bump).map(|(a, b)| a + b).collect());
            let with_dominated = hv_exact(&Front::new(more).unwrap(), &z).unwrap();
            prop_assert!((with_dominated - base).abs() <= 1e-12);
        }
    }
}
