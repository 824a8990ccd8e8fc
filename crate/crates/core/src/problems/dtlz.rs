use std::f64::consts::{FRAC_PI_2, PI};

use super::ProblemId;

const DTLZ4_META_EXPONENT: f64 = 100.0;

/// Decision layout: `x[..M-1]` position variables, `x[M-1..]` distance variables.
pub(super) fn evaluate(id: ProblemId, objectives: usize, x: &[f64]) -> Vec<f64> {
    let (position, distance) = x.split_at(objectives - 1);
    match id {
        ProblemId::Dtlz1 => linear_front(position, 1.0 + multimodal_g(distance)),
        ProblemId::Dtlz2 => spherical_front(position, 1.0 + sphere_g(distance)),
        ProblemId::Dtlz3 => spherical_front(position, 1.0 + multimodal_g(distance)),
        ProblemId::Dtlz4 => {
            let biased: Vec<f64> = position.iter().map(|v| v.powf(DTLZ4_META_EXPONENT)).collect();
            spherical_front(&biased, 1.0 + sphere_g(distance))
        }
        _ => unreachable!("not a DTLZ problem"),
    }
}

/// Rastrigin-like distance function with `11^r - 1` local fronts.
fn multimodal_g(distance: &[f64]) -> f64 {
    let sum: f64 = distance
        .iter()
        .map(|&v| {
            let d = v - 0.5;
            d * d - (20.0 * PI * d).cos()
        })
        .sum();
    100.0 * (distance.len() as f64 + sum)
}

fn sphere_g(distance: &[f64]) -> f64 {
    distance.iter().map(|&v| (v - 0.5) * (v - 0.5)).sum()
}

fn linear_front(position: &[f64], scale: f64) -> Vec<f64> {
    let m = position.len() + 1;
    (0..m)
        .map(|i| {
            // f_{i+1} = 0.5 * x_1 .. x_{M-1-i} * (1 - x_{M-i}) * (1 + g)
            let keep = m - 1 - i;
            let mut f = 0.5 * scale * position[..keep].iter().product::<f64>();
            if i > 0 {
                f *= 1.0 - position[keep];
            }
            f
        })
        .collect()
}

fn spherical_front(position: &[f64], scale: f64) -> Vec<f64> {
    let m = position.len() + 1;
    (0..m)
        .map(|i| {
            let keep = m - 1 - i;
            let mut f = scale
                * position[..keep]
                    .iter()
                    .map(|v| (v * FRAC_PI_2).cos())
                    .product::<f64>();
            if i > 0 {
                f *= (position[keep] * FRAC_PI_2).sin();
            }
            f
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{Problem, ProblemInstance};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn optimal(instance: &ProblemInstance, position: &[f64]) -> Vec<f64> {
        let mut x = vec![0.5; instance.variables()];
        x[..position.len()].copy_from_slice(position);
        x
    }

    #[test]
    fn dtlz1_on_plane() {
        let p = ProblemInstance::new(ProblemId::Dtlz1, 3).unwrap();
        let f = p.evaluate(&optimal(&p, &[0.3, 0.8])).unwrap();
        assert_abs_diff_eq!(f.iter().sum::<f64>(), 0.5, epsilon = 1e-12);
        // hand evaluation: (0.5*0.3*0.8, 0.5*0.3*0.2, 0.5*0.7)
        assert_abs_diff_eq!(f[0], 0.12, epsilon = 1e-12);
        assert_abs_diff_eq!(f[1], 0.03, epsilon = 1e-12);
        assert_abs_diff_eq!(f[2], 0.35, epsilon = 1e-12);
    }

    #[test]
    fn dtlz2_on_sphere() {
        let p = ProblemInstance::new(ProblemId::Dtlz2, 3).unwrap();
        let f = p.evaluate(&optimal(&p, &[0.25, 0.6])).unwrap();
        assert_abs_diff_eq!(f.iter().map(|v| v * v).sum::<f64>(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn dtlz4_matches_dtlz2_at_unit_position() {
        let d2 = ProblemInstance::new(ProblemId::Dtlz2, 4).unwrap();
        let d4 = ProblemInstance::new(ProblemId::Dtlz4, 4).unwrap();
        let mut x: Vec<f64> = (0..d2.variables()).map(|j| (j as f64 * 0.37) % 1.0).collect();
        x[..3].fill(1.0);
        assert_eq!(d2.evaluate(&x).unwrap(), d4.evaluate(&x).unwrap());
    }

    proptest! {
        #[test]
        fn optimal_fronts(position in proptest::collection::vec(0.0f64..=1.0, 1..8)) {
            let m = position.len() + 1;
            for id in [ProblemId::Dtlz1, ProblemId::Dtlz2, ProblemId::Dtlz3, ProblemId::Dtlz4] {
                let p = ProblemInstance::new(id, m).unwrap();
                let f = p.evaluate(&optimal(&p, &position)).unwrap();
                prop_assert!(f.iter().all(|v| v.is_finite() && *v >= 0.0));
                if id == ProblemId::Dtlz1 {
                    prop_assert!((f.iter().sum::<f64>() - 0.5).abs() <= 1e-9);
                } else {
                    prop_assert!((f.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() <= 1e-9);
                }
            }
        }

        #[test]
        fn dtlz1_distance_perturbation_increases_sum(
            position in proptest::collection::vec(0.0f64..=1.0, 2),
            which in 0usize..5,
            offset in 1e-3f64..0.5,
            up in any::<bool>(),
        ) {
            let p = ProblemInstance::new(ProblemId::Dtlz1, 3).unwrap();
            let mut x = optimal(&p, &position);
            let base: f64 = p.evaluate(&x).unwrap().iter().sum();
            x[2 + which] = if up { 0.5 + offset } else { 0.5 - offset };
            let moved: f64 = p.evaluate(&x).unwrap().iter().sum();
            // degenerate corners where the whole objective vector is scaled by zero
            prop_assume!(base > 0.0);
            prop_assert!(moved > base);
        }
    }
}
