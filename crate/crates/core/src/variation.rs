//! Mating selection, simulated binary crossover and polynomial mutation.
//!
//! One subproblem visit produces exactly one offspring: SBX yields two
//! intermediate children, one of them is dropped at random, and the survivor
//! is mutated and clamped to the variable bounds.
//!
//! Random numbers are drawn in a fixed order so that a seeded stream
//! reproduces the same offspring sequence:
//!
//! 1. [`select_mates`]: one draw against `p_s`, then index draws (with redraws
//!    on self-selection).
//! 2. [`sbx`]: one draw against `p_c`. When crossover fires, per variable:
//!    under [`SbxScheme::PerVariable`] one draw deciding whether the variable
//!    crosses, then for a crossing variable one `u` and one draw deciding
//!    whether the two children exchange it; under [`SbxScheme::Whole`] one `u`.
//!    Then one draw choosing the kept child.
//! 3. [`polynomial_mutation`]: per variable, one draw against `p_m`, and one
//!    `u` when that variable mutates.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problems::Bounds;

/// Redraws of the second parent before falling back to a global draw that excludes `i`.
const MAX_MATE_REDRAWS: usize = 8;

/// A candidate solution with its cached raw objective vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    /// Serial number assigned at creation. Copies keep the id of their source,
    /// so slot multiplicities can be tracked through an update.
    pub id: u64,
    pub decision: Vec<f64>,
    pub objectives: Vec<f64>,
}

/// Which variables SBX recombines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SbxScheme {
    /// Each variable crosses with probability 1/2, and a crossed variable is
    /// exchanged between the two children with probability 1/2. Uncrossed
    /// variables are copied from the parents unchanged.
    #[default]
    PerVariable,
    /// Every variable crosses and each child keeps its own side.
    Whole,
}

impl SbxScheme {
    pub fn name(self) -> &'static str {
        match self {
            SbxScheme::PerVariable => "per_variable",
            SbxScheme::Whole => "whole",
        }
    }
}

impl std::str::FromStr for SbxScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "per_variable" => Ok(SbxScheme::PerVariable),
            "whole" => Ok(SbxScheme::Whole),
            _ => Err(Error::config("sbx_scheme", format!("unknown scheme `{s}` (per_variable, whole)"))),
        }
    }
}

/// Operator settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariationConfig {
    /// Probability that crossover fires for a mating.
    pub p_c: f64,
    /// SBX distribution index.
    pub eta_c: f64,
    /// Per-variable mutation probability.
    pub p_m: f64,
    /// Polynomial-mutation distribution index.
    pub eta_m: f64,
    /// Probability of picking the second parent from the neighborhood.
    pub p_s: f64,
    pub sbx_scheme: SbxScheme,
}

impl VariationConfig {
    /// `p_c = 1`, `eta_c = 20`, `p_m = 0.5/n`, `eta_m = 20`, `p_s = 0.9`.
    pub fn for_variables(n: usize) -> Self {
        VariationConfig {
            p_c: 1.0,
            eta_c: 20.0,
            p_m: 0.5 / n as f64,
            eta_m: 20.0,
            p_s: 0.9,
            sbx_scheme: SbxScheme::PerVariable,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (field, p) in [("p_c", self.p_c), ("p_m", self.p_m), ("p_s", self.p_s)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::config(field, format!("probability {p} outside [0, 1]")));
            }
        }
        for (field, eta) in [("eta_c", self.eta_c), ("eta_m", self.eta_m)] {
            if !(eta > 0.0) || !eta.is_finite() {
                return Err(Error::config(field, format!("distribution index must be > 0, got {eta}")));
            }
        }
        Ok(())
    }
}

/// Picks the two parents for subproblem `i`.
///
/// The first parent is always `i`. The second comes from `neighborhood` when a
/// uniform draw is below `p_s`, otherwise from the whole population. It is
/// never `i` unless the population has a single member.
pub fn select_mates<R: Rng + ?Sized>(
    i: usize,
    neighborhood: &[usize],
    population_size: usize,
    p_s: f64,
    rng: &mut R,
) -> (usize, usize) {
    if population_size <= 1 {
        return (i, i);
    }
    let local = rng.gen::<f64>() < p_s;
    let pool_has_other = !local || neighborhood.iter().any(|&j| j != i);
    if pool_has_other {
        for _ in 0..MAX_MATE_REDRAWS {
            let j = if local {
                neighborhood[rng.gen_range(0..neighborhood.len())]
            } else {
                rng.gen_range(0..population_size)
            };
            if j != i {
                return (i, j);
            }
        }
    }
    let j = rng.gen_range(0..population_size - 1);
    (i, if j >= i { j + 1 } else { j })
}

/// SBX spread factor for a uniform draw `u`.
pub fn sbx_beta(u: f64, eta_c: f64) -> f64 {
    let exponent = 1.0 / (eta_c + 1.0);
    if u <= 0.5 {
        (2.0 * u).powf(exponent)
    } else {
        (1.0 / (2.0 * (1.0 - u))).powf(exponent)
    }
}

/// Both SBX children for per-variable spread factors `betas`, before clamping.
pub fn sbx_children(p1: &[f64], p2: &[f64], betas: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut c1 = Vec::with_capacity(p1.len());
    let mut c2 = Vec::with_capacity(p1.len());
    for ((&a, &b), &beta) in p1.iter().zip(p2).zip(betas) {
        c1.push(0.5 * ((1.0 + beta) * a + (1.0 - beta) * b));
        c2.push(0.5 * ((1.0 - beta) * a + (1.0 + beta) * b));
    }
    (c1, c2)
}

/// One SBX child of `p1` and `p2`, clamped to `bounds`.
pub fn sbx<R: Rng + ?Sized>(
    p1: &[f64],
    p2: &[f64],
    eta_c: f64,
    p_c: f64,
    scheme: SbxScheme,
    bounds: &Bounds,
    rng: &mut R,
) -> Vec<f64> {
    let mut c1 = p1.to_vec();
    let mut c2 = p2.to_vec();
    if rng.gen::<f64>() < p_c {
        for j in 0..p1.len() {
            if scheme == SbxScheme::PerVariable && !rng.gen::<bool>() {
                continue;
            }
            let beta = sbx_beta(rng.gen::<f64>(), eta_c);
            let (a, b) = (p1[j], p2[j]);
            c1[j] = 0.5 * ((1.0 + beta) * a + (1.0 - beta) * b);
            c2[j] = 0.5 * ((1.0 - beta) * a + (1.0 + beta) * b);
            if scheme == SbxScheme::PerVariable && rng.gen::<bool>() {
                std::mem::swap(&mut c1[j], &mut c2[j]);
            }
        }
    }
    let mut child = if rng.gen::<bool>() { c1 } else { c2 };
    bounds.clamp(&mut child);
    child
}

/// Polynomial-mutation step for a uniform draw `u`, in `[-1, 1]`.
///
/// Uses `(2u)^(1/(eta+1)) - 1` below one half, so the step is continuous at
/// `u = 0.5` and can move a variable down as well as up.
pub fn pm_delta(u: f64, eta_m: f64) -> f64 {
    let exponent = 1.0 / (eta_m + 1.0);
    if u <= 0.5 {
        (2.0 * u).powf(exponent) - 1.0
    } else {
        1.0 - (2.0 * (1.0 - u)).powf(exponent)
    }
}

/// Mutates each variable with probability `p_m`, then clamps to `bounds`.
pub fn polynomial_mutation<R: Rng + ?Sized>(
    child: &mut [f64],
    eta_m: f64,
    p_m: f64,
    bounds: &Bounds,
    rng: &mut R,
) {
    for (j, x) in child.iter_mut().enumerate() {
        if rng.gen::<f64>() < p_m {
            let delta = pm_delta(rng.gen::<f64>(), eta_m);
            *x += (bounds.upper(j) - bounds.lower(j)) * delta;
        }
    }
    bounds.clamp(child);
}

/// Offspring decision vector for a mating of `p1` and `p2`: SBX then PM.
pub fn reproduce<R: Rng + ?Sized>(
    p1: &[f64],
    p2: &[f64],
    config: &VariationConfig,
    bounds: &Bounds,
    rng: &mut R,
) -> Vec<f64> {
    let mut child = sbx(p1, p2, config.eta_c, config.p_c, config.sbx_scheme, bounds, rng);
    polynomial_mutation(&mut child, config.eta_m, config.p_m, bounds, rng);
    child
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit_bounds(n: usize) -> Bounds {
        Bounds::new(vec![0.0; n], vec![1.0; n]).unwrap()
    }

    #[test]
    fn beta_at_half_reproduces_parents() {
        assert_eq!(sbx_beta(0.5, 20.0), 1.0);
        let p1 = [0.1, 0.9, 0.4];
        let p2 = [0.7, 0.2, 0.4];
        let (c1, c2) = sbx_children(&p1, &p2, &[1.0; 3]);
        assert_eq!(c1, p1);
        assert_eq!(c2, p2);
    }

    #[test]
    fn beta_quarter_eta_twenty() {
        // (2 * 0.25)^(1/21) = 0.5^(1/21)
        let beta = sbx_beta(0.25, 20.0);
        assert_abs_diff_eq!(beta, 0.5f64.powf(1.0 / 21.0), epsilon = 1e-15);
        assert_abs_diff_eq!(beta, 0.967_532, epsilon = 1e-6);
        let (c1, c2) = sbx_children(&[0.2], &[0.6], &[beta]);
        assert_abs_diff_eq!(c1[0], 0.5 * ((1.0 + beta) * 0.2 + (1.0 - beta) * 0.6), epsilon = 1e-15);
        assert_abs_diff_eq!(c1[0] + c2[0], 0.8, epsilon = 1e-15);
    }

    #[test]
    fn identical_parents_are_a_fixed_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = [0.3, 0.8, 0.05, 1.0];
        for _ in 0..100 {
            for scheme in [SbxScheme::PerVariable, SbxScheme::Whole] {
                let child = sbx(&p, &p, 20.0, 1.0, scheme, &unit_bounds(4), &mut rng);
                for (c, v) in child.iter().zip(&p) {
                    assert_abs_diff_eq!(c, v, epsilon = 1e-15);
                }
            }
        }
    }

    #[test]
    fn pm_delta_examples() {
        assert_eq!(pm_delta(0.5, 20.0), 0.0);
        assert_abs_diff_eq!(pm_delta(1e-300, 20.0), -1.0, epsilon = 1e-12);
        assert_eq!(pm_delta(0.0, 20.0), -1.0);
        assert_abs_diff_eq!(pm_delta(0.9, 20.0), 1.0 - 0.2f64.powf(1.0 / 21.0), epsilon = 1e-15);
        assert_abs_diff_eq!(pm_delta(0.9, 20.0), 0.073_78, epsilon = 1e-5);
    }

    #[test]
    fn mutation_toward_lower_bound_is_clamped() {
        let bounds = Bounds::new(vec![-1.0], vec![3.0]).unwrap();
        let mut x = [0.5];
        // an all-zero stream: every variable mutates with u = 0, a full step down
        let mut rng = rand::rngs::mock::StepRng::new(0, 0);
        polynomial_mutation(&mut x, 20.0, 1.0, &bounds, &mut rng);
        assert_eq!(x[0], -1.0);
    }

    #[test]
    fn mates_with_forced_neighborhood() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let nb = [4, 2, 7];
        for _ in 0..500 {
            let (a, b) = select_mates(4, &nb, 10, 1.0, &mut rng);
            assert_eq!(a, 4);
            assert!(b == 2 || b == 7);
        }
    }

    #[test]
    fn mates_with_global_pool_cover_population() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let nb = [0, 1];
        let mut seen = [0usize; 10];
        for _ in 0..5000 {
            let (a, b) = select_mates(0, &nb, 10, 0.0, &mut rng);
            assert_eq!(a, 0);
            assert_ne!(b, 0);
            seen[b] += 1;
        }
        // every other member is reachable and roughly uniform
        for &c in &seen[1..] {
            assert!((400..=720).contains(&c), "{seen:?}");
        }
    }

    #[test]
    fn singleton_neighborhood_falls_through() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let (a, b) = select_mates(3, &[3], 6, 1.0, &mut rng);
            assert_eq!(a, 3);
            assert_ne!(b, 3);
            assert!(b < 6);
        }
    }

    #[test]
    fn config_validation() {
        assert!(VariationConfig::for_variables(12).validate().is_ok());
        let mut bad = VariationConfig::for_variables(12);
        bad.p_s = 1.5;
        assert!(matches!(bad.validate(), Err(Error::Config { field, .. }) if field == "p_s"));
        let mut bad = VariationConfig::for_variables(12);
        bad.eta_m = 0.0;
        assert!(bad.validate().is_err());
    }

    #[test]
    fn per_variable_scheme_leaves_about_half_untouched() {
        let n = 4000;
        let p1 = vec![0.25; n];
        let p2 = vec![0.75; n];
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let child = sbx(&p1, &p2, 20.0, 1.0, SbxScheme::PerVariable, &unit_bounds(n), &mut rng);
        let copied = child.iter().filter(|&&v| v == 0.25 || v == 0.75).count();
        assert!((1800..=2200).contains(&copied), "{copied}");
        let whole = sbx(&p1, &p2, 20.0, 1.0, SbxScheme::Whole, &unit_bounds(n), &mut rng);
        // every variable crossed, and all on the same side of the midpoint pairing
        let crossed = whole.iter().filter(|&&v| v != 0.25 && v != 0.75).count();
        assert!(crossed > n - 10);
        assert_eq!("whole".parse::<SbxScheme>().unwrap(), SbxScheme::Whole);
        assert!("uniform".parse::<SbxScheme>().is_err());
    }

    #[test]
    fn seeded_offspring_sequences_repeat() {
        let bounds = unit_bounds(5);
        let cfg = VariationConfig::for_variables(5);
        let p1 = [0.1, 0.2, 0.3, 0.4, 0.5];
        let p2 = [0.9, 0.7, 0.5, 0.3, 0.1];
        let mut a = ChaCha8Rng::seed_from_u64(99);
        let mut b = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..50 {
            assert_eq!(
                reproduce(&p1, &p2, &cfg, &bounds, &mut a),
                reproduce(&p1, &p2, &cfg, &bounds, &mut b)
            );
        }
    }

    proptest! {
        #[test]
        fn offspring_respect_bounds(
            seed in any::<u64>(),
            p in proptest::collection::vec((0.0f64..1.0, 0.0f64..1.0), 1..10),
            scale in 0.5f64..20.0,
        ) {
            let n = p.len();
            let upper: Vec<f64> = (0..n).map(|j| scale * (j + 1) as f64).collect();
            let bounds = Bounds::new(vec![0.0; n], upper.clone()).unwrap();
            let p1: Vec<f64> = p.iter().zip(&upper).map(|((a, _), u)| a * u).collect();
            let p2: Vec<f64> = p.iter().zip(&upper).map(|((_, b), u)| b * u).collect();
            let mut cfg = VariationConfig::for_variables(n);
            cfg.p_m = 1.0;
            cfg.eta_c = 1.0;
            cfg.eta_m = 1.0;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let child = reproduce(&p1, &p2, &cfg, &bounds, &mut rng);
            for (j, x) in child.iter().enumerate() {
                prop_assert!((0.0..=upper[j]).contains(x));
            }
        }

        #[test]
        fn sbx_preserves_parent_mean(
            p in proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0, 0.0f64..1.0), 1..10),
            eta in 0.5f64..40.0,
        ) {
            let p1: Vec<f64> = p.iter().map(|t| t.0).collect();
            let p2: Vec<f64> = p.iter().map(|t| t.1).collect();
            let betas: Vec<f64> = p.iter().map(|t| sbx_beta(t.2, eta)).collect();
            let (c1, c2) = sbx_children(&p1, &p2, &betas);
            for j in 0..p1.len() {
                prop_assert!(((c1[j] + c2[j]) - (p1[j] + p2[j])).abs() <= 1e-12);
            }
        }
    }
}
