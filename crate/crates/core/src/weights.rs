//! Simplex-lattice weight vectors and angle-based neighborhoods.
//!
//! Weight vectors are sampled with the Das-Dennis systematic approach: every
//! component is a multiple of `1/D` and the components sum to one. For many
//! objectives a two-layer variant combines a coarse boundary lattice with an
//! inside lattice shrunk toward the simplex centroid.
//!
//! Enumeration order is lexicographic ascending over the component tuples, so
//! subproblem indices are stable from run to run.

use std::cmp::Ordering;

use crate::error::{Error, Result};

const SIMPLEX_TOLERANCE: f64 = 1e-9;

/// A point on the unit simplex: `M` non-negative components summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    /// Validates simplex membership (non-negative, sum within `1e-9` of one).
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::domain("weight vector needs at least 2 components"));
        }
        if components.iter().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(Error::domain(
                "weight components must be finite and non-negative",
            ));
        }
        let sum: f64 = components.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_TOLERANCE {
            return Err(Error::domain(format!(
                "weight components sum to {sum}, expected 1"
            )));
        }
        Ok(WeightVector(components))
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm(&self) -> f64 {
        euclidean_norm(&self.0)
    }
}

impl AsRef<[f64]> for WeightVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// The full set of subproblem weights plus, once built, their neighborhoods.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSet {
    vectors: Vec<WeightVector>,
    neighborhoods: Vec<Vec<usize>>,
    objectives: usize,
}

impl WeightSet {
    /// Single-layer lattice with `divisions` steps along each objective.
    pub fn simplex_lattice(objectives: usize, divisions: usize) -> Result<Self> {
        generate_simplex_lattice(objectives, divisions)
    }

    /// Boundary lattice followed by a shrunk inside lattice.
    pub fn two_layer(
        objectives: usize,
        boundary_divisions: usize,
        inside_divisions: usize,
        tau: f64,
    ) -> Result<Self> {
        generate_two_layer(objectives, boundary_divisions, inside_divisions, tau)
    }

    /// Builds a weight set from explicit vectors, without neighborhoods.
    pub fn from_vectors(vectors: Vec<WeightVector>) -> Result<Self> {
        let objectives = vectors
            .first()
            .map(WeightVector::len)
            .ok_or_else(|| Error::domain("weight set must not be empty"))?;
        if vectors.iter().any(|v| v.len() != objectives) {
            return Err(Error::domain("weight vectors differ in dimension"));
        }
        Ok(WeightSet {
            vectors,
            neighborhoods: Vec::new(),
            objectives,
        })
    }

    /// Consumes the set and attaches `t`-sized angle neighborhoods.
    pub fn with_neighborhoods(self, t: usize) -> Result<Self> {
        build_neighborhoods(self, t)
    }

    pub fn vectors(&self) -> &[WeightVector] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &WeightVector {
        &self.vectors[i]
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn objectives(&self) -> usize {
        self.objectives
    }

    /// Neighborhood size, or 0 when neighborhoods have not been built.
    pub fn neighborhood_size(&self) -> usize {
        self.neighborhoods.first().map_or(0, Vec::len)
    }

    pub fn has_neighborhoods(&self) -> bool {
        !self.neighborhoods.is_empty()
    }

    /// Indices of the neighbors of subproblem `i`, nearest (smallest angle) first.
    pub fn neighborhood(&self, i: usize) -> &[usize] {
        &self.neighborhoods[i]
    }

    pub fn neighborhoods(&self) -> &[Vec<usize>] {
        &self.neighborhoods
    }
}

/// Number of lattice points `C(D+M-1, M-1)`.
pub fn lattice_size(objectives: usize, divisions: usize) -> u128 {
    binomial((divisions + objectives - 1) as u128, (objectives - 1) as u128)
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    // Each partial product is itself a binomial coefficient, so the division is exact.
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

fn check_lattice_args(objectives: usize, divisions: usize, what: &str) -> Result<()> {
    if objectives < 2 {
        return Err(Error::domain(format!(
            "objective count must be >= 2, got {objectives}"
        )));
    }
    if divisions < 1 {
        return Err(Error::domain(format!("{what} must be >= 1, got 0")));
    }
    Ok(())
}

/// All `C(D+M-1, M-1)` vectors whose components are multiples of `1/D`.
pub fn generate_simplex_lattice(objectives: usize, divisions: usize) -> Result<WeightSet> {
    check_lattice_args(objectives, divisions, "divisions")?;
    let expected = lattice_size(objectives, divisions);
    let mut vectors = Vec::with_capacity(usize::try_from(expected).unwrap_or(0));
    let mut counts = vec![0usize; objectives];
    enumerate_lattice(&mut counts, 0, divisions, divisions, &mut vectors);
    debug_assert_eq!(vectors.len() as u128, expected);
    Ok(WeightSet {
        vectors,
        neighborhoods: Vec::new(),
        objectives,
    })
}

fn enumerate_lattice(
    counts: &mut [usize],
    depth: usize,
    remaining: usize,
    divisions: usize,
    out: &mut Vec<WeightVector>,
) {
    let last = counts.len() - 1;
    if depth == last {
        counts[last] = remaining;
        let d = divisions as f64;
        out.push(WeightVector(counts.iter().map(|&c| c as f64 / d).collect()));
        return;
    }
    for c in 0..=remaining {
        counts[depth] = c;
        enumerate_lattice(counts, depth + 1, remaining - c, divisions, out);
    }
}

/// Boundary lattice (unmodified) followed by the inside lattice, each inside
/// component mapped through `v = (1 - tau)/M + tau * w`.
///
/// The count is always `N(D1, M) + N(D2, M)`. When the boundary lattice
/// contains interior points (`D1 >= M`) a shrunk inside vector can coincide
/// with one of them; no deduplication is done.
pub fn generate_two_layer(
    objectives: usize,
    boundary_divisions: usize,
    inside_divisions: usize,
    tau: f64,
) -> Result<WeightSet> {
    check_lattice_args(objectives, boundary_divisions, "boundary divisions")?;
    check_lattice_args(objectives, inside_divisions, "inside divisions")?;
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::domain(format!(
            "shrinkage factor must lie in [0, 1], got {tau}"
        )));
    }
    let mut set = generate_simplex_lattice(objectives, boundary_divisions)?;
    let inside = generate_simplex_lattice(objectives, inside_divisions)?;
    let offset = (1.0 - tau) / objectives as f64;
    set.vectors.extend(inside.vectors.into_iter().map(|w| {
        WeightVector(w.0.into_iter().map(|c| offset + tau * c).collect())
    }));
    Ok(set)
}

/// Included angle between the neighborhood owner `w` and a candidate `w'`.
///
/// `d1' = |w . w'| / |w'|`, `d2' = |w - d1' w'/|w'||`, angle `atan2(d2', d1')`.
pub fn included_angle(owner: &[f64], candidate: &[f64]) -> Result<f64> {
    if owner.len() != candidate.len() {
        return Err(Error::domain("weight vectors differ in dimension"));
    }
    let owner_norm = euclidean_norm(owner);
    let cand_norm = euclidean_norm(candidate);
    if owner_norm == 0.0 || cand_norm == 0.0 {
        return Err(Error::domain("included angle of a zero vector"));
    }
    let d1 = dot(owner, candidate).abs() / cand_norm;
    let d2 = owner
        .iter()
        .zip(candidate)
        .map(|(a, b)| {
            let r = a - d1 * b / cand_norm;
            r * r
        })
        .sum::<f64>()
        .sqrt();
    Ok(d2.atan2(d1))
}

/// For each vector, the `t` indices with the smallest included angle,
/// ascending by angle and then by index.
pub fn build_neighborhoods(mut set: WeightSet, t: usize) -> Result<WeightSet> {
    let n = set.vectors.len();
    if t < 1 || t > n {
        return Err(Error::domain(format!(
            "neighborhood size must lie in [1, {n}], got {t}"
        )));
    }
    let mut neighborhoods = Vec::with_capacity(n);
    let mut ranked: Vec<(f64, usize)> = Vec::with_capacity(n);
    for owner in &set.vectors {
        ranked.clear();
        for (j, cand) in set.vectors.iter().enumerate() {
            ranked.push((included_angle(&owner.0, &cand.0)?, j));
        }
        ranked.sort_by(|a, b| match a.0.total_cmp(&b.0) {
            Ordering::Equal => a.1.cmp(&b.1),
            o => o,
        });
        neighborhoods.push(ranked[..t].iter().map(|&(_, j)| j).collect());
    }
    set.neighborhoods = neighborhoods;
    Ok(set)
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn euclidean_norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    /// Brute force: every M-tuple of integers in 0..=D, keep those summing to D.
    fn brute_force_count(m: usize, d: usize) -> usize {
        let total = (d + 1).pow(m as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let mut s = 0;
                for _ in 0..m {
                    s += c % (d + 1);
                    c /= d + 1;
                }
                s == d
            })
            .count()
    }

    #[test]
    fn lattice_counts_match_table() {
        assert_eq!(generate_simplex_lattice(3, 12).unwrap().len(), 91);
        assert_eq!(generate_simplex_lattice(5, 6).unwrap().len(), 210);
    }

    #[test]
    fn lattice_m4_d3_matches_brute_force() {
        assert_eq!(brute_force_count(4, 3), 20);
        assert_eq!(generate_simplex_lattice(4, 3).unwrap().len(), 20);
    }

    #[test]
    fn one_division_gives_unit_vectors() {
        let set = generate_simplex_lattice(3, 1).unwrap();
        let got: Vec<_> = set.vectors().iter().map(|v| v.components().to_vec()).collect();
        assert_eq!(
            got,
            vec![vec![0.0, 0.0, 1.0], vec![0.0, 1.0, 0.0], vec![1.0, 0.0, 0.0]]
        );
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let set = generate_simplex_lattice(3, 4).unwrap();
        for pair in set.vectors().windows(2) {
            let a = pair[0].components();
            let b = pair[1].components();
            assert_eq!(a.partial_cmp(b), Some(Ordering::Less));
        }
    }

    #[test]
    fn rejects_bad_lattice_args() {
        assert!(matches!(generate_simplex_lattice(1, 3), Err(Error::Domain(_))));
        assert!(matches!(generate_simplex_lattice(3, 0), Err(Error::Domain(_))));
        assert!(generate_two_layer(3, 2, 0, 0.5).is_err());
        assert!(generate_two_layer(3, 2, 1, 1.5).is_err());
    }

    #[test]
    fn two_layer_counts() {
        assert_eq!(generate_two_layer(8, 3, 2, 0.5).unwrap().len(), 156);
        assert_eq!(generate_two_layer(10, 3, 2, 0.5).unwrap().len(), 275);
        assert_eq!(generate_two_layer(15, 2, 1, 0.5).unwrap().len(), 135);
    }

    #[test]
    fn shrinkage_of_unit_vector() {
        // inside layer with D2 = 1 is the unit vectors; (1,0,0) is the last one.
        let set = generate_two_layer(3, 1, 1, 0.5).unwrap();
        let shrunk = set.vector(5).components();
        assert_abs_diff_eq!(shrunk[0], 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(shrunk[1], 1.0 / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(shrunk[2], 1.0 / 6.0, epsilon = 1e-15);
    }

    #[test]
    fn angle_examples() {
        let w = [0.3, 0.7];
        assert_eq!(included_angle(&w, &w).unwrap(), 0.0);
        assert_abs_diff_eq!(
            included_angle(&[1.0, 0.0], &[0.0, 1.0]).unwrap(),
            FRAC_PI_2,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            included_angle(&[0.5, 0.5], &[1.0, 0.0]).unwrap(),
            FRAC_PI_4,
            epsilon = 1e-15
        );
        assert!(included_angle(&[0.0, 0.0], &[1.0, 0.0]).is_err());
    }

    #[test]
    fn neighborhood_of_corner() {
        let set = generate_simplex_lattice(3, 4)
            .unwrap()
            .with_neighborhoods(3)
            .unwrap();
        let corner = set
            .vectors()
            .iter()
            .position(|v| v.components() == [1.0, 0.0, 0.0])
            .unwrap();
        let mut got: Vec<Vec<f64>> = set
            .neighborhood(corner)
            .iter()
            .map(|&j| set.vector(j).components().to_vec())
            .collect();
        assert_eq!(got[0], vec![1.0, 0.0, 0.0]);
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(
            got,
            vec![
                vec![0.75, 0.0, 0.25],
                vec![0.75, 0.25, 0.0],
                vec![1.0, 0.0, 0.0]
            ]
        );
    }

    #[test]
    fn neighborhood_extremes() {
        let set = generate_simplex_lattice(3, 3).unwrap();
        let n = set.len();
        let full = set.clone().with_neighborhoods(n).unwrap();
        for i in 0..n {
            let mut nb = full.neighborhood(i).to_vec();
            nb.sort_unstable();
            assert_eq!(nb, (0..n).collect::<Vec<_>>());
        }
        let single = set.clone().with_neighborhoods(1).unwrap();
        for i in 0..n {
            assert_eq!(single.neighborhood(i), &[i]);
        }
        assert!(set.clone().with_neighborhoods(0).is_err());
        assert!(set.with_neighborhoods(n + 1).is_err());
    }

    #[test]
    fn weight_vector_validation() {
        assert!(WeightVector::new(vec![0.5, 0.5]).is_ok());
        assert!(WeightVector::new(vec![0.5, 0.6]).is_err());
        assert!(WeightVector::new(vec![-0.5, 1.5]).is_err());
        assert!(WeightVector::new(vec![1.0]).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn count_matches_binomial(m in 2usize..=15, d in 1usize..=12) {
                let expected = lattice_size(m, d);
                // keep memory sane; the counting identity is checked on the big ones too
                prop_assume!(expected <= 200_000);
                let set = generate_simplex_lattice(m, d).unwrap();
                prop_assert_eq!(set.len() as u128, expected);
                for v in set.vectors() {
                    let s: f64 = v.components().iter().sum();
                    prop_assert!((s - 1.0).abs() <= 1e-12);
                    prop_assert!(v.components().iter().all(|&c| c >= 0.0));
                }
            }

            #[test]
            fn shrunk_vectors_stay_on_simplex(m in 2usize..=10, d1 in 1usize..=3, d2 in 1usize..=3, tau in 0.0f64..=1.0) {
                let set = generate_two_layer(m, d1, d2, tau).unwrap();
                prop_assert_eq!(set.len() as u128, lattice_size(m, d1) + lattice_size(m, d2));
                for v in set.vectors() {
                    let s: f64 = v.components().iter().sum();
                    prop_assert!((s - 1.0).abs() <= 1e-12);
                    prop_assert!(v.components().iter().all(|&c| c >= 0.0));
                }
            }

            #[test]
            fn angle_is_bounded(a in proptest::collection::vec(0.0f64..1.0, 2..6), b in proptest::collection::vec(0.0f64..1.0, 2..6)) {
                let m = a.len().min(b.len());
                let (a, b) = (&a[..m], &b[..m]);
                prop_assume!(euclidean_norm(a) > 1e-9 && euclidean_norm(b) > 1e-9);
                let angle = included_angle(a, b).unwrap();
                prop_assert!((0.0..=FRAC_PI_2 + 1e-12).contains(&angle));
            }

            #[test]
            fn neighborhoods_are_deterministic(m in 2usize..=4, d in 1usize..=5, t_frac in 0.0f64..1.0) {
                let base = generate_simplex_lattice(m, d).unwrap();
                let t = 1 + ((base.len() - 1) as f64 * t_frac) as usize;
                let a = base.clone().with_neighborhoods(t).unwrap();
                let b = base.with_neighborhoods(t).unwrap();
                prop_assert_eq!(&a, &b);
                for (i, nb) in a.neighborhoods().iter().enumerate() {
                    prop_assert_eq!(nb.len(), t);
                    prop_assert_eq!(nb[0], i);
                }
            }
        }
    }

    #[test]
    fn counting_identity_for_large_lattices() {
        // sizes only, via the closed form; enumerating C(26,14) vectors is pointless
        assert_eq!(lattice_size(15, 12), 9_657_700);
        assert_eq!(lattice_size(15, 2), 120);
        assert_eq!(lattice_size(15, 1), 15);
    }
}
