use proptest::prelude::*;

use manyopt::engine::{classic_pass, liu_pass, run, EngineConfig, UpdateStrategy};
use manyopt::problems::{ProblemId, ProblemInstance};
use manyopt::weights::WeightSet;

/// Scores by a lookup table `table[slot][id]`, as a PBI would for fixed weights.
fn table_scorer(table: &[Vec<f64>]) -> impl FnMut(&u64, usize) -> f64 + '_ {
    move |id, slot| table[slot][*id as usize]
}

#[test]
fn liu_never_copies_where_replace_all_does() {
    // The offspring (id 3) beats every slot, so classic replacement clones it into all of them.
    let table = vec![vec![1.0, 5.0, 5.0, 0.0], vec![5.0, 1.0, 5.0, 0.0], vec![5.0, 5.0, 1.0, 0.0]];
    let nb = [0, 1, 2];

    let mut liu = vec![0u64, 1, 2];
    let out = liu_pass(3u64, &nb, &mut liu, table_scorer(&table));
    let mut seen = liu.clone();
    seen.sort_unstable();
    seen.dedup();
    assert_eq!(seen.len(), 3);
    assert_eq!(out.comparisons, 3);

    let mut classic = vec![0u64, 1, 2];
    classic_pass(&3u64, &nb, &mut classic, None, table_scorer(&table));
    assert_eq!(classic, vec![3, 3, 3]);

    let mut capped = vec![0u64, 1, 2];
    classic_pass(&3u64, &nb, &mut capped, Some(2), table_scorer(&table));
    assert_eq!(capped, vec![3, 3, 2]);
}

#[test]
fn liu_keeps_population_distinct_on_dtlz4() {
    let problem = ProblemInstance::new(ProblemId::Dtlz4, 3).unwrap();
    let weights = WeightSet::simplex_lattice(3, 6).unwrap().with_neighborhoods(10).unwrap();
    for update in UpdateStrategy::ALL {
        let record = run(&problem, &weights, &EngineConfig::for_problem(&problem, 40).with_update(update), 3).unwrap();
        if update == UpdateStrategy::Liu {
            assert_eq!(record.population.duplicate_slots(), 0);
        }
        assert_eq!(record.population.len(), weights.len());
    }
}

proptest! {
    #[test]
    fn liu_pass_invariants(
        n in 1usize..12,
        raw in proptest::collection::vec(proptest::collection::vec(0.0f64..10.0, 13), 12),
        nb_seed in proptest::collection::vec(0usize..1000, 12),
        t in 1usize..12,
    ) {
        let t = t.min(n);
        // distinct neighborhood from a seeded shuffle of 0..n
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&k| (nb_seed[k], k));
        let nb = &order[..t];
        let table: Vec<Vec<f64>> = raw[..n].to_vec();

        let before: Vec<u64> = (0..n as u64).collect();
        let mut after = before.clone();
        let out = liu_pass(12u64, nb, &mut after, table_scorer(&table));

        prop_assert_eq!(out.comparisons, t as u64);
        let discarded = out.discarded.unwrap();
        let mut expected: Vec<u64> = before.iter().copied().chain([12]).filter(|&id| id != discarded).collect();
        expected.sort_unstable();
        let mut got = after.clone();
        got.sort_unstable();
        prop_assert_eq!(got, expected);
        for &j in nb {
            prop_assert!(table[j][after[j] as usize] <= table[j][before[j] as usize]);
        }
        for j in (0..n).filter(|j| !nb.contains(j)) {
            prop_assert_eq!(after[j], before[j]);
        }
    }

    #[test]
    fn classic_pass_never_worsens_a_slot(
        n in 1usize..10,
        raw in proptest::collection::vec(proptest::collection::vec(0.0f64..10.0, 11), 10),
        cap in proptest::option::of(1usize..4),
    ) {
        let table: Vec<Vec<f64>> = raw[..n].to_vec();
        let nb: Vec<usize> = (0..n).collect();
        let before: Vec<u64> = (0..n as u64).collect();
        let mut after = before.clone();
        let out = classic_pass(&10u64, &nb, &mut after, cap, table_scorer(&table));
        let copies = after.iter().filter(|&&id| id == 10).count();
        prop_assert_eq!(copies as u64, out.slot_changes);
        if let Some(cap) = cap {
            prop_assert!(copies <= cap);
        }
        for j in 0..n {
            prop_assert!(table[j][after[j] as usize] <= table[j][before[j] as usize]);
        }
    }
}
