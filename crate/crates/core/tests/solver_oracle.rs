mod common;

use common::{brute_solvable, brute_sums, random_multiset};
use jumpfree::intsets::Multiset;
use jumpfree::subsetsum::{solve_subset_sum, Method, ReachableSums};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn solvers_agree_with_exhaustive_on_seeded_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut solvable = 0;
    for _ in 0..2000 {
        let ms = random_multiset(&mut rng, 12, -9, 9);
        let oracle = solve_subset_sum(&ms, Method::Exhaustive).unwrap();
        assert_eq!(oracle.is_some(), brute_solvable(&ms), "{ms}");
        solvable += oracle.is_some() as usize;
        for method in Method::ALL {
            let got = solve_subset_sum(&ms, method).unwrap();
            assert_eq!(got.is_some(), oracle.is_some(), "{method} on {ms}");
            if let Some(c) = got {
                assert!(c.is_valid_for(&ms), "{method} certificate {:?} for {ms}", c);
            }
        }
    }
    assert!(
        solvable > 200 && solvable < 1900,
        "degenerate sample: {solvable}"
    );
}

#[test]
fn dp_reachability_sound_and_complete() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..500 {
        let ms = random_multiset(&mut rng, 10, -9, 9);
        let table = ReachableSums::build(&ms).unwrap();
        let got: Vec<i128> = table.sums().collect();
        let want: Vec<i128> = brute_sums(&ms).into_iter().collect();
        assert_eq!(got, want, "{ms}");
        for s in &want {
            let items = table.witness(*s).unwrap();
            let expanded = ms.expanded();
            let mut idx = items.clone();
            idx.sort_unstable();
            idx.dedup();
            assert_eq!(idx.len(), items.len());
            assert_eq!(items.iter().map(|&i| expanded[i] as i128).sum::<i128>(), *s);
        }
    }
}

#[test]
fn larger_instances_dp_and_mitm_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let ms = random_multiset(&mut rng, 30, -200, 150);
        let dp = solve_subset_sum(&ms, Method::Dp).unwrap();
        let mitm = solve_subset_sum(&ms, Method::Mitm).unwrap();
        assert_eq!(dp.is_some(), mitm.is_some(), "{ms}");
        for c in dp.iter().chain(mitm.iter()) {
            assert!(c.is_valid_for(&ms));
        }
    }
}

fn multiset_strategy() -> impl Strategy<Value = Multiset<i64>> {
    prop::collection::vec(-9i64..=9, 0..=12).prop_map(|v| v.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn adding_zero_makes_solvable(ms in multiset_strategy()) {
        let mut with_zero = ms.clone();
        with_zero.insert(0);
        for method in Method::ALL {
            let c = solve_subset_sum(&with_zero, method).unwrap();
            prop_assert!(c.is_some_and(|c| c.is_valid_for(&with_zero)));
        }
    }

    #[test]
    fn negation_symmetry(ms in multiset_strategy()) {
        let neg = -&ms;
        for method in Method::ALL {
            prop_assert_eq!(
                solve_subset_sum(&ms, method).unwrap().is_some(),
                solve_subset_sum(&neg, method).unwrap().is_some()
            );
        }
    }
}
