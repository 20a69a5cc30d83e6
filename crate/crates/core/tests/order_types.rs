mod common;

use std::collections::BTreeSet;

use common::{brute_cubes, fubini, grid, literal_classes, t};
use jumpfree::tuples::{cubes_in, enumerate_order_types, field, order_equivalent, Tuple};
use proptest::prelude::*;

#[test]
fn fubini_oracle_values() {
    let got: Vec<u64> = (1..=5).map(fubini).collect();
    assert_eq!(got, [1, 3, 13, 75, 541]);
}

#[test]
fn class_counts_match_literal_partition() {
    for k in 1..=4 {
        let literal = literal_classes(&grid(k as u64, k)).len();
        let enumerated = enumerate_order_types(k).len();
        assert_eq!(enumerated, literal, "k = {k}");
        assert_eq!(enumerated as u64, fubini(k), "k = {k}");
    }
}

#[test]
fn class_count_bounded_by_k_to_the_k() {
    for k in 1..=5usize {
        assert!(enumerate_order_types(k).len() <= k.pow(k as u32));
    }
}

#[test]
fn every_enumerated_type_is_realized() {
    for k in 1..=4 {
        let realized: BTreeSet<_> = grid(k as u64, k)
            .iter()
            .map(Tuple::order_signature)
            .collect();
        for ot in enumerate_order_types(k) {
            assert!(realized.contains(&ot), "{ot} not realized");
        }
    }
}

#[test]
fn exhaustive_cross_oracle_small_grids() {
    for k in 1..=3 {
        let tuples = grid(3, k);
        for x in &tuples {
            for y in &tuples {
                assert_eq!(
                    order_equivalent(x, y).unwrap(),
                    x.order_signature() == y.order_signature(),
                    "{x} vs {y}"
                );
            }
        }
    }
}

#[test]
fn cubes_in_exhaustive_over_small_fields() {
    // every domain D ⊆ {0,1,2}^2 (512 of them), every p
    let points = grid(3, 2);
    for mask in 0u32..1 << points.len() {
        let d: BTreeSet<Tuple<u64>> = (0..points.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| points[i].clone())
            .collect();
        for p in 1..=3 {
            let fast: Vec<Vec<u64>> = cubes_in(&d, p)
                .into_iter()
                .map(|c| c.elements().to_vec())
                .collect();
            assert_eq!(fast, brute_cubes(&d, 2, p), "mask {mask:#x} p {p}");
        }
    }
}

fn tuple_strategy(k: usize) -> impl Strategy<Value = Tuple<u64>> {
    prop::collection::vec(0u64..8, k).prop_map(|c| Tuple::new(c).unwrap())
}

fn arity_and_three() -> impl Strategy<Value = (Tuple<u64>, Tuple<u64>, Tuple<u64>)> {
    (1usize..=5).prop_flat_map(|k| (tuple_strategy(k), tuple_strategy(k), tuple_strategy(k)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn equivalence_relation((x, y, z) in arity_and_three()) {
        prop_assert!(order_equivalent(&x, &x).unwrap());
        prop_assert_eq!(order_equivalent(&x, &y).unwrap(), order_equivalent(&y, &x).unwrap());
        if order_equivalent(&x, &y).unwrap() && order_equivalent(&y, &z).unwrap() {
            prop_assert!(order_equivalent(&x, &z).unwrap());
        }
    }

    #[test]
    fn signature_agrees_with_literal_relation((x, y, _z) in arity_and_three()) {
        prop_assert_eq!(
            order_equivalent(&x, &y).unwrap(),
            x.order_signature() == y.order_signature()
        );
    }

    #[test]
    fn signature_is_dense((x, _y, _z) in arity_and_three()) {
        let ranks = x.order_signature().ranks().to_vec();
        let used: BTreeSet<usize> = ranks.iter().copied().collect();
        prop_assert!(used.iter().copied().eq(0..used.len()));
        prop_assert!(used.len() <= x.k());
    }

    #[test]
    fn field_is_monotone(
        a in prop::collection::btree_set(prop::collection::vec(0u64..10, 2), 0..8),
        extra in prop::collection::btree_set(prop::collection::vec(0u64..10, 2), 0..8),
    ) {
        let a: BTreeSet<Tuple<u64>> = a.into_iter().map(|c| t(&c)).collect();
        let mut b = a.clone();
        b.extend(extra.into_iter().map(|c| t(&c)));
        let fa = field(&a).unwrap();
        let fb = field(&b).unwrap();
        prop_assert!(fa.is_subset(&fb));
    }

    #[test]
    fn cubes_in_matches_brute_force(
        d in prop::collection::btree_set(prop::collection::vec(0u64..6, 2), 0..30),
        p in 1usize..=4,
    ) {
        let d: BTreeSet<Tuple<u64>> = d.into_iter().map(|c| t(&c)).collect();
        let fast: Vec<Vec<u64>> = cubes_in(&d, p).into_iter().map(|c| c.elements().to_vec()).collect();
        prop_assert_eq!(fast, brute_cubes(&d, 2, p));
    }
}
