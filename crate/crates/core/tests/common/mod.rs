//! Brute-force oracles shared by the integration tests. None of these go
//! through the code paths they check.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use jumpfree::intsets::Multiset;
use jumpfree::predicates::{predecessor_set, Family, FiniteFunction};
use jumpfree::tuples::{order_equivalent, Cube, Tuple};
use rand::Rng;

pub fn t(c: &[u64]) -> Tuple<u64> {
    Tuple::new(c.to_vec()).unwrap()
}

/// Ordered set partitions of k labelled elements: a(n) = sum_i C(n,i) a(n-i).
pub fn fubini(k: usize) -> u64 {
    let mut a = vec![1u64];
    for n in 1..=k {
        let mut binom = 1u64;
        let mut total = 0;
        for i in 1..=n {
            binom = binom * (n - i + 1) as u64 / i as u64;
            total += binom * a[n - i];
        }
        a.push(total);
    }
    a[k]
}

/// Every tuple of `{0..base-1}^k`.
pub fn grid(base: u64, k: usize) -> Vec<Tuple<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u64>| {
                (0..base).map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(|c| t(&c)).collect()
}

/// Groups tuples into classes with the literal pairwise relation only.
pub fn literal_classes(tuples: &[Tuple<u64>]) -> Vec<Vec<Tuple<u64>>> {
    let mut classes: Vec<Vec<Tuple<u64>>> = Vec::new();
    for x in tuples {
        match classes
            .iter_mut()
            .find(|c| order_equivalent(&c[0], x).unwrap())
        {
            Some(c) => c.push(x.clone()),
            None => classes.push(vec![x.clone()]),
        }
    }
    classes
}

/// All p-subsets of `items`, in lexicographic order.
pub fn subsets_of_size(items: &[u64], p: usize) -> Vec<Vec<u64>> {
    let n = items.len();
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == p)
        .map(|m| {
            (0..n)
                .filter(|i| m >> i & 1 == 1)
                .map(|i| items[i])
                .collect::<Vec<_>>()
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Cubes of length p by trying every p-subset of the field.
pub fn brute_cubes(domain: &BTreeSet<Tuple<u64>>, k: usize, p: usize) -> Vec<Vec<u64>> {
    let field: Vec<u64> = domain
        .iter()
        .flat_map(|x| x.coords().to_vec())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    subsets_of_size(&field, p)
        .into_iter()
        .filter(|e| power(e, k).iter().all(|x| domain.contains(x)))
        .collect()
}

pub fn power(e: &[u64], k: usize) -> Vec<Tuple<u64>> {
    let base = e.len() as u64;
    grid(base, k)
        .into_iter()
        .map(|idx| {
            t(&idx
                .coords()
                .iter()
                .map(|&i| e[i as usize])
                .collect::<Vec<_>>())
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruteVerdict {
    Case1(u64),
    Case2,
    Violated,
}

/// Literal per-class classification over E^k, keyed by the class's first
/// tuple in lexicographic order.
pub fn brute_regularity(
    f: &FiniteFunction<u64>,
    e: &[u64],
    k: usize,
) -> (bool, BTreeMap<Tuple<u64>, BruteVerdict>) {
    let min_e = e[0];
    let mut verdicts = BTreeMap::new();
    for class in literal_classes(&power(e, k)) {
        let values: Vec<u64> = class.iter().map(|x| f.get(x).unwrap()).collect();
        let constant = values.iter().all(|&v| v == values[0]);
        let case1 = constant && values[0] < min_e;
        let case2 = class
            .iter()
            .zip(&values)
            .all(|(x, &v)| v >= *x.coords().iter().min().unwrap());
        let verdict = match (case1, case2) {
            (true, _) => BruteVerdict::Case1(values[0]),
            (false, true) => BruteVerdict::Case2,
            (false, false) => BruteVerdict::Violated,
        };
        let key = class.iter().min().unwrap().clone();
        verdicts.insert(key, verdict);
    }
    let overall = verdicts.values().all(|v| *v != BruteVerdict::Violated);
    (overall, verdicts)
}

/// Literal jump-free check using explicit predecessor sets; returns the first
/// violation as (member index a, member index b, x).
pub fn literal_jump_free(fam: &Family<u64>) -> Option<(usize, usize, Tuple<u64>)> {
    let members = fam.members();
    for (ia, fa) in members.iter().enumerate() {
        for (ib, fb) in members.iter().enumerate() {
            let a = fa.domain_set();
            let b = fb.domain_set();
            for x in a.intersection(&b) {
                let ax = predecessor_set(&a, x).unwrap();
                let bx = predecessor_set(&b, x).unwrap();
                let hyp = ax.is_subset(&bx) && ax.iter().all(|y| fa.get(y) == fb.get(y));
                if hyp && fa.get(x).unwrap() < fb.get(x).unwrap() {
                    return Some((ia, ib, x.clone()));
                }
            }
        }
    }
    None
}

/// Sums of all nonempty sub-multisets, enumerated by bitmask over the expanded
/// element list.
pub fn brute_sums(ms: &Multiset<i64>) -> BTreeSet<i128> {
    let items = ms.expanded();
    (1u32..1 << items.len())
        .map(|m| {
            (0..items.len())
                .filter(|i| m >> i & 1 == 1)
                .map(|i| items[i] as i128)
                .sum()
        })
        .collect()
}

pub fn brute_solvable(ms: &Multiset<i64>) -> bool {
    brute_sums(ms).contains(&0)
}

pub fn random_multiset(rng: &mut impl Rng, max_size: usize, lo: i64, hi: i64) -> Multiset<i64> {
    let n = rng.gen_range(0..=max_size);
    (0..n).map(|_| rng.gen_range(lo..=hi)).collect()
}

/// A function on E^k with values drawn below `value_bound`.
pub fn random_function_on_cube(
    rng: &mut impl Rng,
    cube: &Cube<u64>,
    value_bound: u64,
) -> FiniteFunction<u64> {
    FiniteFunction::new(
        "r",
        cube.k(),
        cube.tuples()
            .map(|x| (x, rng.gen_range(0..value_bound)))
            .collect::<Vec<_>>(),
    )
    .unwrap()
}

/// A cube of length 2 or 3 over coordinates below 8.
pub fn random_cube(rng: &mut impl Rng, k: usize) -> Cube<u64> {
    let p = rng.gen_range(2..=3);
    let mut e = BTreeSet::new();
    while e.len() < p {
        e.insert(rng.gen_range(0..8u64));
    }
    Cube::new(e.into_iter().collect(), k).unwrap()
}
