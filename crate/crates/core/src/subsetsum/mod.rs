//! Target-zero subset sum over integer multisets.
//!
//! A multiset is solvable when some *nonempty* sub-multiset sums to zero. Three
//! solvers return certificates: an exhaustive enumerator (the oracle), a
//! reachable-sums table with parent links, and a meet-in-the-middle split.

mod experiment;

pub use experiment::{run_corollary_experiment, ExperimentOutcome, ExperimentReport, SolveTimings};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intsets::Multiset;
use crate::scalar::Integer;

/// Largest multiset (counting multiplicity) the exhaustive solver accepts.
pub const EXHAUSTIVE_MAX_SIZE: usize = 24;
/// Largest sum of |value| * multiplicity the table solver accepts.
pub const DP_MAX_MAGNITUDE: i128 = 10_000_000;
/// Largest count of nonzero elements the meet-in-the-middle solver accepts.
pub const MITM_MAX_SIZE: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exhaustive,
    #[default]
    Dp,
    Mitm,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Exhaustive, Method::Dp, Method::Mitm];

    pub fn name(self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::Dp => "dp",
            Method::Mitm => "mitm",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown solver method `{s}`"))
    }
}

/// A nonempty sub-multiset and its sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "Z: Integer")]
pub struct SubsetCertificate<Z: Integer> {
    pub chosen: Multiset<Z>,
    pub sum: i128,
}

impl<Z: Integer> SubsetCertificate<Z> {
    fn from_chosen(chosen: Multiset<Z>) -> Self {
        let sum = chosen.sum();
        SubsetCertificate { chosen, sum }
    }

    /// Nonempty, within `source`'s multiplicities, and summing to zero.
    pub fn is_valid_for(&self, source: &Multiset<Z>) -> bool {
        !self.chosen.is_empty()
            && self.chosen.is_submultiset_of(source)
            && self.chosen.sum() == 0
            && self.sum == 0
    }
}

/// Decides target-zero solvability of `ms`, returning a certificate when one
/// exists. Guard violations are reported as [`Error::Capacity`].
pub fn solve_subset_sum<Z: Integer>(
    ms: &Multiset<Z>,
    method: Method,
) -> Result<Option<SubsetCertificate<Z>>> {
    match method {
        Method::Exhaustive => exhaustive(ms),
        Method::Dp => dp(ms),
        Method::Mitm => mitm(ms),
    }
}

fn exhaustive<Z: Integer>(ms: &Multiset<Z>) -> Result<Option<SubsetCertificate<Z>>> {
    if ms.total_size() > EXHAUSTIVE_MAX_SIZE {
        return Err(Error::Capacity {
            method: "exhaustive",
            detail: format!(
                "{} elements exceed the limit of {EXHAUSTIVE_MAX_SIZE}",
                ms.total_size()
            ),
        });
    }
    let distinct: Vec<(Z, usize)> = ms.iter().collect();
    let mut taken = vec![0usize; distinct.len()];
    let mut sum = 0i128;
    // Mixed-radix counter over (taken_0, taken_1, ...); every state after the
    // first increment is nonempty.
    loop {
        let mut j = 0;
        loop {
            let Some(&(v, m)) = distinct.get(j) else {
                return Ok(None);
            };
            if taken[j] < m {
                taken[j] += 1;
                sum += v.wide();
                break;
            }
            sum -= v.wide() * taken[j] as i128;
            taken[j] = 0;
            j += 1;
        }
        if sum == 0 {
            let mut chosen = Multiset::new();
            for (&(v, _), &c) in distinct.iter().zip(&taken) {
                chosen.insert_n(v, c);
            }
            return Ok(Some(SubsetCertificate::from_chosen(chosen)));
        }
    }
}

fn zero_certificate<Z: Integer>(ms: &Multiset<Z>) -> Option<SubsetCertificate<Z>> {
    (ms.multiplicity(Z::zero()) > 0)
        .then(|| SubsetCertificate::from_chosen([Z::zero()].into_iter().collect()))
}

fn certificate_from_items<Z: Integer>(
    items: &[Z],
    picked: impl IntoIterator<Item = usize>,
) -> SubsetCertificate<Z> {
    SubsetCertificate::from_chosen(picked.into_iter().map(|i| items[i]).collect())
}

fn dp<Z: Integer>(ms: &Multiset<Z>) -> Result<Option<SubsetCertificate<Z>>> {
    if let Some(c) = zero_certificate(ms) {
        return Ok(Some(c));
    }
    let items = ms.expanded();
    let table = ReachableSums::build_items(&items, true)?;
    Ok(table
        .witness(0)
        .map(|picked| certificate_from_items(&items, picked)))
}

const UNREACHED: u32 = u32::MAX;

/// Table of sums attained by nonempty sub-multisets, indexed over the offset
/// range `[sum of negatives, sum of positives]`.
///
/// Each reachable sum records the item that first reached it and whether that
/// item reached it alone; the predecessor sum was reachable with strictly
/// earlier items, so following the links yields distinct items.
#[derive(Debug, Clone)]
pub struct ReachableSums {
    lowest: i128,
    first_item: Vec<u32>,
    from_empty: Vec<bool>,
    values: Vec<i128>,
}

impl ReachableSums {
    pub fn build<Z: Integer>(ms: &Multiset<Z>) -> Result<Self> {
        Self::build_items(&ms.expanded(), false)
    }

    fn build_items<Z: Integer>(items: &[Z], stop_at_zero: bool) -> Result<Self> {
        let values: Vec<i128> = items.iter().map(|v| v.wide()).collect();
        let magnitude: i128 = values.iter().map(|v| v.abs()).sum();
        if magnitude > DP_MAX_MAGNITUDE {
            return Err(Error::Capacity {
                method: "dp",
                detail: format!("sum of magnitudes {magnitude} exceeds {DP_MAX_MAGNITUDE}"),
            });
        }
        if values.len() >= UNREACHED as usize {
            return Err(Error::Capacity {
                method: "dp",
                detail: format!("{} items", values.len()),
            });
        }
        let lowest: i128 = values.iter().filter(|&&v| v < 0).sum();
        let highest: i128 = values.iter().filter(|&&v| v > 0).sum();
        let width = (highest - lowest + 1) as usize;
        let mut first_item = vec![UNREACHED; width];
        let mut from_empty = vec![false; width];
        let slot = |s: i128| (s - lowest) as usize;

        // Bounds of the sums reached so far.
        let mut reach: Option<(i128, i128)> = None;
        for (i, &v) in values.iter().enumerate() {
            let i = i as u32;
            if let Some((lo, hi)) = reach {
                for s in lo..=hi {
                    let from = first_item[slot(s)];
                    if from == UNREACHED || from >= i {
                        continue;
                    }
                    let t = slot(s + v);
                    if first_item[t] == UNREACHED {
                        first_item[t] = i;
                    }
                }
            }
            if first_item[slot(v)] == UNREACHED {
                first_item[slot(v)] = i;
                from_empty[slot(v)] = true;
            }
            reach = Some(match reach {
                None => (v, v),
                Some((lo, hi)) => (lo.min(lo + v).min(v), hi.max(hi + v).max(v)),
            });
            if stop_at_zero && first_item[slot(0)] != UNREACHED {
                break;
            }
        }
        Ok(ReachableSums {
            lowest,
            first_item,
            from_empty,
            values,
        })
    }

    fn index(&self, s: i128) -> Option<usize> {
        let idx = s.checked_sub(self.lowest)?;
        (0..self.first_item.len() as i128)
            .contains(&idx)
            .then_some(idx as usize)
    }

    pub fn is_reachable(&self, s: i128) -> bool {
        self.index(s)
            .is_some_and(|i| self.first_item[i] != UNREACHED)
    }

    /// All reachable sums, ascending.
    pub fn sums(&self) -> impl Iterator<Item = i128> + '_ {
        self.first_item
            .iter()
            .enumerate()
            .filter(|(_, &f)| f != UNREACHED)
            .map(|(i, _)| self.lowest + i as i128)
    }

    /// Item indices of a nonempty subset summing to `s`.
    pub fn witness(&self, s: i128) -> Option<Vec<usize>> {
        let mut idx = self.index(s)?;
        if self.first_item[idx] == UNREACHED {
            return None;
        }
        let mut picked = Vec::new();
        let mut current = s;
        loop {
            let item = self.first_item[idx] as usize;
            picked.push(item);
            if self.from_empty[idx] {
                return Some(picked);
            }
            current -= self.values[item];
            idx = self.index(current).expect("predecessor in range");
        }
    }
}

fn mitm<Z: Integer>(ms: &Multiset<Z>) -> Result<Option<SubsetCertificate<Z>>> {
    if let Some(c) = zero_certificate(ms) {
        return Ok(Some(c));
    }
    let items = ms.expanded();
    if items.len() > MITM_MAX_SIZE {
        return Err(Error::Capacity {
            method: "mitm",
            detail: format!(
                "{} elements exceed the limit of {MITM_MAX_SIZE}",
                items.len()
            ),
        });
    }
    let values: Vec<i128> = items.iter().map(|v| v.wide()).collect();
    let (left, right) = values.split_at(values.len() / 2);
    let left_sums = half_sums(left);
    let right_sums = half_sums(right);

    let to_indices = |lmask: u64, rmask: u64| {
        let l = (0..left.len()).filter(move |b| lmask >> b & 1 == 1);
        let r = (0..right.len())
            .filter(move |b| rmask >> b & 1 == 1)
            .map(|b| b + left.len());
        l.chain(r)
    };

    // A zero-sum subset lying in one half alone.
    if let Some(&lmask) = left_sums.get(&0) {
        return Ok(Some(certificate_from_items(&items, to_indices(lmask, 0))));
    }
    if let Some(&rmask) = right_sums.get(&0) {
        return Ok(Some(certificate_from_items(&items, to_indices(0, rmask))));
    }
    // Cross matches l + r = 0, smallest |l| first.
    let mut keys: Vec<i128> = left_sums.keys().copied().collect();
    keys.sort_unstable_by_key(|&l| (l.abs(), l));
    for l in keys {
        if let Some(&rmask) = right_sums.get(&-l) {
            let lmask = left_sums[&l];
            return Ok(Some(certificate_from_items(
                &items,
                to_indices(lmask, rmask),
            )));
        }
    }
    Ok(None)
}

/// Sum of every nonempty subset of `half`, mapped to its smallest mask.
fn half_sums(half: &[i128]) -> HashMap<i128, u64> {
    let count = 1usize << half.len();
    let mut sums = vec![0i128; count];
    let mut best: HashMap<i128, u64> = HashMap::with_capacity(count);
    for mask in 1..count {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = sums[mask & (mask - 1)] + half[low];
        best.entry(sums[mask]).or_insert(mask as u64);
    }
    best
}
