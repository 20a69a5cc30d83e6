//! Points of N^k, their order types, fields of tuple sets and cube detection.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Natural;

/// A point of N^k. The arity is the number of coordinates and is at least one.
///
/// Ordering is lexicographic on coordinates, which is the canonical scan order
/// for every search in this crate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<N>", into = "Vec<N>", bound = "N: Natural")]
pub struct Tuple<N: Natural>(Vec<N>);

impl<N: Natural> Tuple<N> {
    pub fn new(coords: Vec<N>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyTuple);
        }
        Ok(Tuple(coords))
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[N] {
        &self.0
    }

    pub fn min_coord(&self) -> N {
        self.min_max().0
    }

    pub fn max_coord(&self) -> N {
        self.min_max().1
    }

    /// Coordinate-wise minimum and maximum.
    pub fn min_max(&self) -> (N, N) {
        let first = self.0[0];
        self.0
            .iter()
            .fold((first, first), |(lo, hi), &c| (lo.min(c), hi.max(c)))
    }

    /// Dense-rank signature: each coordinate is replaced by the number of
    /// distinct coordinate values strictly below it.
    pub fn order_signature(&self) -> OrderType {
        let mut distinct = self.0.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let ranks = self
            .0
            .iter()
            .map(|c| distinct.binary_search(c).expect("coordinate is present"))
            .collect();
        OrderType(ranks)
    }
}

impl<N: Natural> TryFrom<Vec<N>> for Tuple<N> {
    type Error = Error;

    fn try_from(coords: Vec<N>) -> Result<Self> {
        Tuple::new(coords)
    }
}

impl<N: Natural> From<Tuple<N>> for Vec<N> {
    fn from(t: Tuple<N>) -> Self {
        t.0
    }
}

impl<N: Natural> fmt::Display for Tuple<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parenthesized(f, &self.0)
    }
}

fn write_parenthesized<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    f.write_str("(")?;
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{item}")?;
    }
    f.write_str(")")
}

/// Literal order-equivalence test: the index sets `{(i,j) | x_i < x_j}` and
/// `{(i,j) | x_i = x_j}` must coincide for both tuples.
///
/// This does not go through [`Tuple::order_signature`] and serves as its oracle.
pub fn order_equivalent<N: Natural>(x: &Tuple<N>, y: &Tuple<N>) -> Result<bool> {
    if x.k() != y.k() {
        return Err(Error::ArityMismatch {
            expected: x.k(),
            found: y.k(),
        });
    }
    let index_sets = |t: &Tuple<N>| {
        let c = t.coords();
        let mut less = BTreeSet::new();
        let mut equal = BTreeSet::new();
        for i in 0..c.len() {
            for j in 0..c.len() {
                if c[i] < c[j] {
                    less.insert((i, j));
                }
                if c[i] == c[j] {
                    equal.insert((i, j));
                }
            }
        }
        (less, equal)
    };
    Ok(index_sets(x) == index_sets(y))
}

/// Canonical representative of an order-equivalence class: a dense-rank tuple
/// using every rank in `0..r` for some `r <= k`.
///
/// Serializes as the string `"(r0,r1,...)"` so it can key JSON objects.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderType(Vec<usize>);

impl OrderType {
    /// Validates the dense-rank invariant.
    pub fn new(ranks: Vec<usize>) -> Option<Self> {
        if ranks.is_empty() {
            return None;
        }
        let used: BTreeSet<usize> = ranks.iter().copied().collect();
        let dense = used.iter().copied().eq(0..used.len());
        dense.then_some(OrderType(ranks))
    }

    pub fn ranks(&self) -> &[usize] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for OrderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parenthesized(f, &self.0)
    }
}

impl FromStr for OrderType {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| format!("order type `{s}` must be parenthesized"))?;
        let ranks = inner
            .split(',')
            .map(|r| r.trim().parse::<usize>().map_err(|e| e.to_string()))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        OrderType::new(ranks).ok_or_else(|| format!("`{s}` is not a dense rank tuple"))
    }
}

impl Serialize for OrderType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for OrderType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Every order type of k-tuples, in lexicographic order.
///
/// The classes are exactly the signatures realized over `{0..k-1}^k`, since a
/// tuple has at most k distinct values.
pub fn enumerate_order_types(k: usize) -> Vec<OrderType> {
    if k == 0 {
        return Vec::new();
    }
    let mut seen = BTreeSet::new();
    let mut digits = vec![0usize; k];
    loop {
        let t = Tuple(digits.iter().map(|&d| d as u64).collect());
        seen.insert(t.order_signature());
        // odometer increment over base k
        let mut i = k;
        loop {
            if i == 0 {
                return seen.into_iter().collect();
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < k {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Set of all coordinates appearing in `tuples`.
pub fn field<'a, N, I>(tuples: I) -> Result<BTreeSet<N>>
where
    N: Natural,
    I: IntoIterator<Item = &'a Tuple<N>>,
{
    let mut out = BTreeSet::new();
    let mut arity = None;
    for t in tuples {
        match arity {
            None => arity = Some(t.k()),
            Some(k) if k != t.k() => {
                return Err(Error::ArityMismatch {
                    expected: k,
                    found: t.k(),
                })
            }
            Some(_) => {}
        }
        out.extend(t.coords().iter().copied());
    }
    Ok(out)
}

/// The Cartesian power E^k of a finite set E of naturals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCube<N>", bound = "N: Natural")]
pub struct Cube<N: Natural> {
    elements: Vec<N>,
    k: usize,
}

#[derive(Deserialize)]
#[serde(bound = "N: Natural")]
struct RawCube<N: Natural> {
    elements: Vec<N>,
    k: usize,
}

impl<N: Natural> TryFrom<RawCube<N>> for Cube<N> {
    type Error = Error;

    fn try_from(raw: RawCube<N>) -> Result<Self> {
        Cube::new(raw.elements, raw.k)
    }
}

impl<N: Natural> Cube<N> {
    /// `elements` must be nonempty and strictly increasing; `k >= 1`.
    pub fn new(elements: Vec<N>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::TooSmall {
                what: "arity k",
                min: 1,
                got: 0,
            });
        }
        if elements.is_empty() || elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidCube);
        }
        Ok(Cube { elements, k })
    }

    pub fn elements(&self) -> &[N] {
        &self.elements
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Length p = |E|.
    pub fn p(&self) -> usize {
        self.elements.len()
    }

    pub fn min_element(&self) -> N {
        self.elements[0]
    }

    pub fn contains(&self, x: &Tuple<N>) -> bool {
        x.k() == self.k
            && x.coords()
                .iter()
                .all(|c| self.elements.binary_search(c).is_ok())
    }

    /// All p^k tuples of E^k in lexicographic order.
    pub fn tuples(&self) -> impl Iterator<Item = Tuple<N>> + '_ {
        PowerIter::new(&self.elements, self.k)
    }
}

impl<N: Natural> fmt::Display for Cube<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}^{}", self.k)
    }
}

/// Lexicographic iterator over `base^k`.
struct PowerIter<'a, N> {
    base: &'a [N],
    digits: Option<Vec<usize>>,
}

impl<'a, N> PowerIter<'a, N> {
    fn new(base: &'a [N], k: usize) -> Self {
        let digits = (!base.is_empty() && k > 0).then(|| vec![0; k]);
        PowerIter { base, digits }
    }
}

impl<N: Natural> Iterator for PowerIter<'_, N> {
    type Item = Tuple<N>;

    fn next(&mut self) -> Option<Tuple<N>> {
        let digits = self.digits.as_mut()?;
        let out = Tuple(digits.iter().map(|&d| self.base[d]).collect());
        let mut i = digits.len();
        loop {
            if i == 0 {
                self.digits = None;
                break;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < self.base.len() {
                break;
            }
            digits[i] = 0;
        }
        Some(out)
    }
}

/// Every p-element `E ⊆ field(D)` with `E^k ⊆ D`, in lexicographic order of E.
///
/// The arity is taken from the tuples of `domain`; an empty domain has no cubes.
/// A partial E is abandoned as soon as some tuple over it is missing from D.
pub fn cubes_in<N: Natural>(domain: &BTreeSet<Tuple<N>>, p: usize) -> Vec<Cube<N>> {
    let Some(k) = domain.iter().next().map(Tuple::k) else {
        return Vec::new();
    };
    if p == 0 {
        return Vec::new();
    }
    // Only coordinates whose diagonal point is present can belong to a cube.
    let candidates: Vec<N> = field(domain.iter().filter(|t| t.k() == k))
        .expect("arity filtered")
        .into_iter()
        .filter(|&c| domain.contains(&Tuple(vec![c; k])))
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(p);
    extend_cubes(domain, k, p, &candidates, 0, &mut chosen, &mut out);
    out
}

fn extend_cubes<N: Natural>(
    domain: &BTreeSet<Tuple<N>>,
    k: usize,
    p: usize,
    candidates: &[N],
    start: usize,
    chosen: &mut Vec<N>,
    out: &mut Vec<Cube<N>>,
) {
    if chosen.len() == p {
        out.push(Cube {
            elements: chosen.clone(),
            k,
        });
        return;
    }
    let remaining = p - chosen.len();
    for idx in start..candidates.len() {
        if candidates.len() - idx < remaining {
            break;
        }
        let e = candidates[idx];
        chosen.push(e);
        if new_tuples_present(domain, k, chosen) {
            extend_cubes(domain, k, p, candidates, idx + 1, chosen, out);
        }
        chosen.pop();
    }
}

/// Checks the tuples of `chosen^k` that use the last chosen element.
fn new_tuples_present<N: Natural>(domain: &BTreeSet<Tuple<N>>, k: usize, chosen: &[N]) -> bool {
    let newest = *chosen.last().expect("nonempty");
    PowerIter::new(chosen, k)
        .filter(|t| t.coords().contains(&newest))
        .all(|t| domain.contains(&t))
}
