//! Finite functions on N^k and decision procedures over them: reflexivity,
//! predecessor sets, the jump-free condition, bounded fullness and regressive
//! regularity over a cube.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Natural;
use crate::tuples::{field, Cube, OrderType, Tuple};

/// A function from a finite domain D ⊂ N^k into N, carrying an identity label.
///
/// Reflexivity is not enforced so that non-members of T(k) can serve as
/// counterexamples; use [`is_reflexive`] to check it.
///
/// JSON form: `{"id":"f0","k":2,"entries":[[[1,2],1], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(
    try_from = "RawFunction<N>",
    into = "RawFunction<N>",
    bound = "N: Natural"
)]
pub struct FiniteFunction<N: Natural> {
    id: String,
    k: usize,
    entries: BTreeMap<Tuple<N>, N>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "N: Natural")]
struct RawFunction<N: Natural> {
    id: String,
    k: usize,
    entries: Vec<(Tuple<N>, N)>,
}

impl<N: Natural> TryFrom<RawFunction<N>> for FiniteFunction<N> {
    type Error = Error;

    fn try_from(raw: RawFunction<N>) -> Result<Self> {
        FiniteFunction::new(raw.id, raw.k, raw.entries)
    }
}

impl<N: Natural> From<FiniteFunction<N>> for RawFunction<N> {
    fn from(f: FiniteFunction<N>) -> Self {
        RawFunction {
            id: f.id,
            k: f.k,
            entries: f.entries.into_iter().collect(),
        }
    }
}

impl<N: Natural> FiniteFunction<N> {
    /// Rejects entries of the wrong arity and repeated domain tuples.
    pub fn new(
        id: impl Into<String>,
        k: usize,
        entries: impl IntoIterator<Item = (Tuple<N>, N)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (x, v) in entries {
            if x.k() != k {
                return Err(Error::ArityMismatch {
                    expected: k,
                    found: x.k(),
                });
            }
            if map.insert(x.clone(), v).is_some() {
                return Err(Error::DuplicateTuple(x.to_string()));
            }
        }
        Ok(FiniteFunction {
            id: id.into(),
            k,
            entries: map,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, x: &Tuple<N>) -> Option<N> {
        self.entries.get(x).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Tuple<N>, N)> {
        self.entries.iter().map(|(x, &v)| (x, v))
    }

    pub fn domain(&self) -> impl Iterator<Item = &Tuple<N>> {
        self.entries.keys()
    }

    pub fn domain_set(&self) -> BTreeSet<Tuple<N>> {
        self.entries.keys().cloned().collect()
    }

    /// Overwrites the value at an existing domain point.
    pub fn set(&mut self, x: &Tuple<N>, value: N) -> Result<()> {
        match self.entries.get_mut(x) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(Error::NotInDomain(x.to_string())),
        }
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }
}

/// An ordered finite collection of functions sharing one arity, with unique ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFamily<N>", into = "RawFamily<N>", bound = "N: Natural")]
pub struct Family<N: Natural> {
    k: usize,
    members: Vec<FiniteFunction<N>>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "N: Natural")]
struct RawFamily<N: Natural> {
    k: usize,
    members: Vec<FiniteFunction<N>>,
}

impl<N: Natural> TryFrom<RawFamily<N>> for Family<N> {
    type Error = Error;

    fn try_from(raw: RawFamily<N>) -> Result<Self> {
        Family::new(raw.k, raw.members)
    }
}

impl<N: Natural> From<Family<N>> for RawFamily<N> {
    fn from(f: Family<N>) -> Self {
        RawFamily {
            k: f.k,
            members: f.members,
        }
    }
}

impl<N: Natural> Family<N> {
    pub fn new(k: usize, members: Vec<FiniteFunction<N>>) -> Result<Self> {
        let mut ids = BTreeSet::new();
        for m in &members {
            if m.k() != k {
                return Err(Error::ArityMismatch {
                    expected: k,
                    found: m.k(),
                });
            }
            if !ids.insert(m.id()) {
                return Err(Error::DuplicateId(m.id().to_owned()));
            }
        }
        Ok(Family { k, members })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn members(&self) -> &[FiniteFunction<N>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&FiniteFunction<N>> {
        self.members.iter().find(|m| m.id() == id)
    }

    /// Removes the member with the given id, returning it.
    pub fn remove(&mut self, id: &str) -> Option<FiniteFunction<N>> {
        let idx = self.members.iter().position(|m| m.id() == id)?;
        Some(self.members.remove(idx))
    }
}

/// True iff every value of `f` is a coordinate of some domain tuple.
pub fn is_reflexive<N: Natural>(f: &FiniteFunction<N>) -> bool {
    let fld = field(f.domain()).expect("function entries share one arity");
    f.entries().all(|(_, v)| fld.contains(&v))
}

/// D_x = { z in D : max(z) < max(x) }. Requires `x` in `domain`.
pub fn predecessor_set<N: Natural>(
    domain: &BTreeSet<Tuple<N>>,
    x: &Tuple<N>,
) -> Result<BTreeSet<Tuple<N>>> {
    if !domain.contains(x) {
        return Err(Error::NotInDomain(x.to_string()));
    }
    let bound = x.max_coord();
    Ok(domain
        .iter()
        .filter(|z| z.max_coord() < bound)
        .cloned()
        .collect())
}

/// A concrete refutation of the jump-free implication for the ordered pair
/// (`id_a`, `id_b`) at `x`: the hypotheses hold but `value_a < value_b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "N: Natural")]
pub struct JumpFreeWitness<N: Natural> {
    pub id_a: String,
    pub id_b: String,
    pub x: Tuple<N>,
    pub value_a: N,
    pub value_b: N,
}

/// Checks the ordered pair (`fa`, `fb`): for every x in A ∩ B with A_x ⊆ B_x
/// and `fa = fb` on A_x, requires `fa(x) >= fb(x)`.
///
/// Returns the lexicographically first violating x. An empty A_x satisfies the
/// hypotheses vacuously.
pub fn jump_free_violation<N: Natural>(
    fa: &FiniteFunction<N>,
    fb: &FiniteFunction<N>,
) -> Result<Option<JumpFreeWitness<N>>> {
    if fa.k() != fb.k() {
        return Err(Error::ArityMismatch {
            expected: fa.k(),
            found: fb.k(),
        });
    }
    // A's entries sorted by max so each A_x is a prefix.
    let mut by_max: Vec<(N, &Tuple<N>, N)> =
        fa.entries().map(|(y, v)| (y.max_coord(), y, v)).collect();
    by_max.sort_by_key(|e| e.0);

    for (x, va) in fa.entries() {
        let Some(vb) = fb.get(x) else { continue };
        if va >= vb {
            continue;
        }
        let bound = x.max_coord();
        let end = by_max.partition_point(|e| e.0 < bound);
        // y in A_x must lie in B (then automatically in B_x) with equal value.
        let hypotheses = by_max[..end]
            .iter()
            .all(|&(_, y, vy)| fb.get(y) == Some(vy));
        if hypotheses {
            return Ok(Some(JumpFreeWitness {
                id_a: fa.id().to_owned(),
                id_b: fb.id().to_owned(),
                x: x.clone(),
                value_a: va,
                value_b: vb,
            }));
        }
    }
    Ok(None)
}

/// Applies [`jump_free_violation`] to every ordered pair of members, self-pairs
/// included, and returns the first witness in (first index, second index, x)
/// order. Pairs are checked in parallel; the result does not depend on scheduling.
pub fn is_jump_free_family<N: Natural>(fam: &Family<N>) -> Option<JumpFreeWitness<N>> {
    let members = fam.members();
    let n = members.len();
    (0..n * n).into_par_iter().find_map_first(|idx| {
        let (a, b) = (&members[idx / n], &members[idx % n]);
        jump_free_violation(a, b).expect("family members share one arity")
    })
}

/// Bounded fullness: the first domain of `universe` that is the domain of no
/// member, or `None` when every universe domain is covered.
pub fn is_full_over<N: Natural>(
    fam: &Family<N>,
    universe: &[BTreeSet<Tuple<N>>],
) -> Option<BTreeSet<Tuple<N>>> {
    let covered: BTreeSet<BTreeSet<Tuple<N>>> = fam
        .members()
        .iter()
        .map(FiniteFunction::domain_set)
        .collect();
    universe.iter().find(|d| !covered.contains(*d)).cloned()
}

/// Per-class outcome of the regressive regularity test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case", bound = "N: Natural")]
pub enum Verdict<N: Natural> {
    /// Constant on the class with a value below min(E).
    Case1 { value: N },
    /// Every tuple of the class has f(x) >= min(x).
    Case2,
    /// Neither case holds.
    Violated {
        /// A tuple of the class with f(x) < min(x).
        tuple: Tuple<N>,
        value: N,
        case1_failure: Case1Failure<N>,
    },
}

impl<N: Natural> Verdict<N> {
    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated { .. })
    }
}

/// Why the constant-below-min(E) case fails for a class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case", bound = "N: Natural")]
pub enum Case1Failure<N: Natural> {
    NotConstant {
        first: Tuple<N>,
        first_value: N,
        second: Tuple<N>,
        second_value: N,
    },
    NotBelowMin {
        tuple: Tuple<N>,
        value: N,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "N: Natural")]
pub struct RegularityReport<N: Natural> {
    pub per_class: BTreeMap<OrderType, Verdict<N>>,
    pub overall: bool,
}

impl<N: Natural> RegularityReport<N> {
    pub fn first_violation(&self) -> Option<(&OrderType, &Verdict<N>)> {
        self.per_class.iter().find(|(_, v)| v.is_violated())
    }
}

/// Classifies `f` over E^k, one verdict per order type realized in E^k.
///
/// Requires k >= 2, |E| >= 2 and E^k ⊆ domain(f). Values are not required to
/// be reflexive.
pub fn regressive_regularity<N: Natural>(
    f: &FiniteFunction<N>,
    cube: &Cube<N>,
) -> Result<RegularityReport<N>> {
    check_cube_in_domain(f, cube)?;
    let min_e = cube.min_element();

    let mut classes: BTreeMap<OrderType, Vec<(Tuple<N>, N)>> = BTreeMap::new();
    for x in cube.tuples() {
        let v = f.get(&x).expect("cube checked against domain");
        classes.entry(x.order_signature()).or_default().push((x, v));
    }

    let per_class: BTreeMap<OrderType, Verdict<N>> = classes
        .into_iter()
        .map(|(ot, members)| {
            let verdict = classify_class(&members, min_e);
            (ot, verdict)
        })
        .collect();
    let overall = per_class.values().all(|v| !v.is_violated());
    Ok(RegularityReport { per_class, overall })
}

fn classify_class<N: Natural>(members: &[(Tuple<N>, N)], min_e: N) -> Verdict<N> {
    let (first, first_value) = &members[0];
    let mismatch = members.iter().find(|(_, v)| v != first_value);
    let case1_failure = match mismatch {
        Some((second, second_value)) => Some(Case1Failure::NotConstant {
            first: first.clone(),
            first_value: *first_value,
            second: second.clone(),
            second_value: *second_value,
        }),
        None if *first_value >= min_e => Some(Case1Failure::NotBelowMin {
            tuple: first.clone(),
            value: *first_value,
        }),
        None => None,
    };
    let Some(case1_failure) = case1_failure else {
        return Verdict::Case1 {
            value: *first_value,
        };
    };
    match members.iter().find(|(x, v)| *v < x.min_coord()) {
        None => Verdict::Case2,
        Some((tuple, value)) => Verdict::Violated {
            tuple: tuple.clone(),
            value: *value,
            case1_failure,
        },
    }
}

/// Shared preconditions for operations over `f` restricted to E^k.
pub(crate) fn check_cube_in_domain<N: Natural>(
    f: &FiniteFunction<N>,
    cube: &Cube<N>,
) -> Result<()> {
    if f.k() < 2 {
        return Err(Error::TooSmall {
            what: "arity k",
            min: 2,
            got: f.k(),
        });
    }
    if cube.p() < 2 {
        return Err(Error::TooSmall {
            what: "cube length p",
            min: 2,
            got: cube.p(),
        });
    }
    if cube.k() != f.k() {
        return Err(Error::ArityMismatch {
            expected: f.k(),
            found: cube.k(),
        });
    }
    if cube.tuples().any(|x| f.get(&x).is_none()) {
        return Err(Error::CubeNotInDomain {
            function: f.id().to_owned(),
            cube: cube.to_string(),
        });
    }
    Ok(())
}
