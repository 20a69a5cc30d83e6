//! Bounded universes of finite domains, rule-generated function families over
//! them, and the witness search for a regressively regular (f, E) pair.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::predicates::{regressive_regularity, Family, FiniteFunction, RegularityReport};
use crate::scalar::Natural;
use crate::tuples::{cubes_in, field, Cube, Tuple};

pub type Domain<N> = BTreeSet<Tuple<N>>;

/// Finite stand-in for "every finite subset of N^k": coordinates in
/// `0..grid_bound`, domains of at most `max_domain_size` points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniverseSpec {
    pub k: usize,
    pub grid_bound: usize,
    pub max_domain_size: usize,
    pub sample_count: usize,
    pub seed: u64,
    pub include_all_cubes: bool,
}

impl UniverseSpec {
    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::InvalidSpec("k must be at least 1".into()));
        }
        if self.grid_bound < 2 {
            return Err(Error::InvalidSpec(format!(
                "grid_bound must be at least 2, got {}",
                self.grid_bound
            )));
        }
        if self.max_domain_size < 1 {
            return Err(Error::InvalidSpec(
                "max_domain_size must be at least 1".into(),
            ));
        }
        if u32::try_from(self.k)
            .ok()
            .and_then(|k| self.grid_bound.checked_pow(k))
            .is_none()
        {
            return Err(Error::InvalidSpec("grid_bound^k overflows".into()));
        }
        Ok(())
    }
}

/// Builds the universe: every cube E^k with E ⊆ {0..n-1}, |E| >= 2 and
/// |E|^k <= m (when requested), ordered by |E| then lexicographically, followed
/// by `sample_count` seeded random domains of size at most m. Duplicates keep
/// their first position.
pub fn build_universe<N: Natural>(spec: &UniverseSpec) -> Result<Vec<Domain<N>>> {
    spec.validate()?;
    let coord =
        |i: usize| N::from_index(i).ok_or_else(|| Error::Overflow(format!("grid coordinate {i}")));
    let grid: Vec<N> = (0..spec.grid_bound).map(coord).collect::<Result<_>>()?;

    let mut out: Vec<Domain<N>> = Vec::new();
    let mut seen: HashSet<Domain<N>> = HashSet::new();
    let mut push = |d: Domain<N>, out: &mut Vec<Domain<N>>| {
        if seen.insert(d.clone()) {
            out.push(d);
        }
    };

    if spec.include_all_cubes {
        let mut size = 2;
        while size <= spec.grid_bound && fits(size, spec.k, spec.max_domain_size) {
            for subset in combinations(spec.grid_bound, size) {
                let elements = subset.iter().map(|&i| grid[i]).collect();
                let cube = Cube::new(elements, spec.k)?;
                push(cube.tuples().collect(), &mut out);
            }
            size += 1;
        }
    }

    let points = spec.grid_bound.pow(spec.k as u32);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..spec.sample_count {
        let target = rng.gen_range(1..=spec.max_domain_size.min(points));
        let mut d = Domain::new();
        while d.len() < target {
            let coords = (0..spec.k)
                .map(|_| grid[rng.gen_range(0..spec.grid_bound)])
                .collect();
            d.insert(Tuple::new(coords)?);
        }
        push(d, &mut out);
    }
    Ok(out)
}

fn fits(size: usize, k: usize, limit: usize) -> bool {
    u32::try_from(k)
        .ok()
        .and_then(|k| size.checked_pow(k))
        .is_some_and(|n| n <= limit)
}

/// All `size`-subsets of `0..n` as increasing index vectors, lexicographic.
fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, size, 0, &mut Vec::new(), &mut out);
    out
}

/// Rule used to materialize one function per universe domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    /// f_D(x) = max(x)
    Max,
    /// f_D(x) = min(x)
    Min,
    /// f_D(x) = min(field(D_x ∪ {x}))
    Predmin,
    /// f_D(x) = min(field(D)); not jump-free in general.
    Constmin,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::Max,
        FamilyKind::Min,
        FamilyKind::Predmin,
        FamilyKind::Constmin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Max => "max",
            FamilyKind::Min => "min",
            FamilyKind::Predmin => "predmin",
            FamilyKind::Constmin => "constmin",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown family kind `{s}`"))
    }
}

/// Materializes the rule on one domain.
pub fn rule_function<N: Natural>(
    kind: FamilyKind,
    id: impl Into<String>,
    domain: &Domain<N>,
) -> Result<FiniteFunction<N>> {
    let k = domain
        .iter()
        .next()
        .map(Tuple::k)
        .ok_or(Error::EmptyUniverse)?;
    let domain_min = field(domain.iter())?.first().copied();
    let entries = domain.iter().map(|x| {
        let value = match kind {
            FamilyKind::Max => x.max_coord(),
            FamilyKind::Min => x.min_coord(),
            FamilyKind::Constmin => domain_min.expect("nonempty domain"),
            FamilyKind::Predmin => {
                let bound = x.max_coord();
                domain
                    .iter()
                    .filter(|z| z.max_coord() < bound)
                    .map(Tuple::min_coord)
                    .fold(x.min_coord(), N::min)
            }
        };
        (x.clone(), value)
    });
    FiniteFunction::new(id, k, entries)
}

/// One member per universe domain, ids `f0, f1, ...` in universe order.
pub fn gen_family<N: Natural>(kind: FamilyKind, universe: &[Domain<N>]) -> Result<Family<N>> {
    let k = universe
        .iter()
        .flat_map(|d| d.iter())
        .map(Tuple::k)
        .next()
        .ok_or(Error::EmptyUniverse)?;
    let members = universe
        .iter()
        .enumerate()
        .map(|(i, d)| rule_function(kind, format!("f{i}"), d))
        .collect::<Result<Vec<_>>>()?;
    Family::new(k, members)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub functions_examined: usize,
    pub cubes_examined: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "N: Natural")]
pub struct WitnessResult<N: Natural> {
    pub function_id: String,
    pub cube: Cube<N>,
    pub report: RegularityReport<N>,
    pub search_stats: SearchStats,
}

/// Scans members in family order and each member's p-cubes in lexicographic
/// order; returns the first (f, E) that is regressively regular.
///
/// Returns the search statistics alongside; `None` means the bounded family
/// was exhausted, which says nothing about the unbounded statement.
pub fn find_regressively_regular_witness<N: Natural>(
    fam: &Family<N>,
    p: usize,
) -> Result<(Option<WitnessResult<N>>, SearchStats)> {
    if fam.k() < 2 {
        return Err(Error::TooSmall {
            what: "arity k",
            min: 2,
            got: fam.k(),
        });
    }
    if p < 2 {
        return Err(Error::TooSmall {
            what: "cube length p",
            min: 2,
            got: p,
        });
    }
    let mut stats = SearchStats::default();
    for f in fam.members() {
        stats.functions_examined += 1;
        for cube in cubes_in(&f.domain_set(), p) {
            stats.cubes_examined += 1;
            let report = regressive_regularity(f, &cube)?;
            if report.overall {
                let found = WitnessResult {
                    function_id: f.id().to_owned(),
                    cube,
                    report,
                    search_stats: stats,
                };
                return Ok((Some(found), stats));
            }
        }
    }
    Ok((None, stats))
}
