//! Interval classification of function values relative to a cube, bijections
//! N -> Z, and the F/H integer multisets built from a function on E^k.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::predicates::{check_cube_in_domain, FiniteFunction};
use crate::scalar::{Integer, Natural};
use crate::tuples::{Cube, Tuple};

/// Integer multiset with explicit multiplicities.
///
/// JSON form: sorted `[[value, multiplicity], ...]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(
    try_from = "Vec<(Z, usize)>",
    into = "Vec<(Z, usize)>",
    bound = "Z: Integer"
)]
pub struct Multiset<Z: Integer> {
    counts: BTreeMap<Z, usize>,
    total: usize,
}

impl<Z: Integer> Default for Multiset<Z> {
    fn default() -> Self {
        Multiset {
            counts: BTreeMap::new(),
            total: 0,
        }
    }
}

impl<Z: Integer> Multiset<Z> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, value: Z) {
        self.insert_n(value, 1);
    }

    pub fn insert_n(&mut self, value: Z, n: usize) {
        if n > 0 {
            *self.counts.entry(value).or_insert(0) += n;
            self.total += n;
        }
    }

    pub fn multiplicity(&self, value: Z) -> usize {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    /// Sum of multiplicities.
    pub fn total_size(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Distinct values with multiplicities, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (Z, usize)> + '_ {
        self.counts.iter().map(|(&v, &m)| (v, m))
    }

    /// Every element repeated by multiplicity, ascending.
    pub fn expanded(&self) -> Vec<Z> {
        self.iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v, m))
            .collect()
    }

    /// The same support with every multiplicity 1.
    pub fn support(&self) -> Self {
        self.iter().map(|(v, _)| v).collect()
    }

    pub fn is_submultiset_of(&self, other: &Self) -> bool {
        self.iter().all(|(v, m)| m <= other.multiplicity(v))
    }

    /// Sum of all elements, widened to `i128`.
    pub fn sum(&self) -> i128 {
        self.iter().map(|(v, m)| v.wide() * m as i128).sum()
    }

    /// Multiset union with multiplicities added.
    pub fn merge(&mut self, other: &Self) {
        for (v, m) in other.iter() {
            self.insert_n(v, m);
        }
    }
}

impl<Z: Integer> Neg for &Multiset<Z> {
    type Output = Multiset<Z>;

    fn neg(self) -> Multiset<Z> {
        let mut out = Multiset::new();
        for (v, m) in self.iter() {
            out.insert_n(-v, m);
        }
        out
    }
}

impl<Z: Integer> FromIterator<Z> for Multiset<Z> {
    fn from_iter<I: IntoIterator<Item = Z>>(iter: I) -> Self {
        let mut out = Multiset::new();
        for v in iter {
            out.insert(v);
        }
        out
    }
}

impl<Z: Integer> TryFrom<Vec<(Z, usize)>> for Multiset<Z> {
    type Error = Error;

    /// Repeated values are merged; zero multiplicities are rejected.
    fn try_from(pairs: Vec<(Z, usize)>) -> Result<Self> {
        let mut out = Multiset::new();
        for (v, m) in pairs {
            if m == 0 {
                return Err(Error::ZeroMultiplicity(v.to_string()));
            }
            out.insert_n(v, m);
        }
        Ok(out)
    }
}

impl<Z: Integer> From<Multiset<Z>> for Vec<(Z, usize)> {
    fn from(ms: Multiset<Z>) -> Self {
        ms.counts.into_iter().collect()
    }
}

impl<Z: Integer> fmt::Display for Multiset<Z> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.expanded().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// A parametric bijection N -> Z.
///
/// String forms: `zigzag`, `zigzagNeg`, `shifted:<offset>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ZBijection {
    /// 0, 1, -1, 2, -2, ...: even n to -n/2, odd n to (n+1)/2.
    #[default]
    Zigzag,
    /// Negated zigzag.
    ZigzagNeg,
    /// Zigzag followed by adding the offset.
    Shifted(i64),
}

impl ZBijection {
    /// γ(n), computed in `i128` and narrowed to `Z`.
    pub fn apply<N: Natural, Z: Integer>(self, n: N) -> Result<Z> {
        let n = n
            .to_u128()
            .filter(|&n| n < (1u128 << 126))
            .ok_or_else(|| Error::Overflow(n.to_string()))? as i128;
        let zig = if n % 2 == 0 { -(n / 2) } else { (n + 1) / 2 };
        let image = match self {
            ZBijection::Zigzag => zig,
            ZBijection::ZigzagNeg => -zig,
            ZBijection::Shifted(o) => zig + o as i128,
        };
        Z::from(image).ok_or_else(|| Error::Overflow(image.to_string()))
    }

    /// γ⁻¹(z).
    pub fn invert<Z: Integer, N: Natural>(self, z: Z) -> Result<N> {
        let z = z.wide();
        let zig = match self {
            ZBijection::Zigzag => z,
            ZBijection::ZigzagNeg => -z,
            ZBijection::Shifted(o) => z - o as i128,
        };
        let n = if zig > 0 { 2 * zig - 1 } else { -2 * zig };
        N::from(n).ok_or_else(|| Error::Overflow(n.to_string()))
    }
}

impl fmt::Display for ZBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZBijection::Zigzag => f.write_str("zigzag"),
            ZBijection::ZigzagNeg => f.write_str("zigzagNeg"),
            ZBijection::Shifted(o) => write!(f, "shifted:{o}"),
        }
    }
}

impl FromStr for ZBijection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zigzag" => Ok(ZBijection::Zigzag),
            "zigzagNeg" => Ok(ZBijection::ZigzagNeg),
            _ => s
                .strip_prefix("shifted:")
                .and_then(|o| o.parse().ok())
                .map(ZBijection::Shifted)
                .ok_or_else(|| Error::UnknownBijection(s.to_owned())),
        }
    }
}

impl TryFrom<String> for ZBijection {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ZBijection> for String {
    fn from(g: ZBijection) -> Self {
        g.to_string()
    }
}

/// The bijections applied to interval 0, 1 and 2 respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GammaTriple {
    pub g0: ZBijection,
    pub g1: ZBijection,
    pub g2: ZBijection,
}

impl GammaTriple {
    pub fn uniform(g: ZBijection) -> Self {
        GammaTriple {
            g0: g,
            g1: g,
            g2: g,
        }
    }

    pub fn get(&self, interval: Interval) -> ZBijection {
        match interval {
            Interval::Below => self.g0,
            Interval::Middle => self.g1,
            Interval::Upper => self.g2,
        }
    }
}

impl FromStr for GammaTriple {
    type Err = Error;

    /// Comma separated `g0,g1,g2`; a single name applies to all three.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        match parts.as_slice() {
            [g] => Ok(GammaTriple::uniform(g.parse()?)),
            [g0, g1, g2] => Ok(GammaTriple {
                g0: g0.parse()?,
                g1: g1.parse()?,
                g2: g2.parse()?,
            }),
            _ => Err(Error::UnknownBijection(s.to_owned())),
        }
    }
}

impl fmt::Display for GammaTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.g0, self.g1, self.g2)
    }
}

/// Which of the three intervals partitioning N a value falls in, relative to
/// a cube E and a point x of E^k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interval {
    /// `[0, min(E))`
    Below,
    /// `[min(E), min(x))`
    Middle,
    /// `[min(x), ∞)`
    Upper,
}

impl Interval {
    pub fn index(self) -> usize {
        self as usize
    }

    /// Interval of `value` for a cube with minimum `min_e` at a point with minimum `min_x`.
    pub fn of<N: Natural>(value: N, min_e: N, min_x: N) -> Self {
        if value < min_e {
            Interval::Below
        } else if value < min_x {
            Interval::Middle
        } else {
            Interval::Upper
        }
    }
}

/// Interval index of f(x) for `x` in E^k.
pub fn classify_interval<N: Natural>(
    f: &FiniteFunction<N>,
    cube: &Cube<N>,
    x: &Tuple<N>,
) -> Result<Interval> {
    if !cube.contains(x) {
        return Err(Error::NotInCube(x.to_string()));
    }
    let value = f.get(x).ok_or_else(|| Error::NotInDomain(x.to_string()))?;
    Ok(Interval::of(value, cube.min_element(), x.min_coord()))
}

/// How contributions are combined into F and H.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    /// One contribution per point of E^k; |F| = p^k.
    #[default]
    Multiset,
    /// Plain set union; every multiplicity is 1.
    Set,
}

impl FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "multiset" => Ok(Semantics::Multiset),
            "set" => Ok(Semantics::Set),
            _ => Err(format!("unknown semantics `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "Z: Integer")]
pub struct FhSets<Z: Integer> {
    #[serde(rename = "F")]
    pub f: Multiset<Z>,
    #[serde(rename = "H")]
    pub h: Multiset<Z>,
    /// Number of points of E^k in each interval.
    pub interval_counts: [usize; 3],
}

impl<Z: Integer> FhSets<Z> {
    pub fn equal(&self) -> bool {
        fh_equal(&self.f, &self.h)
    }
}

/// Builds F and H for f restricted to E^k.
///
/// Each x in E^k contributes γ_i(f(x)) where i is the interval of f(x) relative
/// to (E, x). F takes every contribution, H drops interval 1.
pub fn build_fh<N: Natural, Z: Integer>(
    f: &FiniteFunction<N>,
    cube: &Cube<N>,
    gammas: &GammaTriple,
    semantics: Semantics,
) -> Result<FhSets<Z>> {
    check_cube_in_domain(f, cube)?;
    let mut parts: [Multiset<Z>; 3] = Default::default();
    let mut interval_counts = [0usize; 3];
    for x in cube.tuples() {
        let value = f.get(&x).expect("cube checked against domain");
        let interval = Interval::of(value, cube.min_element(), x.min_coord());
        interval_counts[interval.index()] += 1;
        parts[interval.index()].insert(gammas.get(interval).apply(value)?);
    }
    let [below, middle, upper] = parts;
    let mut h = below;
    h.merge(&upper);
    let mut full = h.clone();
    full.merge(&middle);
    if semantics == Semantics::Set {
        full = full.support();
        h = h.support();
    }
    Ok(FhSets {
        f: full,
        h,
        interval_counts,
    })
}

/// Multiset equality: same support, same multiplicities.
pub fn fh_equal<Z: Integer>(f: &Multiset<Z>, h: &Multiset<Z>) -> bool {
    f == h
}
