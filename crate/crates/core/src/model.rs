//! Problem instances, node identity in the infinite r-ary tree, and exact cost
//! arithmetic.
//!
//! Letter lengths are accepted as exact non-negative rationals and rescaled
//! to coprime positive integers. All depth and cost arithmetic afterwards is
//! integral, so node comparisons (and therefore tie-breaking) are exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Sub, SubAssign};

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An exact rational letter length as accepted on input.
pub type Rational = Ratio<u128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("need at least 2 letters, got {0}")]
    TooFewLetters(usize),
    #[error("letter {index} has non-positive length")]
    NonPositiveCost { index: usize },
    #[error("word count must be at least 1")]
    NoWords,
    #[error("invalid number {0:?}")]
    BadNumber(String),
    #[error("letter lengths overflow after rescaling to a common denominator")]
    Overflow,
    #[error("letter lengths must be sorted ascending")]
    Unsorted,
    #[error("letter lengths share a common factor {0}")]
    NotCoprime(u64),
    #[error("scale {0}/{1} is not a positive fraction")]
    BadScale(u64, u64),
}

/// Exact, non-negative cost in units of the instance's rescaled letter
/// lengths. Used for node depths and tree costs.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Cost(pub u128);

impl Cost {
    pub const ZERO: Cost = Cost(0);

    pub fn get(self) -> u128 {
        self.0
    }
}

impl From<u64> for Cost {
    fn from(v: u64) -> Self {
        Cost(v as u128)
    }
}

impl Add for Cost {
    type Output = Cost;
    fn add(self, rhs: Cost) -> Cost {
        Cost(self.0 + rhs.0)
    }
}

impl AddAssign for Cost {
    fn add_assign(&mut self, rhs: Cost) {
        self.0 += rhs.0;
    }
}

impl Sub for Cost {
    type Output = Cost;
    fn sub(self, rhs: Cost) -> Cost {
        Cost(self.0 - rhs.0)
    }
}

impl SubAssign for Cost {
    fn sub_assign(&mut self, rhs: Cost) {
        self.0 -= rhs.0;
    }
}

impl std::iter::Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, Add::add)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A validated problem instance.
///
/// `costs` holds the letter lengths sorted ascending, rescaled to coprime
/// positive integers. The original length of letter `i` is
/// `costs[i] * scale_numer / scale_denom`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    costs: Vec<u64>,
    scale_numer: u64,
    scale_denom: u64,
    n: usize,
}

impl Instance {
    /// Validates raw letter lengths and a word count.
    ///
    /// The order of `costs_raw` does not matter. Lengths are rescaled by the
    /// unique positive factor that turns them into coprime integers.
    pub fn new(costs_raw: &[Rational], n: usize) -> Result<Instance, ModelError> {
        if costs_raw.len() < 2 {
            return Err(ModelError::TooFewLetters(costs_raw.len()));
        }
        if let Some(index) = costs_raw.iter().position(|c| *c.numer() == 0) {
            return Err(ModelError::NonPositiveCost { index });
        }
        if n < 1 {
            return Err(ModelError::NoWords);
        }

        let common = costs_raw
            .iter()
            .try_fold(1u128, |acc, c| checked_lcm(acc, *c.denom()))
            .ok_or(ModelError::Overflow)?;
        let mut scaled = costs_raw
            .iter()
            .map(|c| c.numer().checked_mul(common / c.denom()))
            .collect::<Option<Vec<u128>>>()
            .ok_or(ModelError::Overflow)?;
        let g = scaled.iter().fold(0u128, |acc, &v| acc.gcd(&v));
        for v in scaled.iter_mut() {
            *v /= g;
        }
        scaled.sort_unstable();

        // original = scaled * g / common
        let unit = Ratio::new(g, common);
        let costs = scaled
            .into_iter()
            .map(u64::try_from)
            .collect::<Result<Vec<u64>, _>>()
            .map_err(|_| ModelError::Overflow)?;
        let scale_numer = u64::try_from(*unit.numer()).map_err(|_| ModelError::Overflow)?;
        let scale_denom = u64::try_from(*unit.denom()).map_err(|_| ModelError::Overflow)?;
        Ok(Instance {
            costs,
            scale_numer,
            scale_denom,
            n,
        })
    }

    /// Convenience constructor for integer letter lengths.
    pub fn from_integers(costs: &[u64], n: usize) -> Result<Instance, ModelError> {
        let raw: Vec<Rational> = costs.iter().map(|&c| Rational::from(c as u128)).collect();
        Instance::new(&raw, n)
    }

    /// Rebuilds an instance from already-normalized parts, e.g. a stored
    /// code document. Rejects anything `Instance::new` would not produce.
    pub fn from_parts(
        costs: Vec<u64>,
        scale_numer: u64,
        scale_denom: u64,
        n: usize,
    ) -> Result<Instance, ModelError> {
        if costs.len() < 2 {
            return Err(ModelError::TooFewLetters(costs.len()));
        }
        if let Some(index) = costs.iter().position(|&c| c == 0) {
            return Err(ModelError::NonPositiveCost { index });
        }
        if n < 1 {
            return Err(ModelError::NoWords);
        }
        if costs.windows(2).any(|w| w[0] > w[1]) {
            return Err(ModelError::Unsorted);
        }
        let g = costs.iter().fold(0u64, |acc, &v| acc.gcd(&v));
        if g != 1 {
            return Err(ModelError::NotCoprime(g));
        }
        if scale_numer == 0 || scale_denom == 0 || scale_numer.gcd(&scale_denom) != 1 {
            return Err(ModelError::BadScale(scale_numer, scale_denom));
        }
        Ok(Instance {
            costs,
            scale_numer,
            scale_denom,
            n,
        })
    }

    /// Number of letters.
    pub fn r(&self) -> usize {
        self.costs.len()
    }

    /// Number of codewords.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted, rescaled letter lengths `c_1 <= ... <= c_r`.
    pub fn costs(&self) -> &[u64] {
        &self.costs
    }

    /// Length of letter `i` (1-based).
    pub fn letter_cost(&self, i: usize) -> Cost {
        Cost::from(self.costs[i - 1])
    }

    pub fn scale_numer(&self) -> u64 {
        self.scale_numer
    }

    pub fn scale_denom(&self) -> u64 {
        self.scale_denom
    }

    /// Same letters, different word count.
    pub fn with_n(&self, n: usize) -> Result<Instance, ModelError> {
        if n < 1 {
            return Err(ModelError::NoWords);
        }
        Ok(Instance { n, ..self.clone() })
    }

    /// `ceil((n - 1) / (r - 1))`, the fewest non-terminals any tree with `n`
    /// terminals can have.
    pub fn m_min(&self) -> usize {
        (self.n - 1).div_ceil(self.r() - 1)
    }
}

fn checked_lcm(a: u128, b: u128) -> Option<u128> {
    (a / a.gcd(&b)).checked_mul(b)
}

/// Parses one exact non-negative rational: an integer (`"5"`), a decimal
/// (`"0.25"`), or a fraction (`"1/3"`). Binary floating point is never
/// involved.
pub fn parse_rational(s: &str) -> Result<Rational, ModelError> {
    let bad = || ModelError::BadNumber(s.to_string());
    let t = s.trim();
    if let Some((num, den)) = t.split_once('/') {
        let num = parse_decimal(num.trim()).ok_or_else(bad)?;
        let den = parse_decimal(den.trim()).ok_or_else(bad)?;
        if *den.numer() == 0 {
            return Err(bad());
        }
        return num_traits::CheckedDiv::checked_div(&num, &den).ok_or_else(bad);
    }
    parse_decimal(t).ok_or_else(bad)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    let (int, frac) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut numer: u128 = 0;
    for b in int.bytes().chain(frac.bytes()) {
        numer = numer.checked_mul(10)?.checked_add((b - b'0') as u128)?;
    }
    let denom = 10u128.checked_pow(u32::try_from(frac.len()).ok()?)?;
    Some(Ratio::new(numer, denom))
}

/// Parses a comma-separated list of rationals, e.g. `"1/2, 1, 1.5"`.
pub fn parse_cost_list(s: &str) -> Result<Vec<Rational>, ModelError> {
    s.split(',').map(parse_rational).collect()
}

/// A node of the infinite r-ary tree, identified by the rank of its parent
/// non-terminal and its child index.
///
/// The root has `parent == 0`, `child == 0` and depth 0. Every other node has
/// `parent >= 1` and `1 <= child <= r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NodeRef {
    pub parent: usize,
    pub child: usize,
    pub depth: Cost,
}

impl NodeRef {
    pub const ROOT: NodeRef = NodeRef {
        parent: 0,
        child: 0,
        depth: Cost::ZERO,
    };

    pub fn new(parent: usize, child: usize, depth: Cost) -> NodeRef {
        NodeRef {
            parent,
            child,
            depth,
        }
    }

    pub fn is_root(&self) -> bool {
        self.parent == 0
    }
}

/// Node order: depth, then parent rank, then child index.
///
/// Equal-depth i-th children are ordered by their parents, which is the one
/// constraint the construction depends on; the remaining ties are broken
/// lexicographically so the labeling is fully deterministic.
pub fn node_compare(a: &NodeRef, b: &NodeRef) -> Ordering {
    a.depth
        .cmp(&b.depth)
        .then(a.parent.cmp(&b.parent))
        .then(a.child.cmp(&b.child))
}

impl Ord for NodeRef {
    fn cmp(&self, other: &Self) -> Ordering {
        node_compare(self, other)
    }
}

impl PartialOrd for NodeRef {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
