//! Exact balance thresholds and edge densities.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{choose2, BicoloredGraph};

/// The balance parameter epsilon, an exact rational in `(0, 1/2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BalanceSpec {
    epsilon: Ratio<u64>,
}

impl BalanceSpec {
    pub fn new(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidEpsilon(format!("{numer}/{denom}")));
        }
        let epsilon = Ratio::new(numer, denom);
        if numer == 0 || epsilon > Ratio::new(1, 2) {
            return Err(Error::InvalidEpsilon(epsilon.to_string()));
        }
        Ok(BalanceSpec { epsilon })
    }

    pub fn half() -> Self {
        BalanceSpec { epsilon: Ratio::new(1, 2) }
    }

    pub fn epsilon(&self) -> Ratio<u64> {
        self.epsilon
    }

    /// True iff `count >= epsilon * total`, decided by cross-multiplication.
    #[inline]
    pub fn meets(&self, count: u64, total: u64) -> bool {
        count as u128 * *self.epsilon.denom() as u128 >= *self.epsilon.numer() as u128 * total as u128
    }

    /// Smallest integer `x` with `x >= epsilon * total`.
    pub fn min_count(&self, total: u64) -> u64 {
        let p = *self.epsilon.numer() as u128 * total as u128;
        let q = *self.epsilon.denom() as u128;
        p.div_ceil(q) as u64
    }
}

impl FromStr for BalanceSpec {
    type Err = Error;

    /// Accepts only `p/q` literals; decimals are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidEpsilon(s.to_string());
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let q: u64 = q.trim().parse().map_err(|_| bad())?;
        BalanceSpec::new(p, q)
    }
}

impl fmt::Display for BalanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.epsilon.numer(), self.epsilon.denom())
    }
}

/// True iff both color classes hold at least `epsilon * e(g)` edges.
/// A graph without edges is balanced for every epsilon.
pub fn is_balanced(g: &BicoloredGraph, spec: &BalanceSpec) -> bool {
    let (r, b) = g.edge_counts();
    counts_balanced(r, b, spec)
}

#[inline]
pub fn counts_balanced(red: u64, blue: u64, spec: &BalanceSpec) -> bool {
    let e = red + blue;
    spec.meets(red, e) && spec.meets(blue, e)
}

/// Edge densities relative to `C(n, 2)`, exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Density {
    #[serde(serialize_with = "ser_ratio")]
    pub total: Ratio<u64>,
    #[serde(serialize_with = "ser_ratio")]
    pub red: Ratio<u64>,
    #[serde(serialize_with = "ser_ratio")]
    pub blue: Ratio<u64>,
}

pub(crate) fn ser_ratio<S: Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(r))
}

/// `p/q` in lowest terms, or just `p` when `q == 1`.
pub fn ratio_string(r: &Ratio<u64>) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Densities of `g`; graphs on at most one vertex have density 0.
pub fn density(g: &BicoloredGraph) -> Density {
    let pairs = choose2(g.n() as u64);
    let (r, b) = g.edge_counts();
    if pairs == 0 {
        let zero = Ratio::from_integer(0);
        return Density { total: zero, red: zero, blue: zero };
    }
    Density {
        total: Ratio::new(r + b, pairs),
        red: Ratio::new(r, pairs),
        blue: Ratio::new(b, pairs),
    }
}
