//! Truncated Boolean power series `B[[q]] / (q^N)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub const DEFAULT_TRUNCATION: usize = 64;

/// A set of exponents below the truncation degree `N`.
///
/// Binary operations on series with different `N` truncate to the smaller.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoolSeries {
    trunc: usize,
    bits: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseSeriesError {
    #[error("expected `N:e1,e2,...`, found {0:?}")]
    Shape(String),
    #[error("invalid exponent or degree {0:?}")]
    Number(String),
    #[error("exponent {exp} is not below the truncation degree {trunc}")]
    OutOfRange { exp: usize, trunc: usize },
}

impl BoolSeries {
    pub fn zero(trunc: usize) -> Self {
        Self { trunc, bits: vec![0; trunc.div_ceil(64)] }
    }

    pub fn one(trunc: usize) -> Self {
        Self::qpow(0, trunc)
    }

    /// `q^k`, which is zero when `k >= N`.
    pub fn qpow(k: usize, trunc: usize) -> Self {
        Self::from_exponents([k], trunc)
    }

    /// `1 / (1 - q^2) = 1 + q^2 + q^4 + ...`.
    pub fn geom2(trunc: usize) -> Self {
        Self::from_exponents((0..trunc).step_by(2), trunc)
    }

    /// Exponents at or above `N` are dropped.
    pub fn from_exponents(exps: impl IntoIterator<Item = usize>, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        for e in exps {
            if e < trunc {
                s.bits[e / 64] |= 1 << (e % 64);
            }
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.trunc && self.bits[e / 64] >> (e % 64) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.trunc).filter(|&e| self.contains(e))
    }

    pub fn min_exponent(&self) -> Option<usize> {
        self.exponents().next()
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        Self::from_exponents(self.exponents(), trunc.min(self.trunc))
    }

    /// Union of exponent sets.
    pub fn add(&self, other: &BoolSeries) -> BoolSeries {
        let trunc = self.trunc.min(other.trunc);
        let mut out = self.truncate(trunc);
        for (w, o) in out.bits.iter_mut().zip(&other.truncate(trunc).bits) {
            *w |= o;
        }
        out
    }

    /// Truncated Minkowski sum of exponent sets.
    pub fn mul(&self, other: &BoolSeries) -> BoolSeries {
        let trunc = self.trunc.min(other.trunc);
        let mut out = BoolSeries::zero(trunc);
        for i in self.exponents().filter(|&i| i < trunc) {
            for j in other.exponents().take_while(|&j| i + j < trunc) {
                let e = i + j;
                out.bits[e / 64] |= 1 << (e % 64);
            }
        }
        out
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: usize) -> BoolSeries {
        BoolSeries::from_exponents(self.exponents().map(|e| e + k), self.trunc)
    }

    /// Sum of a finite family; the empty sum is zero.
    pub fn big_sum<'a>(family: impl IntoIterator<Item = &'a BoolSeries>, trunc: usize) -> BoolSeries {
        family.into_iter().fold(BoolSeries::zero(trunc), |acc, s| acc.add(s))
    }

    /// `self <= other` in the idempotent order, i.e. `self + other = other`.
    pub fn le(&self, other: &BoolSeries) -> bool {
        self.exponents().all(|e| other.contains(e))
    }
}

impl fmt::Display for BoolSeries {
    /// `N:e1,e2,...` with exponents ascending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps: Vec<String> = self.exponents().map(|e| e.to_string()).collect();
        write!(f, "{}:{}", self.trunc, exps.join(","))
    }
}

impl FromStr for BoolSeries {
    type Err = ParseSeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, rest) = s.trim().split_once(':').ok_or_else(|| ParseSeriesError::Shape(s.to_string()))?;
        let trunc: usize = n.trim().parse().map_err(|_| ParseSeriesError::Number(n.to_string()))?;
        let mut exps = Vec::new();
        for tok in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let exp: usize = tok.parse().map_err(|_| ParseSeriesError::Number(tok.to_string()))?;
            if exp >= trunc {
                return Err(ParseSeriesError::OutOfRange { exp, trunc });
            }
            exps.push(exp);
        }
        Ok(Self::from_exponents(exps, trunc))
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRecord {
    trunc: usize,
    exponents: Vec<usize>,
}

impl Serialize for BoolSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SeriesRecord { trunc: self.trunc, exponents: self.exponents().collect() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BoolSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let rec = SeriesRecord::deserialize(deserializer)?;
        if let Some(&exp) = rec.exponents.iter().find(|&&e| e >= rec.trunc) {
            return Err(D::Error::custom(ParseSeriesError::OutOfRange { exp, trunc: rec.trunc }));
        }
        Ok(Self::from_exponents(rec.exponents, rec.trunc))
    }
}

/// Parameters of `q^r (1 + beta q^(2s+1)) / (1 - q^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RationalForm {
    pub r: usize,
    pub beta: bool,
    pub s: usize,
}

impl RationalForm {
    pub fn expand(&self, trunc: usize) -> BoolSeries {
        let evens = BoolSeries::geom2(trunc).shift(self.r);
        if self.beta {
            evens.add(&evens.shift(2 * self.s + 1))
        } else {
            evens
        }
    }
}

impl fmt::Display for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = format!("q^{}", self.r);
        let numerator = match (self.r, self.beta) {
            (0, false) => "1".to_string(),
            (_, false) => power,
            (0, true) => format!("(1 + q^{})", 2 * self.s + 1),
            (_, true) => format!("{power} (1 + q^{})", 2 * self.s + 1),
        };
        write!(f, "{numerator} / (1 - q^2)")
    }
}

/// Matches `b` against the truncation of `q^r (1 + beta q^(2s+1)) / (1 - q^2)`.
///
/// Returns `None` when no such form matches, and also when the match would
/// not be confident, i.e. when `N < r + 2s + 5`.
pub fn rationalize(b: &BoolSeries) -> Option<RationalForm> {
    let r = b.min_exponent()?;
    let s = b.exponents().find(|e| (e - r) % 2 == 1).map(|t| (t - r - 1) / 2);
    let form = RationalForm { r, beta: s.is_some(), s: s.unwrap_or(0) };
    (b.trunc() >= r + 2 * form.s + 5 && form.expand(b.trunc()) == *b).then_some(form)
}
