//! Text and structured encodings of a morphism.
//!
//! Text form: `m;n;loops;pairs`, e.g. `2;2;0;(I1-O1)(I2-O2)`. Pairs are
//! emitted in canonical order (by the smaller endpoint, inputs before
//! outputs) with the smaller endpoint first. The parser accepts pairs in
//! any order and orientation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::{BrauerError, BrauerMorphism, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseMorphismError {
    #[error("expected `m;n;loops;pairs`, found {0:?}")]
    Shape(String),
    #[error("invalid number {0:?}")]
    Number(String),
    #[error("invalid boundary point {0:?}")]
    Point(String),
    #[error("malformed pair list {0:?}")]
    Pairs(String),
    #[error(transparent)]
    Morphism(#[from] BrauerError),
}

impl fmt::Display for BrauerMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{};", self.dom(), self.cod(), self.loops())?;
        for (a, b) in self.pairs() {
            write!(f, "({a}-{b})")?;
        }
        Ok(())
    }
}

impl FromStr for Point {
    type Err = ParseMorphismError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseMorphismError::Point(s.to_string());
        let (kind, idx) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(err)?);
        let idx: usize = idx.parse().map_err(|_| err())?;
        match kind {
            "I" => Ok(Point::In(idx)),
            "O" => Ok(Point::Out(idx)),
            _ => Err(err()),
        }
    }
}

fn parse_usize(s: &str) -> Result<usize, ParseMorphismError> {
    s.trim().parse().map_err(|_| ParseMorphismError::Number(s.to_string()))
}

impl FromStr for BrauerMorphism {
    type Err = ParseMorphismError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parts: Vec<&str> = s.splitn(4, ';').collect();
        if parts.len() != 4 {
            return Err(ParseMorphismError::Shape(s.to_string()));
        }
        let (m, n, loops) = (parse_usize(parts[0])?, parse_usize(parts[1])?, parse_usize(parts[2])?);
        let mut pairs = Vec::new();
        let mut rest = parts[3].trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| ParseMorphismError::Pairs(parts[3].to_string()))?;
            let (pair, tail) = body;
            let (a, b) = pair
                .split_once('-')
                .ok_or_else(|| ParseMorphismError::Pairs(parts[3].to_string()))?;
            pairs.push((a.trim().parse()?, b.trim().parse()?));
            rest = tail.trim_start();
        }
        Ok(BrauerMorphism::from_pairs(m, n, &pairs, loops)?)
    }
}

/// Machine-readable form with the same fields as the text encoding.
#[derive(Serialize, Deserialize)]
struct MorphismRecord {
    m: usize,
    n: usize,
    loops: usize,
    pairs: Vec<[String; 2]>,
}

impl Serialize for BrauerMorphism {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MorphismRecord {
            m: self.dom(),
            n: self.cod(),
            loops: self.loops(),
            pairs: self.pairs().into_iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BrauerMorphism {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let rec = MorphismRecord::deserialize(deserializer)?;
        let pairs = rec
            .pairs
            .iter()
            .map(|[a, b]| Ok((a.parse()?, b.parse()?)))
            .collect::<Result<Vec<(Point, Point)>, ParseMorphismError>>()
            .map_err(D::Error::custom)?;
        BrauerMorphism::from_pairs(rec.m, rec.n, &pairs, rec.loops).map_err(D::Error::custom)
    }
}
