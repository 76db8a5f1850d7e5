//! Scenario files:
//!
//! ```text
//! # comment
//! in fS 2
//! out g 2
//! fS g 2;2;0;(I1-O1)(I2-O2)
//! ```
//!
//! Key declarations come first; each remaining line is a field.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{DiscreteCobordism, Field, TftError};
use crate::brauer::{BrauerMorphism, ParseMorphismError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScenarioError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Morphism { line: usize, source: ParseMorphismError },
    #[error(transparent)]
    Cobordism(#[from] TftError),
}

impl FromStr for DiscreteCobordism {
    type Err = ParseScenarioError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (mut ins, mut outs, mut fields) = (Vec::new(), Vec::new(), Vec::new());
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let syntax = |message: &str| ParseScenarioError::Syntax { line, message: message.to_string() };
            let mut parts = content.splitn(3, char::is_whitespace);
            let (a, b, rest) = (parts.next().unwrap_or(""), parts.next().unwrap_or(""), parts.next().unwrap_or(""));
            if a == "in" || a == "out" {
                if !fields.is_empty() {
                    return Err(syntax("key declarations must precede fields"));
                }
                let obj: usize = rest.trim().parse().map_err(|_| syntax("expected `in|out KEY OBJECT`"))?;
                let side = if a == "in" { &mut ins } else { &mut outs };
                side.push((b.to_string(), obj));
            } else {
                if b.is_empty() || rest.trim().is_empty() {
                    return Err(syntax("expected `IN_KEY OUT_KEY MORPHISM`"));
                }
                let morphism: BrauerMorphism =
                    rest.trim().parse().map_err(|source| ParseScenarioError::Morphism { line, source })?;
                fields.push(Field { key_in: a.to_string(), key_out: b.to_string(), morphism });
            }
        }
        Ok(DiscreteCobordism::new(ins, outs, fields)?)
    }
}

impl fmt::Display for DiscreteCobordism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, o) in self.in_keys() {
            writeln!(f, "in {k} {o}")?;
        }
        for (k, o) in self.out_keys() {
            writeln!(f, "out {k} {o}")?;
        }
        for field in self.fields() {
            writeln!(f, "{} {} {}", field.key_in, field.key_out, field.morphism)?;
        }
        Ok(())
    }
}
