use std::fmt;
use std::str::FromStr;

use super::{GroupElement, Permutation};
use crate::error::{Error, Result};
use crate::model::{EnriquesModel, RootLabel};

/// A generator of the reflection group `W(10A+6B+4C)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReflectionLetter {
    /// Reflection in one of the 16 curve classes.
    Curve(RootLabel),
    /// `σ_i`, the reflection in `G_i`.
    Sigma(u8),
}

impl FromStr for ReflectionLetter {
    type Err = Error;

    /// `rE1`, `rE12`, `rF12` for curve reflections; `s1` or `rG1` for `σ_1`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(d) = t.strip_prefix('s') {
            return match d.parse::<u8>() {
                Ok(i) if (1..=4).contains(&i) => Ok(Self::Sigma(i)),
                _ => Err(Error::Parse(format!("invalid letter `{s}`"))),
            };
        }
        let label: RootLabel =
            t.strip_prefix('r').ok_or_else(|| Error::Parse(format!("invalid letter `{s}`")))?.parse()?;
        Ok(match label {
            RootLabel::G(i) => Self::Sigma(i),
            other => Self::Curve(other),
        })
    }
}

impl fmt::Display for ReflectionLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Curve(l) => write!(f, "r{l}"),
            Self::Sigma(i) => write!(f, "s{i}"),
        }
    }
}

pub fn parse_reflection_word(s: &str) -> Result<Vec<ReflectionLetter>> {
    s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(str::parse).collect()
}

/// True when every pairing between a `G_i` and a curve class is even.
pub fn check_parity(m: &EnriquesModel) -> bool {
    (1..=4u8).all(|i| RootLabel::curves().all(|c| m.pairing(RootLabel::G(i), c) % 2 == 0))
}

/// Image in `W(4C) ≅ C2 * C2 * C2 * C2`: curve reflections are deleted, the
/// `σ` letters are kept and reduced. The empty image marks the kernel.
pub fn project_to_w4c(m: &EnriquesModel, word: &[ReflectionLetter]) -> Result<GroupElement> {
    if !check_parity(m) {
        return Err(Error::Precondition("pairings between 4C and 10A+6B are not all even".into()));
    }
    let letters: Vec<u32> = word
        .iter()
        .filter_map(|l| match l {
            ReflectionLetter::Sigma(i) => Some(*i as u32),
            ReflectionLetter::Curve(_) => None,
        })
        .collect();
    GroupElement::normal_form(Permutation::IDENTITY, &letters)
}
