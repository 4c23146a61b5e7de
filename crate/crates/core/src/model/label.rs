use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Which of the three root configurations a label belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Configuration {
    #[serde(rename = "10A")]
    TenA,
    #[serde(rename = "6B")]
    SixB,
    #[serde(rename = "4C")]
    FourC,
}

/// Name of one of the 20 roots. Pair indices are stored with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootLabel {
    /// `E_i`, a vertex of the tetrahedron.
    Vertex(u8),
    /// `E_ij`, the midpoint of an edge.
    Edge(u8, u8),
    /// `F_ij`.
    F(u8, u8),
    /// `G_i`, center of the reflective involution `σ_i`.
    G(u8),
}

pub(crate) const PAIRS: [(u8, u8); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

fn pair_slot(i: u8, j: u8) -> usize {
    PAIRS.iter().position(|&p| p == (i, j)).expect("canonical pair")
}

impl RootLabel {
    /// All 20 labels in canonical order: `E1..E4, E12..E34, F12..F34, G1..G4`.
    pub const ALL: [RootLabel; 20] = {
        use RootLabel::*;
        [
            Vertex(1),
            Vertex(2),
            Vertex(3),
            Vertex(4),
            Edge(1, 2),
            Edge(1, 3),
            Edge(1, 4),
            Edge(2, 3),
            Edge(2, 4),
            Edge(3, 4),
            F(1, 2),
            F(1, 3),
            F(1, 4),
            F(2, 3),
            F(2, 4),
            F(3, 4),
            G(1),
            G(2),
            G(3),
            G(4),
        ]
    };

    /// Position in [`RootLabel::ALL`]. The first ten positions are the
    /// lattice basis.
    pub fn index(self) -> usize {
        match self {
            Self::Vertex(i) => (i - 1) as usize,
            Self::Edge(i, j) => 4 + pair_slot(i, j),
            Self::F(i, j) => 10 + pair_slot(i, j),
            Self::G(i) => 16 + (i - 1) as usize,
        }
    }

    pub fn configuration(self) -> Configuration {
        match self {
            Self::Vertex(_) | Self::Edge(..) => Configuration::TenA,
            Self::F(..) => Configuration::SixB,
            Self::G(_) => Configuration::FourC,
        }
    }

    /// True for the 16 curve classes (10A + 6B).
    pub fn is_curve(self) -> bool {
        self.configuration() != Configuration::FourC
    }

    pub fn curves() -> impl Iterator<Item = RootLabel> {
        Self::ALL.into_iter().filter(|l| l.is_curve())
    }

    /// Relabels indices by `image`, restoring the `i < j` convention.
    pub fn permuted(self, image: impl Fn(u8) -> u8) -> Self {
        let pair = |i: u8, j: u8| {
            let (a, b) = (image(i), image(j));
            (a.min(b), a.max(b))
        };
        match self {
            Self::Vertex(i) => Self::Vertex(image(i)),
            Self::Edge(i, j) => {
                let (a, b) = pair(i, j);
                Self::Edge(a, b)
            }
            Self::F(i, j) => {
                let (a, b) = pair(i, j);
                Self::F(a, b)
            }
            Self::G(i) => Self::G(image(i)),
        }
    }
}

impl PartialOrd for RootLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RootLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.index().cmp(&other.index())
    }
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Vertex(i) => write!(f, "E{i}"),
            Self::Edge(i, j) => write!(f, "E{i}{j}"),
            Self::F(i, j) => write!(f, "F{i}{j}"),
            Self::G(i) => write!(f, "G{i}"),
        }
    }
}

impl FromStr for RootLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownLabel(s.to_string());
        let mut chars = s.trim().chars();
        let family = chars.next().ok_or_else(unknown)?;
        let digits: Vec<u8> = chars
            .map(|c| c.to_digit(10).filter(|d| (1..=4).contains(d)).map(|d| d as u8))
            .collect::<Option<_>>()
            .ok_or_else(unknown)?;
        let pair = |v: &[u8]| match v {
            &[i, j] if i != j => Ok((i.min(j), i.max(j))),
            _ => Err(unknown()),
        };
        match (family, digits.as_slice()) {
            ('E', &[i]) => Ok(Self::Vertex(i)),
            ('G', &[i]) => Ok(Self::G(i)),
            ('E', d) => pair(d).map(|(i, j)| Self::Edge(i, j)),
            ('F', d) => pair(d).map(|(i, j)| Self::F(i, j)),
            _ => Err(unknown()),
        }
    }
}

impl Serialize for RootLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twenty_labels_roundtrip() {
        for (k, l) in RootLabel::ALL.iter().enumerate() {
            assert_eq!(l.index(), k);
            assert_eq!(l.to_string().parse::<RootLabel>().unwrap(), *l);
        }
        assert_eq!(RootLabel::curves().count(), 16);
    }

    #[test]
    fn parsing_canonicalizes_and_rejects() {
        assert_eq!("E21".parse::<RootLabel>().unwrap(), RootLabel::Edge(1, 2));
        assert_eq!("F43".parse::<RootLabel>().unwrap(), RootLabel::F(3, 4));
        for bad in ["E11", "E5", "F1", "G12", "H", "", "E123", "x1"] {
            assert!(bad.parse::<RootLabel>().is_err(), "{bad}");
        }
    }

    #[test]
    fn permutation_restores_pair_order() {
        let swap12 = |i: u8| match i {
            1 => 2,
            2 => 1,
            x => x,
        };
        assert_eq!(RootLabel::Edge(1, 3).permuted(swap12), RootLabel::Edge(2, 3));
        assert_eq!(RootLabel::F(1, 2).permuted(swap12), RootLabel::F(1, 2));
        assert_eq!(RootLabel::G(1).permuted(swap12), RootLabel::G(2));
    }
}
