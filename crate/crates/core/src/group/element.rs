use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::Permutation;
use crate::error::{Error, Result};

/// An element of `S4 ⋉ (C2 * C2 * C2 * C2)` in normal form.
///
/// The element is `perm · σ_{w1} σ_{w2} ⋯ σ_{wk}`: acting on a vector, the
/// word is applied first (rightmost letter first), then the permutation.
/// The word never has two equal adjacent letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    perm: Permutation,
    word: Vec<u8>,
}

fn reduce(letters: impl IntoIterator<Item = u8>) -> Vec<u8> {
    let mut out: Vec<u8> = Vec::new();
    for x in letters {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

impl GroupElement {
    pub fn identity() -> Self {
        Self { perm: Permutation::IDENTITY, word: Vec::new() }
    }

    /// The involution `σ_i`.
    pub fn sigma(i: u8) -> Result<Self> {
        Self::normal_form(Permutation::IDENTITY, &[i as u32])
    }

    pub fn from_perm(perm: Permutation) -> Self {
        Self { perm, word: Vec::new() }
    }

    /// Cancels adjacent equal letters until the word is reduced.
    pub fn normal_form(perm: Permutation, raw_word: &[u32]) -> Result<Self> {
        let letters = raw_word
            .iter()
            .map(|&x| if (1..=4).contains(&x) { Ok(x as u8) } else { Err(Error::InvalidLetter(x)) })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { perm, word: reduce(letters) })
    }

    pub fn perm(&self) -> Permutation {
        self.perm
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.word.is_empty()
    }

    /// Group law. `(p, w)(q, v) = (p∘q, q⁻¹(w) · v)`, since moving `q` left
    /// past the word conjugates each `σ_i` into `σ_{q⁻¹(i)}`.
    pub fn multiply(&self, other: &Self) -> Self {
        let q_inv = other.perm.inverse();
        let letters = self.word.iter().map(|&i| q_inv.apply(i)).chain(other.word.iter().copied());
        Self { perm: self.perm.compose(other.perm), word: reduce(letters) }
    }

    pub fn inverse(&self) -> Self {
        let p = self.perm;
        Self { perm: p.inverse(), word: self.word.iter().rev().map(|&i| p.apply(i)).collect() }
    }

    /// Parses a permutation (`id`, `(1 2)(3 4)`) and a word (`s1 s2 s1`).
    pub fn parse(perm: &str, word: &str) -> Result<Self> {
        let perm: Permutation = perm.parse()?;
        let letters = parse_sigma_word(word)?;
        Self::normal_form(perm, &letters)
    }
}

/// Parses `s1 s2 s1` (also `σ1`) into letters.
pub fn parse_sigma_word(word: &str) -> Result<Vec<u32>> {
    word.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            let digits = t.strip_prefix('s').or_else(|| t.strip_prefix('σ'));
            digits.and_then(|d| d.parse::<u32>().ok()).ok_or_else(|| Error::Parse(format!("invalid word letter `{t}`")))
        })
        .collect()
}

/// `perm` followed by the word letters, e.g. `(1 2) s1 s3` or `id`.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.perm)?;
        for x in &self.word {
            write!(f, " s{x}")?;
        }
        Ok(())
    }
}

/// Inverse of the `Display` form: an optional permutation (`id` or cycles)
/// followed by word letters.
impl FromStr for GroupElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (perm, word) = if let Some(rest) = s.strip_prefix("id") {
            ("id", rest)
        } else if s.starts_with('(') {
            let end = s.rfind(')').ok_or_else(|| Error::Parse(format!("invalid element `{s}`")))?;
            s.split_at(end + 1)
        } else {
            ("id", s)
        };
        Self::parse(perm, word)
    }
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GroupElement", 2)?;
        st.serialize_field("perm", &self.perm.to_string())?;
        st.serialize_field("word", &self.word.iter().map(|x| format!("s{x}")).collect::<Vec<_>>())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_round_trip() {
        for text in ["id", "(1 2) s1 s3", "s2 s1", "(1 2 3 4)"] {
            let g: GroupElement = text.parse().unwrap();
            assert_eq!(g.to_string().parse::<GroupElement>().unwrap(), g);
        }
        assert_eq!("s1 s1".parse::<GroupElement>().unwrap(), GroupElement::identity());
        assert!("(1 5) s1".parse::<GroupElement>().is_err());
    }

    #[test]
    fn cancellation() {
        let id = Permutation::IDENTITY;
        assert!(GroupElement::normal_form(id, &[1, 1]).unwrap().is_identity());
        assert!(GroupElement::normal_form(id, &[1, 2, 2, 1]).unwrap().is_identity());
        assert_eq!(GroupElement::normal_form(id, &[1, 2, 3, 3, 2]).unwrap().word(), &[1]);
        assert_eq!(GroupElement::normal_form(id, &[5]), Err(Error::InvalidLetter(5)));
        assert_eq!(GroupElement::normal_form(id, &[0]), Err(Error::InvalidLetter(0)));
    }

    #[test]
    fn conjugating_by_a_transposition_relabels_letters() {
        let t = GroupElement::from_perm(Permutation::transposition(1, 2));
        let s1 = GroupElement::sigma(1).unwrap();
        let conj = t.multiply(&s1).multiply(&t);
        assert_eq!(conj, GroupElement::sigma(2).unwrap());
        let ts1 = t.multiply(&s1);
        assert_eq!(ts1.perm(), Permutation::transposition(1, 2));
        assert_eq!(ts1.word(), &[1]);
        assert!(s1.multiply(&s1).is_identity());
    }

    #[test]
    fn parse_and_display() {
        let g = GroupElement::parse("(1 2)", "s1 s3 s3 s2").unwrap();
        assert_eq!(g.to_string(), "(1 2) s1 s2");
        assert!(GroupElement::parse("id", "s1 t2").is_err());
        assert_eq!(GroupElement::parse("id", "s7"), Err(Error::InvalidLetter(7)));
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"perm":"(1 2)","word":["s1","s2"]}"#);
    }

    fn element() -> impl Strategy<Value = GroupElement> {
        (0usize..24, prop::collection::vec(1u32..=4, 0..10))
            .prop_map(|(p, w)| GroupElement::normal_form(Permutation::all()[p], &w).unwrap())
    }

    proptest! {
        #[test]
        fn words_are_reduced(g in element()) {
            prop_assert!(g.word().windows(2).all(|w| w[0] != w[1]));
        }

        #[test]
        fn inverse_and_associativity(a in element(), b in element(), c in element()) {
            prop_assert!(a.multiply(&a.inverse()).is_identity());
            prop_assert!(a.inverse().multiply(&a).is_identity());
            prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
        }
    }
}
