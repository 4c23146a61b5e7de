use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{1, 2, 3, 4}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation([u8; 4]);

impl Permutation {
    pub const IDENTITY: Self = Self([1, 2, 3, 4]);

    /// From the images of `1, 2, 3, 4`.
    pub fn from_images(images: [u8; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &x in &images {
            if !(1..=4).contains(&x) || seen[(x - 1) as usize] {
                return Err(Error::Parse(format!("{images:?} is not a permutation of 1..4")));
            }
            seen[(x - 1) as usize] = true;
        }
        Ok(Self(images))
    }

    pub fn transposition(a: u8, b: u8) -> Self {
        let mut images = [1, 2, 3, 4];
        images.swap((a - 1) as usize, (b - 1) as usize);
        Self(images)
    }

    pub fn images(self) -> [u8; 4] {
        self.0
    }

    pub fn apply(self, i: u8) -> u8 {
        self.0[(i - 1) as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Self) -> Self {
        Self(other.0.map(|i| self.apply(i)))
    }

    pub fn inverse(self) -> Self {
        let mut inv = [0; 4];
        for (i, &x) in self.0.iter().enumerate() {
            inv[(x - 1) as usize] = i as u8 + 1;
        }
        Self(inv)
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }

    /// All 24 permutations in lexicographic order of their image arrays.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::with_capacity(24);
        for a in 1..=4u8 {
            for b in 1..=4u8 {
                for c in 1..=4u8 {
                    for d in 1..=4u8 {
                        if let Ok(p) = Self::from_images([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }

    fn cycles(self) -> Vec<Vec<u8>> {
        let mut seen = [false; 4];
        let mut out = Vec::new();
        for start in 1..=4u8 {
            if seen[(start - 1) as usize] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[(start - 1) as usize] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[(x - 1) as usize] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }
}

/// Cycle notation, e.g. `(1 2)(3 4)`, or `id`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("id");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

/// Accepts `id`, `()` or a product of cycles such as `(1 2)(3 4)` or
/// `(1 2 3)`. Cycles compose right to left.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "id" {
            return Ok(Self::IDENTITY);
        }
        let bad = || Error::Parse(format!("invalid permutation `{s}`"));
        let mut result = Self::IDENTITY;
        let mut rest = s;
        let mut cycles = Vec::new();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let end = body.find(')').ok_or_else(bad)?;
            let elems: Vec<u8> = body[..end]
                .chars()
                .filter(|c| !c.is_whitespace() && *c != ',')
                .map(|c| c.to_digit(10).filter(|d| (1..=4).contains(d)).map(|d| d as u8).ok_or_else(bad))
                .collect::<Result<_>>()?;
            let mut distinct = elems.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() != elems.len() {
                return Err(bad());
            }
            cycles.push(elems);
            rest = body[end + 1..].trim_start();
        }
        for c in cycles.iter().rev() {
            let mut images = [1, 2, 3, 4];
            for (k, &x) in c.iter().enumerate() {
                images[(x - 1) as usize] = c[(k + 1) % c.len()];
            }
            result = Self(images).compose(result);
        }
        Ok(result)
    }
}
