use serde::Serialize;

use super::{serialize_sigma_word, Coords, OrbitContext};
use crate::error::{Error, Result};
use crate::group::ReflectionLetter;
use crate::lattice::LatticeVector;
use crate::model::{EnriquesModel, RootLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// `(x, G_i) ≥ 0` for every `i`.
    InFundamentalDomain,
    /// Some `(x, G_i) < 0` remains but the degree is no longer positive.
    DegreeNonPositive,
}

/// Outcome of degree descent by the reflections `σ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionResult {
    pub input: LatticeVector,
    pub representative: LatticeVector,
    /// Letters to apply to the representative, first letter first, to
    /// recover the input.
    #[serde(serialize_with = "serialize_sigma_word")]
    pub word: Vec<u8>,
    pub steps: usize,
    pub verdict: Verdict,
}

/// Result of descent by all 20 reflections into the chamber they bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberReduction {
    pub input: LatticeVector,
    pub representative: LatticeVector,
    /// Reflections to apply to the representative, first letter first, to
    /// recover the input.
    pub word: Vec<String>,
    #[serde(skip)]
    pub letters: Vec<ReflectionLetter>,
}

const SIGMAS: [RootLabel; 4] = [RootLabel::G(1), RootLabel::G(2), RootLabel::G(3), RootLabel::G(4)];

impl OrbitContext<'_> {
    /// Scaled form of [`OrbitContext::sigma_reduce`]; letters are returned in
    /// the order they were applied during descent.
    pub(crate) fn sigma_descend(&self, c: &Coords) -> Result<(Coords, Vec<u8>, Verdict)> {
        let mut x = *c;
        let mut applied = Vec::new();
        loop {
            let Some(g) = SIGMAS.iter().copied().find(|&g| self.pair_root(&x, g) < 0) else {
                return Ok((x, applied, Verdict::InFundamentalDomain));
            };
            if self.degree(&x) <= 0 {
                return Ok((x, applied, Verdict::DegreeNonPositive));
            }
            x = self.reflect(&x, g)?;
            let RootLabel::G(i) = g else { unreachable!() };
            applied.push(i);
        }
    }

    /// Repeatedly applies `σ_i` for the smallest `i` with `(x, G_i) < 0`
    /// while the degree stays positive. Each step lowers `(x, H)` by
    /// `2|(x, G_i)|`. Inputs of negative degree are rejected; degree zero is
    /// accepted so that classes such as `E_12` reduce to themselves.
    pub fn sigma_reduce(&self, x: &LatticeVector) -> Result<ReductionResult> {
        let c = self.scale(x)?;
        let deg = self.degree(&c);
        if deg < 0 {
            return Err(Error::Precondition(format!("(x,H) = {deg} is negative")));
        }
        let (rep, mut word, verdict) = self.sigma_descend(&c)?;
        let steps = word.len();
        word.reverse();
        Ok(ReductionResult { input: x.clone(), representative: self.unscale(&rep), word, steps, verdict })
    }

    pub(crate) fn chamber_descend(&self, c: &Coords) -> Result<(Coords, Vec<RootLabel>)> {
        let mut x = *c;
        let mut applied = Vec::new();
        while let Some(r) = RootLabel::ALL.iter().copied().find(|&r| self.pair_root(&x, r) < 0) {
            x = self.reflect(&x, r)?;
            applied.push(r);
        }
        Ok((x, applied))
    }

    /// Moves a vector of the closed positive cone into the chamber cut out
    /// by all 20 roots, reflecting in the first root that pairs negatively.
    /// The pairing with the interior vector `4H - Σ E_ij` drops at every
    /// step, which bounds the number of steps.
    pub fn reduce_to_chamber(&self, x: &LatticeVector) -> Result<ChamberReduction> {
        let c = self.scale(x)?;
        let norm = self.pair(&c, &c).ok_or_else(|| Error::NotInLattice(x.to_string()))?;
        if norm < 0 || self.degree(&c) <= 0 {
            return Err(Error::Precondition("vector is not in the closed positive cone".into()));
        }
        debug_assert!(self.interior_degree(&c) >= 0);
        let (rep, mut applied) = self.chamber_descend(&c)?;
        applied.reverse();
        let letters: Vec<ReflectionLetter> = applied
            .into_iter()
            .map(|r| match r {
                RootLabel::G(i) => ReflectionLetter::Sigma(i),
                other => ReflectionLetter::Curve(other),
            })
            .collect();
        Ok(ChamberReduction {
            input: x.clone(),
            representative: self.unscale(&rep),
            word: letters.iter().map(ToString::to_string).collect(),
            letters,
        })
    }
}

pub fn sigma_reduce(x: &LatticeVector, m: &EnriquesModel) -> Result<ReductionResult> {
    OrbitContext::new(m)?.sigma_reduce(x)
}
