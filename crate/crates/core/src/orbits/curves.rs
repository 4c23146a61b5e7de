use serde::Serialize;

use super::{serialize_sigma_word, Coords, OrbitContext, Verdict};
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::model::{EnriquesModel, RootLabel, PAIRS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NotCurveReason {
    /// `(x, H) < 0`.
    NegativeDegree,
    /// Descent by the `σ_i` leaves the degree non-positive.
    DegreeNonPositive,
    /// The reduced class is not one of the 16 curve classes.
    ReducedNotACurve,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum CurveOrbit {
    Curve {
        curve: RootLabel,
        #[serde(serialize_with = "serialize_sigma_word")]
        word: Vec<u8>,
    },
    NotInCurveOrbit {
        reason: NotCurveReason,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveClassification {
    pub input: LatticeVector,
    /// `((x, E_ij))` for `ij` = 12, 13, 14, 23, 24, 34.
    pub sextuple: [i64; 6],
    #[serde(flatten)]
    pub orbit: CurveOrbit,
    pub representative: Option<LatticeVector>,
}

impl CurveClassification {
    pub fn curve(&self) -> Option<RootLabel> {
        match self.orbit {
            CurveOrbit::Curve { curve, .. } => Some(curve),
            CurveOrbit::NotInCurveOrbit { .. } => None,
        }
    }
}

impl OrbitContext<'_> {
    pub(crate) fn sextuple_scaled(&self, c: &Coords) -> [i64; 6] {
        PAIRS.map(|(i, j)| self.pair_root(c, RootLabel::Edge(i, j)))
    }

    /// The orbit invariant `((x, E_ij))_{i<j}`.
    pub fn sextuple(&self, x: &LatticeVector) -> Result<[i64; 6]> {
        Ok(self.sextuple_scaled(&self.scale(x)?))
    }

    pub(crate) fn curve_at(&self, c: &Coords) -> Option<RootLabel> {
        RootLabel::curves().find(|&l| self.root(l) == c)
    }

    pub fn classify_curve_class(&self, x: &LatticeVector) -> Result<CurveClassification> {
        let c = self.scale(x)?;
        let norm = self.pair(&c, &c).ok_or_else(|| Error::NotInLattice(x.to_string()))?;
        if norm != -2 {
            return Err(Error::WrongNorm { expected: -2, found: norm.to_string() });
        }
        let sextuple = self.sextuple_scaled(&c);
        let not_curve = |reason, representative| CurveClassification {
            input: x.clone(),
            sextuple,
            orbit: CurveOrbit::NotInCurveOrbit { reason },
            representative,
        };
        if self.degree(&c) < 0 {
            return Ok(not_curve(NotCurveReason::NegativeDegree, None));
        }
        let (rep, mut word, verdict) = self.sigma_descend(&c)?;
        word.reverse();
        let representative = Some(self.unscale(&rep));
        if verdict == Verdict::DegreeNonPositive {
            return Ok(not_curve(NotCurveReason::DegreeNonPositive, representative));
        }
        let Some(curve) = self.curve_at(&rep) else {
            return Ok(not_curve(NotCurveReason::ReducedNotACurve, representative));
        };
        let expected = self.sextuple_scaled(self.root(curve));
        if expected != sextuple {
            return Err(Error::ModelInvariant(format!(
                "sextuple {sextuple:?} of the input differs from {expected:?} of {curve}"
            )));
        }
        Ok(CurveClassification { input: x.clone(), sextuple, orbit: CurveOrbit::Curve { curve, word }, representative })
    }
}

pub fn classify_curve_class(x: &LatticeVector, m: &EnriquesModel) -> Result<CurveClassification> {
    OrbitContext::new(m)?.classify_curve_class(x)
}

pub fn sextuple(x: &LatticeVector, m: &EnriquesModel) -> Result<[i64; 6]> {
    OrbitContext::new(m)?.sextuple(x)
}
