//! Orbits of curves and elliptic pencils under the automorphism group
//! `S4 ⋉ ⟨σ_1, …, σ_4⟩`.
//!
//! All work happens in scaled integer coordinates: a vector `x` of the
//! Neron-Severi lattice is stored as `D·x` for a fixed denominator `D` that
//! clears the dual of the 10A lattice. Pairings with the 20 roots and with
//! `H` are exact integer dot products against precomputed rows.

mod ball;
mod curves;
mod enumerate;
mod pencils;
mod reduce;

use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serializer;

pub use ball::{
    orbit_ball, verify_orbit_characterizations, CharacterizationEntry, CharacterizationReport, CurveGraph, CurveVertex,
    Property,
};
pub use curves::{classify_curve_class, sextuple, CurveClassification, CurveOrbit, NotCurveReason};
pub use enumerate::{enumerate_vectors, EnumeratedVector};
pub use pencils::{
    classify_pencil, pencil_rays, ComponentKind, Fiber, FiberComponent, PencilClassification, PencilRay, PencilReport,
    PencilTable, PencilTypeRow,
};
pub use reduce::{sigma_reduce, ChamberReduction, ReductionResult, Verdict};

use crate::error::{Error, Result};
use crate::lattice::{coordinates_in, LatticeVector, Rational};
use crate::model::{EnriquesModel, RootLabel, RANK};

pub(crate) type Coords = [i64; RANK];

/// Precomputed integer data for orbit computations on one model.
pub struct OrbitContext<'m> {
    model: &'m EnriquesModel,
    den: i64,
    gram: [[i64; RANK]; RANK],
    roots: Vec<Coords>,
    root_rows: Vec<Coords>,
    h: Coords,
    h_row: Coords,
    interior_row: Coords,
    lattice_basis: Vec<LatticeVector>,
    ns: BasisCoords,
    pencils: OnceLock<Result<PencilTable>>,
}

impl<'m> OrbitContext<'m> {
    pub fn new(model: &'m EnriquesModel) -> Result<Self> {
        let gram =
            model.gram10().to_i64().ok_or_else(|| Error::ModelInvariant("10A gram matrix is not integral".into()))?;
        let inverse = crate::lattice::inverse(model.gram10())?;
        let mut den = 1i64;
        let mut absorb = |r: &Rational| -> Result<()> {
            let d = r.denom().to_i64().ok_or_else(|| Error::ModelInvariant("denominator too large".into()))?;
            den = den.lcm(&d);
            Ok(())
        };
        for row in &inverse {
            for e in row {
                absorb(e)?;
            }
        }
        for l in RootLabel::ALL {
            for c in model.class_vector(l).coords() {
                absorb(c)?;
            }
        }
        let gram_arr: [[i64; RANK]; RANK] = std::array::from_fn(|i| std::array::from_fn(|j| gram[i][j]));
        let mut ctx = Self {
            model,
            den,
            gram: gram_arr,
            roots: Vec::new(),
            root_rows: Vec::new(),
            h: [0; RANK],
            h_row: [0; RANK],
            interior_row: [0; RANK],
            lattice_basis: model.curve_lattice_basis(),
            ns: BasisCoords::new(&model.neron_severi_basis()?, den)?,
            pencils: OnceLock::new(),
        };
        for l in RootLabel::ALL {
            let c = ctx.scale_exact(model.class_vector(l))?;
            ctx.root_rows.push(ctx.row_of(&c)?);
            ctx.roots.push(c);
        }
        ctx.h = ctx.scale_exact(model.h())?;
        ctx.h_row = ctx.row_of(&ctx.h)?;
        // 4H - Σ E_ij pairs positively with every root
        let mut w = ctx.h.map(|v| 4 * v);
        for l in RootLabel::ALL.iter().filter(|l| matches!(l, RootLabel::Edge(..))) {
            let e = &ctx.roots[l.index()];
            for k in 0..RANK {
                w[k] -= e[k];
            }
        }
        ctx.interior_row = ctx.row_of(&w)?;
        Ok(ctx)
    }

    pub fn model(&self) -> &EnriquesModel {
        self.model
    }

    /// `D·v` for a vector already known to have denominators dividing `D`.
    fn scale_exact(&self, v: &LatticeVector) -> Result<Coords> {
        if v.dim() != RANK {
            return Err(Error::DimensionMismatch { expected: RANK, found: v.dim() });
        }
        let mut out = [0i64; RANK];
        for (k, c) in v.coords().iter().enumerate() {
            let s = c * Rational::from_integer(self.den.into());
            if !s.is_integer() {
                return Err(Error::NotInLattice(v.to_string()));
            }
            out[k] = s.to_integer().to_i64().ok_or_else(|| Error::NotInLattice(v.to_string()))?;
        }
        Ok(out)
    }

    /// Integer row `r` with `(x, y) = r·(D·x) / D` for the vector `y = c/D`.
    fn row_of(&self, c: &Coords) -> Result<Coords> {
        let mut row = [0i64; RANK];
        for (i, r) in row.iter_mut().enumerate() {
            let s: i64 = (0..RANK).map(|j| self.gram[i][j] * c[j]).sum();
            if s % self.den != 0 {
                return Err(Error::ModelInvariant("root pairs non-integrally with the 10A basis".into()));
            }
            *r = s / self.den;
        }
        Ok(row)
    }

    /// Converts and checks that `v` pairs integrally with `H` and every root.
    pub(crate) fn scale(&self, v: &LatticeVector) -> Result<Coords> {
        let c = self.scale_exact(v)?;
        let ok = |row: &Coords| dot(row, &c) % (self.den as i128) == 0;
        if !ok(&self.h_row) || !self.root_rows.iter().all(ok) {
            return Err(Error::NotInLattice(v.to_string()));
        }
        Ok(c)
    }

    pub(crate) fn unscale(&self, c: &Coords) -> LatticeVector {
        LatticeVector::new(c.iter().map(|&v| Rational::new(v.into(), self.den.into())).collect())
    }

    fn pair_row(&self, row: &Coords, c: &Coords) -> i64 {
        let s = dot(row, c);
        debug_assert!(s % self.den as i128 == 0);
        (s / self.den as i128) as i64
    }

    pub(crate) fn pair_root(&self, c: &Coords, label: RootLabel) -> i64 {
        self.pair_row(&self.root_rows[label.index()], c)
    }

    pub(crate) fn degree(&self, c: &Coords) -> i64 {
        self.pair_row(&self.h_row, c)
    }

    pub(crate) fn interior_degree(&self, c: &Coords) -> i64 {
        self.pair_row(&self.interior_row, c)
    }

    /// Exact `(x, y)`; `None` when the value is not an integer.
    pub(crate) fn pair(&self, x: &Coords, y: &Coords) -> Option<i64> {
        let mut s: i128 = 0;
        for i in 0..RANK {
            let gi: i128 = (0..RANK).map(|j| self.gram[i][j] as i128 * y[j] as i128).sum();
            s += x[i] as i128 * gi;
        }
        let d2 = (self.den as i128) * (self.den as i128);
        (s % d2 == 0).then(|| (s / d2) as i64)
    }

    /// `x + (x, r) r`, the reflection in the root `r`.
    pub(crate) fn reflect(&self, c: &Coords, label: RootLabel) -> Result<Coords> {
        let k = self.pair_root(c, label);
        let r = &self.roots[label.index()];
        let mut out = *c;
        for i in 0..RANK {
            out[i] = r[i]
                .checked_mul(k)
                .and_then(|t| t.checked_add(c[i]))
                .ok_or_else(|| Error::Precondition("coordinates overflow during reflection".into()))?;
        }
        Ok(out)
    }

    pub(crate) fn root(&self, label: RootLabel) -> &Coords {
        &self.roots[label.index()]
    }

    /// Coordinates in a Z-basis of the Neron-Severi lattice.
    pub(crate) fn ns_coords(&self, c: &Coords) -> Option<Coords> {
        self.ns.coords(c)
    }

    pub fn pencil_table(&self) -> Result<&PencilTable> {
        self.pencils.get_or_init(|| PencilTable::build(self)).as_ref().map_err(Clone::clone)
    }
}

/// Integer coordinates with respect to a lattice basis, read off from
/// scaled coordinates.
struct BasisCoords {
    inv: [[i64; RANK]; RANK],
    den: i64,
}

impl BasisCoords {
    fn new(basis: &[LatticeVector], scale: i64) -> Result<Self> {
        if basis.len() != RANK {
            return Err(Error::ModelInvariant(format!("lattice basis has {} vectors", basis.len())));
        }
        let rows: Vec<Vec<Rational>> = (0..RANK)
            .map(|k| coordinates_in(basis, &LatticeVector::unit(RANK, k)))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::ModelInvariant("lattice basis is singular".into()))?;
        let mut l = 1i64;
        for r in rows.iter().flatten() {
            l = l.lcm(&r.denom().to_i64().ok_or_else(|| Error::ModelInvariant("denominator too large".into()))?);
        }
        let mut inv = [[0i64; RANK]; RANK];
        for (i, row) in rows.iter().enumerate() {
            for (j, r) in row.iter().enumerate() {
                let v = r * Rational::from_integer(l.into());
                inv[i][j] = v.to_integer().to_i64().ok_or_else(|| Error::ModelInvariant("entry too large".into()))?;
            }
        }
        Ok(Self { inv, den: l * scale })
    }

    fn coords(&self, x: &Coords) -> Option<Coords> {
        let mut out = [0i64; RANK];
        for (j, o) in out.iter_mut().enumerate() {
            let s: i128 = (0..RANK).map(|i| x[i] as i128 * self.inv[i][j] as i128).sum();
            if s % self.den as i128 != 0 {
                return None;
            }
            *o = i64::try_from(s / self.den as i128).ok()?;
        }
        Some(out)
    }
}

fn dot(a: &Coords, b: &Coords) -> i128 {
    a.iter().zip(b).map(|(x, y)| *x as i128 * *y as i128).sum()
}

pub(crate) fn gcd_all(values: &[i64]) -> i64 {
    values.iter().fold(0i64, |g, v| g.gcd(v))
}

pub(crate) fn serialize_sigma_word<S: Serializer>(word: &[u8], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(word.iter().map(|i| format!("s{i}")))
}
