use rayon::prelude::*;
use serde::Serialize;

use super::{classify_component, AffineType, CensusEntry, CoxeterDiagram, Subset};
use crate::error::Result;
use crate::model::RootLabel;

/// Rank of a maximal parabolic subdiagram for a rank-10 hyperbolic lattice.
pub const MAX_PARABOLIC_RANK: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub vertices: Vec<RootLabel>,
    #[serde(rename = "type")]
    pub affine: AffineType,
    #[serde(skip)]
    pub subset: Subset,
}

/// A parabolic subdiagram: pairwise orthogonal affine components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParabolicSubdiagram {
    pub components: Vec<Component>,
    pub total_rank: usize,
    /// Vertex counts from (10A, 6B, 4C).
    pub census: [usize; 3],
    #[serde(skip)]
    pub subset: Subset,
}

impl ParabolicSubdiagram {
    /// E.g. `E7~+A1~`, components in E, D, A order with larger rank first.
    pub fn type_name(&self) -> String {
        self.components.iter().map(|c| c.affine.to_string()).collect::<Vec<_>>().join("+")
    }

    pub fn vertices(&self) -> Vec<RootLabel> {
        let mut v: Vec<RootLabel> = self.components.iter().flat_map(|c| c.vertices.iter().copied()).collect();
        v.sort();
        v
    }

    pub fn census_entry(&self) -> CensusEntry {
        CensusEntry { type_name: self.type_name(), vertices: self.vertices(), census: self.census }
    }

    /// Analyses a subset; `None` unless every component is affine.
    pub fn from_subset(d: &CoxeterDiagram, s: Subset) -> Result<Option<Self>> {
        if s == 0 {
            return Ok(None);
        }
        let mut components = Vec::new();
        for c in d.components(s) {
            match classify_component(d, c)? {
                Some(affine) => components.push(Component { vertices: d.labels(c), affine, subset: c }),
                None => return Ok(None),
            }
        }
        components.sort_by(|a, b| a.affine.cmp(&b.affine).then_with(|| a.vertices.cmp(&b.vertices)));
        let total_rank = components.iter().map(|c| c.affine.rank).sum();
        Ok(Some(Self { components, total_rank, census: d.census(s), subset: s }))
    }
}

fn sort_canonically(list: &mut [ParabolicSubdiagram]) {
    list.sort_by(|a, b| a.type_name().cmp(&b.type_name()).then_with(|| a.vertices().cmp(&b.vertices())));
}

/// All vertex subsets with negative semidefinite Gram, found by extending
/// sets in increasing vertex order. Semidefiniteness passes to subsets, so
/// pruning a failing set loses nothing. Sorted ascending.
pub fn enumerate_nsd_subsets(d: &CoxeterDiagram) -> Vec<Subset> {
    fn extend(d: &CoxeterDiagram, s: Subset, next: usize, out: &mut Vec<Subset>) {
        out.push(s);
        for v in next..d.len() {
            let t = s | 1 << v;
            if d.definiteness(t).is_negative_semidefinite() {
                extend(d, t, v + 1, out);
            }
        }
    }
    let mut all: Vec<Subset> = (0..d.len())
        .into_par_iter()
        .flat_map_iter(|v| {
            let mut out = Vec::new();
            extend(d, 1 << v, v + 1, &mut out);
            out
        })
        .collect();
    all.push(0);
    all.sort_unstable();
    all
}

/// All parabolic subdiagrams (any rank), canonically sorted.
pub fn enumerate_parabolics(d: &CoxeterDiagram) -> Result<Vec<ParabolicSubdiagram>> {
    let candidates = enumerate_nsd_subsets(d);
    let found: Vec<Option<ParabolicSubdiagram>> =
        candidates.par_iter().map(|&s| ParabolicSubdiagram::from_subset(d, s)).collect::<Result<_>>()?;
    let mut list: Vec<ParabolicSubdiagram> = found.into_iter().flatten().collect();
    sort_canonically(&mut list);
    Ok(list)
}

/// Parabolic subdiagrams of rank [`MAX_PARABOLIC_RANK`].
pub fn enumerate_max_parabolics(d: &CoxeterDiagram) -> Result<Vec<ParabolicSubdiagram>> {
    Ok(enumerate_parabolics(d)?.into_iter().filter(|p| p.total_rank == MAX_PARABOLIC_RANK).collect())
}

/// Unpruned scan over all `2^n` subsets, for cross-checking the pruned
/// search.
pub fn enumerate_parabolics_exhaustive(d: &CoxeterDiagram) -> Result<Vec<ParabolicSubdiagram>> {
    let found: Vec<Option<ParabolicSubdiagram>> = (1..=d.full())
        .into_par_iter()
        .map(|s| {
            if d.definiteness(s).is_negative_semidefinite() {
                ParabolicSubdiagram::from_subset(d, s)
            } else {
                Ok(None)
            }
        })
        .collect::<Result<_>>()?;
    let mut list: Vec<ParabolicSubdiagram> = found.into_iter().flatten().collect();
    sort_canonically(&mut list);
    Ok(list)
}
