use serde::Serialize;

use super::{enumerate_parabolics, AffineType, CoxeterDiagram, MAX_PARABOLIC_RANK};
use crate::error::Result;
use crate::model::RootLabel;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VolumeWitness {
    pub component: Vec<RootLabel>,
    #[serde(rename = "type")]
    pub affine: AffineType,
    /// Vertices of a maximal parabolic subdiagram containing the component
    /// as a connected component; `None` for a counterexample.
    pub witness: Option<Vec<RootLabel>>,
}

/// Result of the finite-volume test: every connected parabolic subdiagram
/// must be a connected component of some parabolic subdiagram of maximal
/// rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteVolumeReport {
    pub finite_volume: bool,
    pub maximal_rank: usize,
    pub maximal_parabolics: usize,
    pub connected_parabolics: usize,
    pub entries: Vec<VolumeWitness>,
}

impl FiniteVolumeReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &VolumeWitness> {
        self.entries.iter().filter(|e| e.witness.is_none())
    }
}

pub fn check_finite_volume(d: &CoxeterDiagram) -> Result<FiniteVolumeReport> {
    check_finite_volume_with_rank(d, MAX_PARABOLIC_RANK)
}

pub fn check_finite_volume_with_rank(d: &CoxeterDiagram, maximal_rank: usize) -> Result<FiniteVolumeReport> {
    let all = enumerate_parabolics(d)?;
    let maximal: Vec<_> = all.iter().filter(|p| p.total_rank == maximal_rank).collect();
    let connected: Vec<_> = all.iter().filter(|p| p.components.len() == 1).collect();
    let entries: Vec<VolumeWitness> = connected
        .iter()
        .map(|p| {
            let c = &p.components[0];
            let witness =
                maximal.iter().find(|m| m.components.iter().any(|mc| mc.subset == c.subset)).map(|m| m.vertices());
            VolumeWitness { component: c.vertices.clone(), affine: c.affine, witness }
        })
        .collect();
    Ok(FiniteVolumeReport {
        finite_volume: entries.iter().all(|e| e.witness.is_some()),
        maximal_rank,
        maximal_parabolics: maximal.len(),
        connected_parabolics: entries.len(),
        entries,
    })
}
