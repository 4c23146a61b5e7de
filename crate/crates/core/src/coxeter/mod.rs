//! Weighted Coxeter diagram of the 20 roots and the searches run on it.
//!
//! Vertex subsets are `u32` bitmasks over the diagram's vertex positions.

mod affine;
mod automorphism;
mod parabolic;
mod volume;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{classify_integer_gram, Definiteness};
use crate::model::{Configuration, EnriquesModel, RootLabel};

pub use affine::{classify_component, AffineLetter, AffineType};
pub use automorphism::{diagram_automorphisms, s4_image, AutomorphismReport, VertexPermutation};
pub use parabolic::{
    enumerate_max_parabolics, enumerate_nsd_subsets, enumerate_parabolics, enumerate_parabolics_exhaustive, Component,
    ParabolicSubdiagram, MAX_PARABOLIC_RANK,
};
pub use volume::{check_finite_volume, check_finite_volume_with_rank, FiniteVolumeReport, VolumeWitness};

/// Vertex subset as a bitmask.
pub type Subset = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterDiagram {
    vertices: Vec<RootLabel>,
    weights: Vec<Vec<i64>>,
}

/// Builds the diagram on the 20 roots; edge weight = pairing.
pub fn build_diagram(m: &EnriquesModel) -> Result<CoxeterDiagram> {
    let vertices = RootLabel::ALL.to_vec();
    let weights: Vec<Vec<i64>> =
        vertices.iter().map(|&a| vertices.iter().map(|&b| m.pairing(a, b)).collect()).collect();
    CoxeterDiagram::new(vertices, weights)
}

impl CoxeterDiagram {
    /// Off-diagonal weights must lie in `{0, 1, 2}`: a larger pairing would
    /// be a dotted edge, which this engine does not handle.
    pub fn new(vertices: Vec<RootLabel>, weights: Vec<Vec<i64>>) -> Result<Self> {
        let n = vertices.len();
        if n > Subset::BITS as usize {
            return Err(Error::Precondition(format!("diagram has {n} vertices, at most 32 supported")));
        }
        if weights.len() != n || weights.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: weights.len() });
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let w = weights[i][j];
                if w != weights[j][i] {
                    return Err(Error::NotSymmetric(i, j));
                }
                if !(0..=2).contains(&w) {
                    return Err(Error::ModelInvariant(format!(
                        "weight ({}, {}) = {w} is a dotted or Lannér edge",
                        vertices[i], vertices[j]
                    )));
                }
            }
        }
        Ok(Self { vertices, weights })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[RootLabel] {
        &self.vertices
    }

    pub fn weight(&self, u: usize, v: usize) -> i64 {
        self.weights[u][v]
    }

    pub fn weight_between(&self, a: RootLabel, b: RootLabel) -> Option<i64> {
        let i = self.position(a)?;
        let j = self.position(b)?;
        Some(self.weights[i][j])
    }

    pub fn position(&self, label: RootLabel) -> Option<usize> {
        self.vertices.iter().position(|&v| v == label)
    }

    pub fn configuration(&self, v: usize) -> Configuration {
        self.vertices[v].configuration()
    }

    pub fn full(&self) -> Subset {
        if self.len() == 32 {
            u32::MAX
        } else {
            (1u32 << self.len()) - 1
        }
    }

    /// Subdiagram on the given positions, in the given order.
    pub fn restrict(&self, positions: &[usize]) -> Self {
        Self {
            vertices: positions.iter().map(|&i| self.vertices[i]).collect(),
            weights: positions.iter().map(|&i| positions.iter().map(|&j| self.weights[i][j]).collect()).collect(),
        }
    }

    /// Subdiagram on the vertices with the given configurations.
    pub fn restrict_to(&self, configs: &[Configuration]) -> Self {
        let keep: Vec<usize> = (0..self.len()).filter(|&v| configs.contains(&self.configuration(v))).collect();
        self.restrict(&keep)
    }

    pub fn members(&self, s: Subset) -> Vec<usize> {
        (0..self.len()).filter(|&v| s & (1 << v) != 0).collect()
    }

    pub fn labels(&self, s: Subset) -> Vec<RootLabel> {
        self.members(s).into_iter().map(|v| self.vertices[v]).collect()
    }

    pub fn subset_of(&self, labels: &[RootLabel]) -> Option<Subset> {
        labels.iter().try_fold(0u32, |acc, &l| Some(acc | 1 << self.position(l)?))
    }

    /// Gram matrix (diagonal −2, off-diagonal weights) of a subset.
    pub fn gram(&self, s: Subset) -> Vec<Vec<i64>> {
        let idx = self.members(s);
        idx.iter().map(|&i| idx.iter().map(|&j| if i == j { -2 } else { self.weights[i][j] }).collect()).collect()
    }

    pub fn definiteness(&self, s: Subset) -> Definiteness {
        if s == 0 {
            return Definiteness::NegativeDefinite;
        }
        classify_integer_gram(&self.gram(s))
    }

    pub fn neighbours(&self, v: usize) -> Subset {
        (0..self.len()).filter(|&u| u != v && self.weights[v][u] != 0).fold(0, |acc, u| acc | 1 << u)
    }

    /// Connected components of the induced subgraph.
    pub fn components(&self, s: Subset) -> Vec<Subset> {
        let mut rest = s;
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            let mut comp: Subset = 1 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.neighbours(v) & s & !comp;
                comp |= new;
                frontier |= new;
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self, s: Subset) -> bool {
        s != 0 && self.components(s).len() == 1
    }

    /// Vertex counts from 10A, 6B and 4C.
    pub fn census(&self, s: Subset) -> [usize; 3] {
        let mut c = [0; 3];
        for v in self.members(s) {
            c[match self.configuration(v) {
                Configuration::TenA => 0,
                Configuration::SixB => 1,
                Configuration::FourC => 2,
            }] += 1;
        }
        c
    }

    /// Lannér subdiagrams: subsets of at most five vertices whose Gram is
    /// not negative semidefinite while every proper subset is negative
    /// definite.
    pub fn lanner_subdiagrams(&self) -> Vec<Subset> {
        let n = self.len();
        let mut found = Vec::new();
        let mut definite: std::collections::HashSet<Subset> = (0..n).map(|v| 1 << v).collect();
        for size in 2..=5usize.min(n) {
            let mut next = std::collections::HashSet::new();
            for s in subsets_of_size(n, size) {
                let maximal_proper_definite = self.members(s).iter().all(|&v| definite.contains(&(s & !(1 << v))));
                if !maximal_proper_definite {
                    continue;
                }
                match self.definiteness(s) {
                    Definiteness::NegativeDefinite => {
                        next.insert(s);
                    }
                    d if !d.is_negative_semidefinite() => found.push(s),
                    _ => {}
                }
            }
            definite = next;
        }
        found
    }
}

fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = Subset> {
    (0u64..1 << n).map(|s| s as Subset).filter(move |s| s.count_ones() as usize == k)
}

/// Off-diagonal entries of a pairing table outside `{0, 1, 2}`, as
/// `(row, column, value)` with `row < column`.
pub fn dotted_entries(gram: &[Vec<i64>]) -> Vec<(usize, usize, i64)> {
    let mut out = Vec::new();
    for (i, row) in gram.iter().enumerate() {
        for (j, &v) in row.iter().enumerate().skip(i + 1) {
            if !(0..=2).contains(&v) {
                out.push((i, j, v));
            }
        }
    }
    out
}

/// JSON census entry: `{type, vertices, census}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    #[serde(rename = "type")]
    pub type_name: String,
    pub vertices: Vec<RootLabel>,
    pub census: [usize; 3],
}
