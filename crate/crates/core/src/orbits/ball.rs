use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{serialize_sigma_word, Coords, OrbitContext};
use crate::error::Result;
use crate::lattice::LatticeVector;
use crate::model::{Configuration, EnriquesModel, RootLabel, RANK};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveVertex {
    pub id: usize,
    pub name: String,
    pub seed: RootLabel,
    /// The vertex is `σ_{w_1} ⋯ σ_{w_k}(seed)`.
    #[serde(serialize_with = "serialize_sigma_word")]
    pub word: Vec<u8>,
    pub vector: LatticeVector,
    pub degree: i64,
}

/// Finite piece of the dual graph of curves: images of the 16 curve classes
/// under reduced words of bounded length.
#[derive(Clone, Debug, Serialize)]
pub struct CurveGraph {
    pub max_word_len: usize,
    pub vertices: Vec<CurveVertex>,
    /// `[u, v, (u, v)]` for `u < v` with nonzero pairing.
    pub edges: Vec<(usize, usize, i64)>,
    /// Every vertex has norm -2 and nonnegative degree.
    pub all_valid: bool,
    #[serde(skip)]
    adjacency: Vec<Vec<(usize, i64)>>,
}

impl CurveGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn weight(&self, u: usize, v: usize) -> i64 {
        if u == v {
            return -2;
        }
        let row = &self.adjacency[u];
        row.binary_search_by_key(&v, |e| e.0).map_or(0, |k| row[k].1)
    }

    /// Vertices joined to `v` by a simple edge (pairing 1).
    pub fn simple_neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().filter(|e| e.1 == 1).map(|e| e.0)
    }

    pub fn seed_vertex(&self, label: RootLabel) -> Option<usize> {
        self.vertices.iter().position(|v| v.word.is_empty() && v.seed == label)
    }
}

fn vertex_name(seed: RootLabel, word: &[u8]) -> String {
    if word.is_empty() {
        return seed.to_string();
    }
    let w: String = word.iter().map(|i| format!("s{i}")).collect();
    format!("{w}({seed})")
}

impl OrbitContext<'_> {
    pub fn orbit_ball(&self, max_word_len: usize) -> Result<CurveGraph> {
        let mut coords: Vec<Coords> = Vec::new();
        let mut meta: Vec<(RootLabel, Vec<u8>)> = Vec::new();
        let mut seen: HashMap<Coords, usize> = HashMap::new();
        for l in RootLabel::curves() {
            let c = *self.root(l);
            if seen.insert(c, coords.len()).is_none() {
                coords.push(c);
                meta.push((l, Vec::new()));
            }
        }
        let mut frontier: Vec<usize> = (0..coords.len()).collect();
        for _ in 0..max_word_len {
            let images: Vec<Vec<(u8, Coords)>> = frontier
                .par_iter()
                .map(|&v| {
                    (1..=4u8)
                        .filter(|&i| self.pair_root(&coords[v], RootLabel::G(i)) != 0)
                        .map(|i| self.reflect(&coords[v], RootLabel::G(i)).map(|c| (i, c)))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            let mut next = Vec::new();
            for (&v, imgs) in frontier.iter().zip(images) {
                for (i, c) in imgs {
                    if seen.contains_key(&c) {
                        continue;
                    }
                    seen.insert(c, coords.len());
                    let mut word = vec![i];
                    word.extend_from_slice(&meta[v].1);
                    next.push(coords.len());
                    coords.push(c);
                    meta.push((meta[v].0, word));
                }
            }
            frontier = next;
        }
        let rows: Vec<Coords> =
            coords.iter().map(|c| std::array::from_fn(|i| (0..RANK).map(|j| self.gram[i][j] * c[j]).sum())).collect();
        let d2 = (self.den as i128) * (self.den as i128);
        let adjacency: Vec<Vec<(usize, i64)>> = (0..coords.len())
            .into_par_iter()
            .map(|u| {
                (0..coords.len())
                    .filter(|&v| v != u)
                    .filter_map(|v| {
                        let s: i128 = rows[u].iter().zip(&coords[v]).map(|(a, b)| *a as i128 * *b as i128).sum();
                        let w = (s / d2) as i64;
                        (w != 0).then_some((v, w))
                    })
                    .collect()
            })
            .collect();
        let edges = adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |e| e.0 > u).map(move |&(v, w)| (u, v, w)))
            .collect();
        let all_valid = coords.iter().all(|c| self.pair(c, c) == Some(-2) && self.degree(c) >= 0);
        let vertices = coords
            .iter()
            .zip(meta)
            .enumerate()
            .map(|(id, (c, (seed, word)))| CurveVertex {
                id,
                name: vertex_name(seed, &word),
                seed,
                word,
                vector: self.unscale(c),
                degree: self.degree(c),
            })
            .collect();
        Ok(CurveGraph { max_word_len, vertices, edges, all_valid, adjacency })
    }
}

pub fn orbit_ball(m: &EnriquesModel, max_word_len: usize) -> Result<CurveGraph> {
    OrbitContext::new(m)?.orbit_ball(max_word_len)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    /// A triangle of simple edges through the vertex.
    I3,
    /// An induced 8-cycle of simple edges through the vertex.
    I8,
    /// An induced `E6~` subgraph with the vertex as an end.
    IvStarEnd,
}

impl Serialize for Property {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Self::I3 => "I3",
            Self::I8 => "I8",
            Self::IvStarEnd => "IV*-end",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterizationEntry {
    pub curve: RootLabel,
    pub property: Property,
    pub expected: bool,
    /// Vertex names of a witness subgraph, if one was found.
    pub witness: Option<Vec<String>>,
    pub passed: bool,
    /// Set when absence was only checked inside the finite ball.
    pub bounded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterizationReport {
    pub max_word_len: usize,
    pub vertices: usize,
    pub entries: Vec<CharacterizationEntry>,
    pub passed: bool,
}

fn find_triangle(g: &CurveGraph, v: usize) -> Option<Vec<usize>> {
    let n: Vec<usize> = g.simple_neighbours(v).collect();
    for (k, &a) in n.iter().enumerate() {
        for &b in &n[k + 1..] {
            if g.weight(a, b) == 1 {
                return Some(vec![v, a, b]);
            }
        }
    }
    None
}

fn extend_cycle(g: &CurveGraph, path: &mut Vec<usize>) -> bool {
    let last = *path.last().expect("nonempty path");
    let k = path.len();
    let candidates: Vec<usize> = g.simple_neighbours(last).collect();
    for c in candidates {
        if k == 7 {
            if g.weight(c, path[0]) == 1 && path[1..k - 1].iter().all(|&p| g.weight(c, p) == 0) {
                path.push(c);
                return true;
            }
            continue;
        }
        if path[..k - 1].iter().all(|&p| g.weight(c, p) == 0) {
            path.push(c);
            if extend_cycle(g, path) {
                return true;
            }
            path.pop();
        }
    }
    false
}

fn find_octagon(g: &CurveGraph, v: usize) -> Option<Vec<usize>> {
    let mut path = vec![v];
    extend_cycle(g, &mut path).then_some(path)
}

fn orthogonal(g: &CurveGraph, x: usize, ys: &[usize]) -> bool {
    ys.iter().all(|&y| g.weight(x, y) == 0)
}

/// `E6~` with `v` at the end of an arm: `v - a - c` plus two more arms of
/// length two at the centre `c`.
fn find_iv_star_end(g: &CurveGraph, v: usize) -> Option<Vec<usize>> {
    for a in g.simple_neighbours(v) {
        for c in g.simple_neighbours(a) {
            if !orthogonal(g, c, &[v]) {
                continue;
            }
            let mut arms = Vec::new();
            for b1 in g.simple_neighbours(c) {
                if !orthogonal(g, b1, &[v, a]) {
                    continue;
                }
                for b2 in g.simple_neighbours(b1) {
                    if orthogonal(g, b2, &[v, a, c]) {
                        arms.push((b1, b2));
                    }
                }
            }
            for (k, &(b1, b2)) in arms.iter().enumerate() {
                for &(d1, d2) in &arms[k + 1..] {
                    if orthogonal(g, d1, &[b1, b2]) && orthogonal(g, d2, &[b1, b2]) {
                        return Some(vec![v, a, c, b1, b2, d1, d2]);
                    }
                }
            }
        }
    }
    None
}

/// Checks the subgraph characterizations of the curve orbits on the seeds
/// of the ball: I3 through each 6B curve, I8 through each 10A curve, an
/// `E6~` ending at each `E_i`, and no such `E6~` ending at any `E_ij`. The
/// last check only covers the ball.
pub fn verify_orbit_characterizations(ball: &CurveGraph) -> CharacterizationReport {
    let mut entries = Vec::new();
    let names = |w: Vec<usize>| w.into_iter().map(|i| ball.vertices[i].name.clone()).collect::<Vec<_>>();
    for label in RootLabel::curves() {
        let Some(v) = ball.seed_vertex(label) else { continue };
        let mut checks = Vec::new();
        match label.configuration() {
            Configuration::SixB => checks.push((Property::I3, true)),
            Configuration::TenA => {
                checks.push((Property::I8, true));
                checks.push((Property::IvStarEnd, matches!(label, RootLabel::Vertex(_))));
            }
            Configuration::FourC => {}
        }
        for (property, expected) in checks {
            let witness = match property {
                Property::I3 => find_triangle(ball, v),
                Property::I8 => find_octagon(ball, v),
                Property::IvStarEnd => find_iv_star_end(ball, v),
            };
            entries.push(CharacterizationEntry {
                curve: label,
                property,
                expected,
                passed: witness.is_some() == expected,
                witness: witness.map(names),
                bounded: !expected,
            });
        }
    }
    CharacterizationReport {
        max_word_len: ball.max_word_len,
        vertices: ball.len(),
        passed: entries.iter().all(|e| e.passed),
        entries,
    }
}
