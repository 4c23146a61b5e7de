use std::collections::BTreeSet;

use serde::Serialize;

use super::CoxeterDiagram;
use crate::group::Permutation;
use crate::model::RootLabel;

/// A vertex permutation: `images[v]` is the image position of vertex `v`.
pub type VertexPermutation = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomorphismReport {
    pub order: usize,
    /// A generating set, as label maps `(source, image)` of moved vertices.
    pub generators: Vec<Vec<(RootLabel, RootLabel)>>,
    /// Whether the automorphisms are exactly the images of the 24 index
    /// permutations.
    pub equals_s4_image: bool,
    #[serde(skip)]
    pub elements: Vec<VertexPermutation>,
}

/// Vertex permutation induced by relabelling indices; `None` if some image
/// label is not a vertex of the diagram.
pub fn s4_image(d: &CoxeterDiagram, p: Permutation) -> Option<VertexPermutation> {
    d.vertices().iter().map(|l| d.position(l.permuted(|i| p.apply(i)))).collect()
}

fn compose(a: &[usize], b: &[usize]) -> VertexPermutation {
    b.iter().map(|&x| a[x]).collect()
}

fn closure(gens: &[VertexPermutation], n: usize) -> BTreeSet<VertexPermutation> {
    let mut group: BTreeSet<VertexPermutation> = BTreeSet::new();
    let mut stack = vec![(0..n).collect::<Vec<_>>()];
    while let Some(g) = stack.pop() {
        if group.insert(g.clone()) {
            for h in gens {
                stack.push(compose(h, &g));
            }
        }
    }
    group
}

/// All weight-preserving vertex permutations, by backtracking. Candidates
/// for a vertex must have the same multiset of incident weights.
pub fn diagram_automorphisms(d: &CoxeterDiagram) -> AutomorphismReport {
    let n = d.len();
    let profile = |v: usize| {
        let mut w: Vec<i64> = (0..n).filter(|&u| u != v).map(|u| d.weight(v, u)).collect();
        w.sort_unstable();
        w
    };
    let profiles: Vec<Vec<i64>> = (0..n).map(profile).collect();
    let mut found = Vec::new();
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn search(
        d: &CoxeterDiagram,
        profiles: &[Vec<i64>],
        v: usize,
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
        found: &mut Vec<VertexPermutation>,
    ) {
        let n = d.len();
        if v == n {
            found.push(images.clone());
            return;
        }
        for cand in 0..n {
            if used[cand] || profiles[cand] != profiles[v] {
                continue;
            }
            if (0..v).all(|u| d.weight(u, v) == d.weight(images[u], cand)) {
                images[v] = cand;
                used[cand] = true;
                search(d, profiles, v + 1, images, used, found);
                used[cand] = false;
            }
        }
    }
    search(d, &profiles, 0, &mut images, &mut used, &mut found);

    let mut generators: Vec<VertexPermutation> = Vec::new();
    let mut span = closure(&generators, n);
    for g in &found {
        if !span.contains(g) {
            generators.push(g.clone());
            span = closure(&generators, n);
        }
    }
    let s4: BTreeSet<VertexPermutation> = Permutation::all().into_iter().filter_map(|p| s4_image(d, p)).collect();
    let all: BTreeSet<VertexPermutation> = found.iter().cloned().collect();
    let label_map = |g: &VertexPermutation| {
        (0..n).filter(|&v| g[v] != v).map(|v| (d.vertices()[v], d.vertices()[g[v]])).collect::<Vec<_>>()
    };
    AutomorphismReport {
        order: found.len(),
        generators: generators.iter().map(label_map).collect(),
        equals_s4_image: s4 == all,
        elements: found,
    }
}
