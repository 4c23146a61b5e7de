mod common;

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use enriques_lattice::coxeter::{
    build_diagram, check_finite_volume, check_finite_volume_with_rank, diagram_automorphisms, dotted_entries,
    enumerate_max_parabolics, enumerate_parabolics, enumerate_parabolics_exhaustive, CoxeterDiagram,
};
use enriques_lattice::model::{build_model, Configuration, RootLabel};

fn diagram() -> CoxeterDiagram {
    build_diagram(&build_model().unwrap()).unwrap()
}

fn labels(names: &[&str]) -> Vec<RootLabel> {
    let mut v: Vec<RootLabel> = names.iter().map(|s| s.parse().unwrap()).collect();
    v.sort();
    v
}

fn weights(d: &CoxeterDiagram) -> Vec<Vec<i64>> {
    (0..d.len()).map(|i| (0..d.len()).map(|j| if i == j { -2 } else { d.weight(i, j) }).collect()).collect()
}

#[test]
fn weights_of_named_pairs() {
    let d = diagram();
    let w = |a: &str, b: &str| d.weight_between(a.parse().unwrap(), b.parse().unwrap()).unwrap();
    assert_eq!(w("E12", "F12"), 2);
    assert_eq!(w("G1", "G2"), 2);
    assert_eq!(w("E1", "F23"), 0);
}

#[test]
fn all_products_are_in_zero_one_two() {
    let m = build_model().unwrap();
    assert!(dotted_entries(m.gram20()).is_empty());
    for (a, row) in m.gram20().iter().enumerate() {
        for (b, &x) in row.iter().enumerate() {
            if a != b {
                assert!((0..=2).contains(&x));
            }
        }
    }
    assert!(diagram().lanner_subdiagrams().is_empty());
}

#[test]
fn maximal_parabolic_census() {
    let d = diagram();
    let maximal = enumerate_max_parabolics(&d).unwrap();
    assert_eq!(maximal.len(), 29);
    let mut by_type: BTreeMap<String, (usize, BTreeSet<[usize; 3]>)> = BTreeMap::new();
    for p in &maximal {
        let e = by_type.entry(p.type_name()).or_default();
        e.0 += 1;
        e.1.insert(p.census);
    }
    let expected = [
        ("E7~+A1~", 12, [8, 1, 1]),
        ("E6~+A2~", 4, [7, 3, 0]),
        ("D6~+A1~+A1~", 6, [8, 1, 2]),
        ("A7~+A1~", 3, [8, 2, 0]),
        ("A5~+A2~+A1~", 4, [7, 3, 1]),
    ];
    assert_eq!(by_type.len(), expected.len());
    for (t, count, census) in expected {
        let (c, cs) = &by_type[t];
        assert_eq!(*c, count, "{t}");
        assert_eq!(cs, &BTreeSet::from([census]), "{t}");
    }
    let entry = maximal[0].census_entry();
    assert_eq!(format!("{}: {}", entry.type_name, by_type[&entry.type_name].0), "A5~+A2~+A1~: 4");
}

#[test]
fn octagon_with_complementary_f_pair_is_a7_plus_a1() {
    let d = diagram();
    let target = labels(&["E1", "E12", "E2", "E23", "E3", "E34", "E4", "E14", "F13", "F24"]);
    let maximal = enumerate_max_parabolics(&d).unwrap();
    let hit = maximal.iter().find(|p| p.vertices() == target).expect("listed");
    assert_eq!(hit.type_name(), "A7~+A1~");
    assert_eq!(d.weight_between("F13".parse().unwrap(), "F24".parse().unwrap()), Some(2));
}

#[test]
fn pruned_search_matches_exhaustive_scan_on_the_full_diagram() {
    let d = diagram();
    let pruned: Vec<_> = enumerate_parabolics(&d).unwrap().iter().map(|p| p.subset).collect();
    let exhaustive: Vec<_> = enumerate_parabolics_exhaustive(&d).unwrap().iter().map(|p| p.subset).collect();
    assert_eq!(pruned, exhaustive);
    // and with the naive charpoly oracle
    let naive: BTreeSet<u32> = common::naive_parabolics(&weights(&d)).into_iter().map(|(s, _)| s).collect();
    assert_eq!(pruned.into_iter().collect::<BTreeSet<_>>(), naive);
}

#[test]
fn pruned_search_matches_naive_oracle_on_random_subdiagrams() {
    let d = diagram();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..100 {
        let size = rng.gen_range(1..=12);
        let mut positions: Vec<usize> = (0..d.len()).collect();
        positions.shuffle(&mut rng);
        positions.truncate(size);
        positions.sort_unstable();
        let sub = d.restrict(&positions);
        let naive: BTreeMap<u32, usize> = common::naive_parabolics(&weights(&sub)).into_iter().collect();
        let pruned: BTreeMap<u32, usize> =
            enumerate_parabolics(&sub).unwrap().iter().map(|p| (p.subset, p.total_rank)).collect();
        assert_eq!(pruned, naive, "positions {positions:?}");
    }
}

/// Finite-volume test on the naive parabolic list: for each
/// connected parabolic subset, whether it is a connected component of some
/// parabolic subset of the given rank. Returns (rank-r count, verdicts).
fn volume_oracle(oracle: &common::SubsetOracle, w: &[Vec<i64>], rank: usize) -> (usize, BTreeMap<u32, bool>) {
    let all = oracle.parabolics();
    let maximal: Vec<u32> = all.iter().filter(|&&(_, r)| r == rank).map(|&(s, _)| s).collect();
    let is_component_of = |c: u32, m: u32| {
        c & m == c
            && (0..w.len())
                .filter(|&i| c >> i & 1 == 1)
                .all(|i| (0..w.len()).filter(|&j| (m & !c) >> j & 1 == 1).all(|j| w[i][j] == 0))
    };
    let verdicts = all
        .iter()
        .filter(|&&(s, r)| r + 1 == s.count_ones() as usize)
        .map(|&(s, _)| (s, maximal.iter().any(|&m| is_component_of(s, m))))
        .collect();
    (maximal.len(), verdicts)
}

fn assert_volume_matches_oracle(d: &CoxeterDiagram, rank: usize) -> enriques_lattice::coxeter::FiniteVolumeReport {
    let r = check_finite_volume_with_rank(d, rank).unwrap();
    let w = weights(d);
    let oracle = common::SubsetOracle::new(&w);
    let (maximal, verdicts) = volume_oracle(&oracle, &w, rank);
    assert_eq!(r.maximal_parabolics, maximal);
    assert_eq!(r.connected_parabolics, verdicts.len());
    let subset = |ls: &[RootLabel]| ls.iter().fold(0u32, |acc, l| acc | 1 << d.position(*l).unwrap());
    for e in &r.entries {
        let c = subset(&e.component);
        assert_eq!(e.witness.is_some(), verdicts[&c], "{:?}", e.component);
        if let Some(wit) = &e.witness {
            let m = subset(wit);
            assert_eq!(oracle.parabolic_rank(m), Some(rank));
            assert_eq!(c & m, c);
        }
    }
    assert_eq!(r.finite_volume, verdicts.values().all(|&v| v));
    r
}

#[test]
fn finite_volume_holds_for_the_full_diagram() {
    let d = diagram();
    let r = assert_volume_matches_oracle(&d, 8);
    assert_eq!(r, check_finite_volume(&d).unwrap());
    assert!(r.finite_volume);
    assert_eq!(r.maximal_parabolics, 29);
    assert_eq!(r.counterexamples().count(), 0);
    // the Ã1 pair {E12, F12} has a witness
    let pair = labels(&["E12", "F12"]);
    let entry = r.entries.iter().find(|e| e.component == pair).unwrap();
    let witness = entry.witness.as_ref().unwrap();
    assert!(pair.iter().all(|l| witness.contains(l)));
}

#[test]
fn finite_volume_on_the_ten_a_subdiagram() {
    let d = diagram().restrict_to(&[Configuration::TenA]);
    for rank in [6, 7, 8] {
        assert_volume_matches_oracle(&d, rank);
    }
}

#[test]
fn automorphism_group_is_the_index_action() {
    let r = diagram_automorphisms(&diagram());
    assert_eq!(r.order, 24);
    assert!(r.equals_s4_image);
}
