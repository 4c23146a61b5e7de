mod common;

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use enriques_lattice::group::{
    check_parity, faithfulness_check, parse_reflection_word, permutation_matrix, project_to_w4c, sigma_matrix,
    to_isometry, GroupElement, Permutation, ReflectionLetter,
};
use enriques_lattice::model::{build_model, EnriquesModel, RootLabel, RANK};

fn model() -> EnriquesModel {
    build_model().unwrap()
}

fn el(s: &str) -> GroupElement {
    s.parse().unwrap()
}

/// Integer matrix of the reflection in `G_i`, computed from the Gram rows
/// directly: column `k` is `e_k + (e_k, G) G`.
fn reflection_oracle(m: &EnriquesModel, i: u8) -> Vec<Vec<i64>> {
    let g = common::gram10(m);
    let c = common::doubled(m.class_vector(RootLabel::G(i))).map(|x| x / 2);
    let mut out = vec![vec![0i64; RANK]; RANK];
    for k in 0..RANK {
        let pairing: i64 = (0..RANK).map(|j| g[k][j] * c[j]).sum();
        for r in 0..RANK {
            out[r][k] = i64::from(r == k) + pairing * c[r];
        }
    }
    out
}

#[test]
fn transposition_conjugates_sigma_one_to_sigma_two() {
    let m = model();
    let t = el("(1 2)");
    let product = t.multiply(&el("s1")).multiply(&t);
    assert_eq!(product, el("id s2"));
    assert_eq!(to_isometry(&product, &m), to_isometry(&el("s2"), &m));
    // (12)·σ1 acts as σ1 followed by the index swap
    let ts1 = t.multiply(&el("s1"));
    assert_eq!(ts1, el("(1 2) s1"));
    assert_eq!(to_isometry(&ts1, &m), permutation_matrix(Permutation::transposition(1, 2)).mul(&sigma_matrix(1, &m)));
}

#[test]
fn sigma_matrices_match_the_reflection_formula() {
    let m = model();
    for i in 1..=4u8 {
        assert_eq!(sigma_matrix(i, &m).to_i64().unwrap(), reflection_oracle(&m, i), "σ{i}");
    }
}

#[test]
fn involution_laws() {
    let m = model();
    for i in 1..=4u8 {
        let s = GroupElement::sigma(i).unwrap();
        assert!(s.multiply(&s).is_identity());
        let mat = to_isometry(&s, &m);
        assert_eq!(mat.mul(&mat), to_isometry(&GroupElement::identity(), &m));
        assert!(mat.preserves(m.gram10()));
    }
    assert!(el("s1 s2 s2 s1").is_identity());
    assert!(el("s1 s1").is_identity());
}

#[test]
fn conjugation_by_every_permutation() {
    let m = model();
    for p in Permutation::all() {
        let pe = GroupElement::from_perm(p);
        for i in 1..=4u8 {
            let lhs = pe.multiply(&GroupElement::sigma(i).unwrap()).multiply(&pe.inverse());
            let rhs = GroupElement::sigma(p.apply(i)).unwrap();
            assert_eq!(lhs, rhs, "{p} σ{i}");
            assert_eq!(to_isometry(&lhs, &m), to_isometry(&rhs, &m));
        }
    }
}

#[test]
fn sigma_action_on_vertices_and_edges() {
    let m = model();
    let s4 = to_isometry(&el("s4"), &m);
    assert_eq!(
        s4.apply(m.class_vector("E4".parse().unwrap())),
        m.parse_vector("2E1+2E12+2E2+2E23+2E3+2E13-E4").unwrap()
    );
    for i in 1..=4u8 {
        let s = to_isometry(&GroupElement::sigma(i).unwrap(), &m);
        for &l in &RootLabel::ALL[..RANK] {
            if l != RootLabel::Vertex(i) {
                assert_eq!(&s.apply(m.class_vector(l)), m.class_vector(l), "σ{i} {l}");
            }
        }
    }
}

#[test]
fn matrices_are_multiplicative_on_random_elements() {
    let m = model();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let perms = Permutation::all();
    let random = |rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(0..6);
        let word: Vec<u32> = (0..len).map(|_| rng.gen_range(1..=4)).collect();
        GroupElement::normal_form(perms[rng.gen_range(0..24)], &word).unwrap()
    };
    for _ in 0..50 {
        let (a, b) = (random(&mut rng), random(&mut rng));
        assert_eq!(to_isometry(&a.multiply(&b), &m), to_isometry(&a, &m).mul(&to_isometry(&b, &m)));
        assert_eq!(to_isometry(&a.inverse(), &m).mul(&to_isometry(&a, &m)), to_isometry(&GroupElement::identity(), &m));
    }
}

#[test]
fn normal_forms_up_to_length_six_act_faithfully() {
    let m = model();
    let report = faithfulness_check(&m, 6);
    // 24 · (1 + 4 + 4·3 + ⋯ + 4·3^5) reduced words
    let words: usize = 1 + (0..6).map(|k| 4 * 3usize.pow(k)).sum::<usize>();
    assert_eq!(report.elements, 24 * words);
    assert_eq!(report.distinct_matrices, report.elements);
    assert!(report.all_isometries);
    assert!(report.passed());
}

#[test]
fn faithfulness_on_a_sample_via_rational_matrices() {
    let m = model();
    let mut seen = HashSet::new();
    let mut count = 0;
    for p in Permutation::all() {
        for w in [vec![], vec![1], vec![1, 2], vec![2, 1], vec![1, 2, 1], vec![3, 4, 3, 4]] {
            let g = GroupElement::normal_form(p, &w).unwrap();
            seen.insert(to_isometry(&g, &m).to_i64().unwrap());
            count += 1;
        }
    }
    assert_eq!(seen.len(), count);
}

#[test]
fn parity_of_g_pairings() {
    let m = model();
    assert!(check_parity(&m));
    for i in 1..=4u8 {
        for c in RootLabel::curves() {
            let v = m.inner(m.class_vector(RootLabel::G(i)), m.class_vector(c)).unwrap();
            assert!(v.is_integer() && v.to_integer() % 2 == 0.into(), "G{i} {c}");
        }
    }
}

#[test]
fn projection_examples() {
    let m = model();
    let project = |s: &str| project_to_w4c(&m, &parse_reflection_word(s).unwrap()).unwrap();
    assert_eq!(project("s4"), el("s4"));
    assert_eq!(project("rE1 s4 rE1"), el("s4"));
    assert!(project("rE1 rF12 rE34").is_identity());
    assert!(project("s1 rE2 s1").is_identity());
}

#[test]
fn projection_is_multiplicative() {
    let m = model();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let letters: Vec<ReflectionLetter> = RootLabel::ALL
        .iter()
        .map(|&l| match l {
            RootLabel::G(i) => ReflectionLetter::Sigma(i),
            c => ReflectionLetter::Curve(c),
        })
        .collect();
    let random = |rng: &mut ChaCha8Rng| -> Vec<ReflectionLetter> {
        (0..rng.gen_range(0..12)).map(|_| letters[rng.gen_range(0..letters.len())]).collect()
    };
    for _ in 0..500 {
        let (u, v) = (random(&mut rng), random(&mut rng));
        let joined: Vec<_> = u.iter().chain(&v).copied().collect();
        let lhs = project_to_w4c(&m, &joined).unwrap();
        let rhs = project_to_w4c(&m, &u).unwrap().multiply(&project_to_w4c(&m, &v).unwrap());
        assert_eq!(lhs, rhs);
        assert!(lhs.perm().is_identity());
        // a curve reflection is in the kernel
        let c = ReflectionLetter::Curve(RootLabel::curves().nth(rng.gen_range(0..16)).unwrap());
        assert!(project_to_w4c(&m, &[c]).unwrap().is_identity());
    }
}

#[test]
fn reflections_are_isometries_of_the_lattice() {
    let m = model();
    let g = common::gram10(&m);
    for i in 1..=4u8 {
        let s = reflection_oracle(&m, i);
        for a in 0..RANK {
            for b in 0..RANK {
                let mut v = 0;
                for x in 0..RANK {
                    for y in 0..RANK {
                        v += s[x][a] * g[x][y] * s[y][b];
                    }
                }
                assert_eq!(v, g[a][b]);
            }
        }
    }
}
