use std::collections::HashSet;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{GroupElement, Permutation};
use crate::lattice::{reflect, to_i64, GramMatrix, LatticeVector, Rational};
use crate::model::{EnriquesModel, RootLabel, RANK};

/// A 10×10 exact matrix acting on column vectors in the model basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IsometryMatrix(Vec<Vec<Rational>>);

impl IsometryMatrix {
    pub fn identity() -> Self {
        Self(
            (0..RANK)
                .map(|i| (0..RANK).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
                .collect(),
        )
    }

    fn from_columns(columns: &[LatticeVector]) -> Self {
        Self((0..RANK).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect())
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(
            (0..RANK)
                .map(|i| {
                    (0..RANK)
                        .map(|j| (0..RANK).fold(Rational::zero(), |acc, k| acc + &self.0[i][k] * &other.0[k][j]))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        LatticeVector::new(
            self.0
                .iter()
                .map(|row| row.iter().zip(v.coords()).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
                .collect(),
        )
    }

    /// `Mᵀ · G · M == G`.
    pub fn preserves(&self, g: &GramMatrix) -> bool {
        let cols: Vec<LatticeVector> =
            (0..RANK).map(|j| LatticeVector::new(self.0.iter().map(|r| r[j].clone()).collect())).collect();
        match g.gram_of(&cols) {
            Ok(image) => &image == g,
            Err(_) => false,
        }
    }

    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.0.iter().map(|r| r.iter().map(to_i64).collect()).collect()
    }
}

/// Matrix of the index permutation acting on labels: `E_i ↦ E_{π(i)}`,
/// `E_ij ↦ E_{π(i)π(j)}`.
pub fn permutation_matrix(p: Permutation) -> IsometryMatrix {
    let columns: Vec<LatticeVector> =
        RootLabel::ALL[..RANK].iter().map(|l| LatticeVector::unit(RANK, l.permuted(|i| p.apply(i)).index())).collect();
    IsometryMatrix::from_columns(&columns)
}

/// Matrix of `σ_i`, the reflection in `G_i`.
pub fn sigma_matrix(i: u8, m: &EnriquesModel) -> IsometryMatrix {
    let g = m.class_vector(RootLabel::G(i));
    let columns: Vec<LatticeVector> =
        (0..RANK).map(|k| reflect(&LatticeVector::unit(RANK, k), g, m.gram10()).expect("G_i is a root")).collect();
    IsometryMatrix::from_columns(&columns)
}

/// The lattice action of a group element: `P(perm) · S_{w1} ⋯ S_{wk}`.
pub fn to_isometry(g: &GroupElement, m: &EnriquesModel) -> IsometryMatrix {
    g.word().iter().fold(permutation_matrix(g.perm()), |acc, &i| acc.mul(&sigma_matrix(i, m)))
}

/// Outcome of the bounded injectivity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaithfulnessReport {
    pub max_word_len: usize,
    pub elements: usize,
    pub distinct_matrices: usize,
    pub all_isometries: bool,
}

impl FaithfulnessReport {
    pub fn passed(&self) -> bool {
        self.all_isometries && self.elements == self.distinct_matrices
    }
}

type IntMatrix = Vec<Vec<i64>>;

fn int_mul(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] = out[i][j].checked_add(a[i][k].checked_mul(b[k][j])?)?;
            }
        }
    }
    Some(out)
}

fn int_preserves(m: &IntMatrix, g: &IntMatrix) -> bool {
    let n = m.len();
    (0..n).all(|a| {
        (0..n).all(|b| {
            let mut s = 0i64;
            for i in 0..n {
                for j in 0..n {
                    s += m[i][a] * g[i][j] * m[j][b];
                }
            }
            s == g[a][b]
        })
    })
}

/// Every normal form `(perm, word)` with `|word| ≤ max_word_len` is mapped
/// to its matrix; the report counts how many distinct matrices arise. The
/// representation is integral in the model basis, so the walk runs in
/// checked `i64` arithmetic.
pub fn faithfulness_check(m: &EnriquesModel, max_word_len: usize) -> FaithfulnessReport {
    let sigmas: Vec<IntMatrix> = (1..=4).map(|i| sigma_matrix(i, m).to_i64().expect("integral reflection")).collect();
    let gram = m.gram10().to_i64().expect("integral gram");
    // reduced words by length, with their matrices
    let mut layer: Vec<(u8, IntMatrix)> = vec![(0, permutation_matrix(Permutation::IDENTITY).to_i64().expect("int"))];
    let mut words: Vec<IntMatrix> = vec![layer[0].1.clone()];
    for _ in 0..max_word_len {
        let mut next = Vec::with_capacity(layer.len() * 3);
        for (last, mat) in &layer {
            for i in 1..=4u8 {
                if i != *last {
                    let prod = int_mul(mat, &sigmas[(i - 1) as usize]).expect("entries fit in i64");
                    next.push((i, prod));
                }
            }
        }
        words.extend(next.iter().map(|(_, mat)| mat.clone()));
        layer = next;
    }
    let mut seen: HashSet<IntMatrix> = HashSet::with_capacity(words.len() * 24);
    let mut elements = 0;
    let mut all_isometries = true;
    for p in Permutation::all() {
        let pm = permutation_matrix(p).to_i64().expect("int");
        for w in &words {
            let mat = int_mul(&pm, w).expect("entries fit in i64");
            all_isometries &= int_preserves(&mat, &gram);
            seen.insert(mat);
            elements += 1;
        }
    }
    FaithfulnessReport { max_word_len, elements, distinct_matrices: seen.len(), all_isometries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;
    use crate::model::build_model;

    #[test]
    fn sigma4_sends_e4_to_the_hexagon_double_minus_e4() {
        let m = build_model().unwrap();
        let s4 = to_isometry(&GroupElement::sigma(4).unwrap(), &m);
        let e4 = m.class_vector(RootLabel::Vertex(4));
        let expected = LatticeVector::from_integers(&[2, 2, 2, -1, 2, 2, 0, 2, 0, 0]);
        assert_eq!(s4.apply(e4), expected);
        let s1 = to_isometry(&GroupElement::sigma(1).unwrap(), &m);
        let e23 = m.class_vector(RootLabel::Edge(2, 3));
        assert_eq!(&s1.apply(e23), e23);
        assert_eq!(to_isometry(&GroupElement::identity(), &m), IsometryMatrix::identity());
    }

    #[test]
    fn sigma_squares_to_identity_and_preserves_form() {
        let m = build_model().unwrap();
        for i in 1..=4 {
            let s = sigma_matrix(i, &m);
            assert_eq!(s.mul(&s), IsometryMatrix::identity());
            assert!(s.preserves(m.gram10()));
        }
    }

    #[test]
    fn conjugation_matches_letter_relabelling() {
        let m = build_model().unwrap();
        for p in Permutation::all() {
            let pm = permutation_matrix(p);
            let pinv = permutation_matrix(p.inverse());
            assert!(pm.preserves(m.gram10()));
            for i in 1..=4 {
                assert_eq!(pm.mul(&sigma_matrix(i, &m)).mul(&pinv), sigma_matrix(p.apply(i), &m));
            }
        }
    }

    #[test]
    fn multiplication_is_a_homomorphism() {
        let m = build_model().unwrap();
        let t = GroupElement::from_perm(Permutation::transposition(1, 2));
        let s1 = GroupElement::sigma(1).unwrap();
        // "apply σ1, then swap indices 1 and 2"
        let prod = t.multiply(&s1);
        assert_eq!(to_isometry(&prod, &m), permutation_matrix(t.perm()).mul(&sigma_matrix(1, &m)));
        let g = GroupElement::parse("(1 2 3)", "s1 s4 s2").unwrap();
        let h = GroupElement::parse("(2 4)", "s3 s1").unwrap();
        assert_eq!(to_isometry(&g.multiply(&h), &m), to_isometry(&g, &m).mul(&to_isometry(&h, &m)));
        assert_eq!(to_isometry(&g.inverse(), &m).mul(&to_isometry(&g, &m)), IsometryMatrix::identity());
    }

    #[test]
    fn h_is_fixed_by_permutations() {
        let m = build_model().unwrap();
        for p in Permutation::all() {
            assert_eq!(&permutation_matrix(p).apply(m.h()), m.h());
        }
        let s1 = sigma_matrix(1, &m);
        // (σ1 H, H) = H² + (H, G1)² = 4 + 4
        assert_eq!(m.degree(&s1.apply(m.h())).unwrap(), rat(8));
    }

    #[test]
    fn faithful_up_to_length_three() {
        let m = build_model().unwrap();
        let report = faithfulness_check(&m, 3);
        assert_eq!(report.elements, 24 * (1 + 4 + 12 + 36));
        assert!(report.passed());
    }
}
