use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{rat, GramMatrix, Rational};

/// Sign behaviour of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "corank")]
pub enum Definiteness {
    NegativeDefinite,
    /// Negative semidefinite with the given (positive) corank.
    NegativeSemidefiniteCorank(usize),
    Indefinite,
    /// Positive semidefinite and nonzero.
    Other,
}

impl Definiteness {
    pub fn is_negative_semidefinite(self) -> bool {
        matches!(self, Self::NegativeDefinite | Self::NegativeSemidefiniteCorank(_))
    }

    /// Corank of a negative semidefinite form, zero when definite.
    pub fn corank(self) -> Option<usize> {
        match self {
            Self::NegativeDefinite => Some(0),
            Self::NegativeSemidefiniteCorank(c) => Some(c),
            _ => None,
        }
    }

    fn from_inertia(pos: usize, neg: usize, zero: usize) -> Self {
        match (pos, neg, zero) {
            (p, n, _) if p > 0 && n > 0 => Self::Indefinite,
            (0, _, 0) => Self::NegativeDefinite,
            (0, _, z) => Self::NegativeSemidefiniteCorank(z),
            _ => Self::Other,
        }
    }
}

/// Exact classification by symmetric Gaussian elimination (congruence).
///
/// A nonzero diagonal entry is used as pivot. When every remaining diagonal
/// entry vanishes, a nonzero off-diagonal entry `a_ij` spans a block
/// `[[0, a], [a, 0]]` of negative determinant, so the form is indefinite;
/// otherwise the remainder is identically zero and contributes to the
/// corank.
pub fn classify_definiteness(g: &GramMatrix) -> Definiteness {
    let mut a: Vec<Vec<Rational>> = g.rows().to_vec();
    let n = a.len();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    while let Some(slot) = active.iter().position(|&i| !a[i][i].is_zero()) {
        let p = active.swap_remove(slot);
        let pivot = a[p][p].clone();
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        if pos > 0 && neg > 0 {
            return Definiteness::Indefinite;
        }
        for &j in &active {
            if a[j][p].is_zero() {
                continue;
            }
            let factor = &a[j][p] / &pivot;
            for &k in &active {
                let delta = &factor * &a[p][k];
                a[j][k] -= delta;
            }
        }
    }
    let off_diagonal = active.iter().any(|&i| active.iter().any(|&j| i != j && !a[i][j].is_zero()));
    if off_diagonal {
        return Definiteness::Indefinite;
    }
    Definiteness::from_inertia(pos, neg, active.len())
}

/// Same classification for an integer Gram matrix using fraction-free
/// (Bareiss) elimination in `i128`. Falls back to the rational routine if an
/// intermediate value overflows.
pub fn classify_integer_gram(rows: &[Vec<i64>]) -> Definiteness {
    match bareiss_inertia(rows) {
        Some(d) => d,
        None => {
            let entries = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
            match GramMatrix::new(entries) {
                Ok(g) => classify_definiteness(&g),
                Err(_) => Definiteness::Indefinite,
            }
        }
    }
}

fn bareiss_inertia(rows: &[Vec<i64>]) -> Option<Definiteness> {
    let n = rows.len();
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut prev: i128 = 1;
    let (mut pos, mut neg) = (0usize, 0usize);
    while let Some(slot) = active.iter().position(|&i| a[i][i] != 0) {
        let p = active.swap_remove(slot);
        let pivot = a[p][p];
        // pivot / prev is the actual LDL pivot; prev carries the sign of the
        // previous principal minor.
        if (pivot > 0) == (prev > 0) {
            pos += 1;
        } else {
            neg += 1;
        }
        if pos > 0 && neg > 0 {
            return Some(Definiteness::Indefinite);
        }
        for &j in &active {
            for &k in &active {
                let t = pivot.checked_mul(a[j][k])?.checked_sub(a[j][p].checked_mul(a[p][k])?)?;
                debug_assert_eq!(t % prev, 0);
                a[j][k] = t / prev;
            }
        }
        prev = pivot;
    }
    let off_diagonal = active.iter().any(|&i| active.iter().any(|&j| i != j && a[i][j] != 0));
    if off_diagonal {
        return Some(Definiteness::Indefinite);
    }
    Some(Definiteness::from_inertia(pos, neg, active.len()))
}
