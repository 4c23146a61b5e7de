use num_traits::{One, Signed, Zero};

use super::{GramMatrix, LatticeVector, Rational};
use crate::error::{Error, Result};

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let delta = &factor * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Exact determinant by fraction-carrying Gaussian elimination.
pub fn determinant(g: &GramMatrix) -> Rational {
    let mut a = g.rows().to_vec();
    let n = a.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for i in (c + 1)..n {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = &a[i][c] * &inv;
            for j in c..n {
                let delta = &factor * &a[c][j];
                a[i][j] -= delta;
            }
        }
    }
    det
}

pub fn rank(g: &GramMatrix) -> usize {
    let mut a = g.rows().to_vec();
    rref(&mut a).len()
}

/// Basis of the null space. Each vector is scaled to be primitive integral
/// with its first nonzero entry positive, so the radical of an affine
/// diagram comes out as its usual positive null vector.
pub fn kernel_basis(g: &GramMatrix) -> Vec<LatticeVector> {
    let mut a = g.rows().to_vec();
    let n = g.dim();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            let v = LatticeVector::new(v).primitive().expect("kernel vector is nonzero");
            let first = v.coords().iter().find(|c| !c.is_zero()).expect("nonzero");
            if first.is_negative() {
                -&v
            } else {
                v
            }
        })
        .collect()
}

/// Solves `g · x = b` for nonsingular `g`.
pub fn solve(g: &GramMatrix, b: &LatticeVector) -> Result<LatticeVector> {
    let n = g.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.dim() });
    }
    let mut aug: Vec<Vec<Rational>> = g
        .rows()
        .iter()
        .zip(b.coords())
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return Err(Error::Precondition("singular system".into()));
    }
    Ok(LatticeVector::new(aug.into_iter().map(|mut r| r.pop().expect("augmented")).collect()))
}

/// Inverse of a nonsingular matrix, as rows.
pub fn inverse(g: &GramMatrix) -> Result<Vec<Vec<Rational>>> {
    let n = g.dim();
    let columns = (0..n).map(|k| solve(g, &LatticeVector::unit(n, k))).collect::<Result<Vec<_>>>()?;
    Ok((0..n).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;
    use proptest::prelude::*;

    fn hexagon() -> GramMatrix {
        let mut m = vec![vec![0i64; 6]; 6];
        for i in 0..6 {
            m[i][i] = -2;
            m[i][(i + 1) % 6] = 1;
            m[(i + 1) % 6][i] = 1;
        }
        GramMatrix::from_integers(&m).unwrap()
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&GramMatrix::identity(2)), rat(1));
        assert_eq!(determinant(&hexagon()), rat(0));
        let swap = GramMatrix::from_integers(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(determinant(&swap), rat(-1));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&hexagon()), vec![LatticeVector::from_integers(&[1; 6])]);
        let pair = GramMatrix::from_integers(&[[-2, 2], [2, -2]]).unwrap();
        assert_eq!(kernel_basis(&pair), vec![LatticeVector::from_integers(&[1, 1])]);
        let a2 = GramMatrix::from_integers(&[[-2, 1], [1, -2]]).unwrap();
        assert!(kernel_basis(&a2).is_empty());
        assert_eq!(rank(&hexagon()), 5);
    }

    #[test]
    fn solve_roundtrip() {
        let g = GramMatrix::from_integers(&[[-2, 1, 0], [1, -2, 1], [0, 1, -2]]).unwrap();
        let b = LatticeVector::from_integers(&[1, 0, 2]);
        let x = solve(&g, &b).unwrap();
        assert_eq!(g.apply(&x).unwrap(), b);
        assert!(solve(&hexagon(), &LatticeVector::zero(6)).is_err());
    }

    fn symmetric(n: usize) -> impl Strategy<Value = GramMatrix> {
        prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
            let mut m = vec![vec![0; n]; n];
            for i in 0..n {
                for j in i..n {
                    m[i][j] = v[i * n + j];
                    m[j][i] = v[i * n + j];
                }
            }
            GramMatrix::from_integers(&m).unwrap()
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_null(g in (1usize..7).prop_flat_map(symmetric)) {
            let ker = kernel_basis(&g);
            prop_assert_eq!(ker.len() + rank(&g), g.dim());
            for k in &ker {
                prop_assert!(g.apply(k).unwrap().is_zero());
                prop_assert!(k.is_integral());
            }
            prop_assert_eq!(determinant(&g).is_zero(), !ker.is_empty());
        }
    }
}
