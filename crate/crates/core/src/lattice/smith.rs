use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{LatticeVector, Rational};
use crate::error::{Error, Result};

fn integer_rows(rows: &[Vec<Rational>]) -> Result<Vec<Vec<BigInt>>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| if x.is_integer() { Ok(x.to_integer()) } else { Err(Error::NonInteger(x.to_string())) })
                .collect()
        })
        .collect()
}

/// Diagonal of the Smith normal form of an integer matrix, in ascending
/// divisibility order with zeros last. Has `min(rows, cols)` entries.
pub fn smith_invariants(rows: &[Vec<Rational>]) -> Result<Vec<BigInt>> {
    let mut a = integer_rows(rows)?;
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let size = m.min(n);
    for t in 0..size {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let best = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
            let Some((pi, pj)) = best else {
                break;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in (t + 1)..m {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for j in t..n {
                        let delta = &q * &a[t][j];
                        a[i][j] -= delta;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in (t + 1)..n {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        let delta = &q * &row[t];
                        row[j] -= delta;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let offending = ((t + 1)..m).find(|&i| ((t + 1)..n).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match offending {
                Some(i) => {
                    for j in t..n {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
    }
    let mut diag: Vec<BigInt> = (0..size).map(|t| a[t][t].abs()).collect();
    diag.sort_by(|x, y| match (x.is_zero(), y.is_zero()) {
        (true, false) => std::cmp::Ordering::Greater,
        (false, true) => std::cmp::Ordering::Less,
        _ => x.cmp(y),
    });
    Ok(diag)
}

/// Row-style Hermite normal form of an integer matrix, zero rows dropped.
pub fn hermite_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a = rows.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (r..m).filter(|&i| !a[i][c].is_zero()).collect();
            let Some(&p) = nonzero.iter().min_by(|&&i, &&k| a[i][c].abs().cmp(&a[k][c].abs())) else {
                break;
            };
            a.swap(r, p);
            let mut done = true;
            for i in (r + 1)..m {
                let q = a[i][c].div_floor(&a[r][c]);
                if !q.is_zero() {
                    for j in c..n {
                        let delta = &q * &a[r][j];
                        a[i][j] -= delta;
                    }
                }
                done &= a[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if a.get(r).is_none_or(|row| row[c].is_zero()) {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if !q.is_zero() {
                for j in c..n {
                    let delta = &q * &a[r][j];
                    a[i][j] -= delta;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// A Z-basis of the lattice generated by the given rational vectors.
pub fn lattice_basis(generators: &[LatticeVector]) -> Vec<LatticeVector> {
    let denom = generators
        .iter()
        .flat_map(|v| v.coords().iter().map(|c| c.denom().clone()))
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    let scaled: Vec<Vec<BigInt>> =
        generators.iter().map(|v| v.coords().iter().map(|c| (c * &denom).to_integer()).collect()).collect();
    let d = Rational::from_integer(denom);
    hermite_rows(&scaled)
        .into_iter()
        .map(|row| LatticeVector::new(row.into_iter().map(|x| Rational::from_integer(x) / &d).collect()))
        .collect()
}

/// Coordinates of `v` in a basis given by linearly independent vectors, or
/// `None` if `v` is not in their span.
pub fn coordinates_in(basis: &[LatticeVector], v: &LatticeVector) -> Option<Vec<Rational>> {
    let k = basis.len();
    let n = v.dim();
    // columns are basis vectors, last column is v
    let mut aug: Vec<Vec<Rational>> =
        (0..n).map(|i| basis.iter().map(|b| b[i].clone()).chain(std::iter::once(v[i].clone())).collect()).collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..=k {
        let Some(p) = (r..n).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        if c == k {
            return None;
        }
        aug.swap(r, p);
        let inv = aug[r][c].recip();
        for x in aug[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in c..=k {
                    let delta = &f * &aug[r][j];
                    aug[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() != k {
        return None;
    }
    Some((0..k).map(|i| aug[i][k].clone()).collect())
}
