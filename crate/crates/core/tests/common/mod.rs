//! Independent oracles shared by the integration tests. None of them call
//! the library's own linear algebra.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use num_rational::Ratio;
use num_traits::{One, Zero};

use enriques_lattice::model::{EnriquesModel, RootLabel, RANK};

pub type Q = Ratio<i128>;

/// Determinant by rational Gaussian elimination with row swaps.
pub fn det(rows: &[Vec<i64>]) -> Q {
    let n = rows.len();
    let mut a: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| Q::from_integer(x as i128)).collect()).collect();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                let t = a[c][k] * f;
                a[r][k] -= t;
            }
        }
    }
    d
}

/// Integer determinant by fraction-free (Bareiss) elimination.
pub fn det_int(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| a[r][k] != 0) else {
            return 0;
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

fn adjacency(w: &[Vec<i64>]) -> Vec<u32> {
    (0..w.len()).map(|i| (0..w.len()).filter(|&j| j != i && w[i][j] != 0).fold(0, |m, j| m | 1 << j)).collect()
}

/// Splits `subset` into connected components, as bitmasks.
fn components(adj: &[u32], subset: u32) -> Vec<u32> {
    let mut rest = subset;
    let mut out = Vec::new();
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        loop {
            let grown = (0..adj.len()).filter(|&i| comp >> i & 1 == 1).fold(comp, |m, i| m | (adj[i] & subset));
            if grown == comp {
                break;
            }
            comp = grown;
        }
        out.push(comp);
        rest &= !comp;
    }
    out
}

fn principal(w: &[Vec<i64>], mask: u32) -> Vec<Vec<i64>> {
    let idx: Vec<usize> = (0..w.len()).filter(|&i| mask >> i & 1 == 1).collect();
    idx.iter().map(|&i| idx.iter().map(|&j| w[i][j]).collect()).collect()
}

/// Negative definiteness and the affine property for every subset of the
/// diagram, by Sylvester's criterion along the chain obtained by deleting
/// the highest vertex. A connected subset is affine (negative semidefinite
/// of corank one) exactly when it is singular and every proper subset is
/// negative definite, and the latter follows from the subset without its
/// highest vertex being negative definite.
pub struct SubsetOracle {
    adj: Vec<u32>,
    definite: Vec<bool>,
    affine: Vec<bool>,
}

impl SubsetOracle {
    pub fn new(w: &[Vec<i64>]) -> Self {
        let n = w.len();
        assert!(n <= 20);
        let adj = adjacency(w);
        let mut definite = vec![false; 1 << n];
        let mut affine = vec![false; 1 << n];
        definite[0] = true;
        for s in 1u32..1 << n {
            let top = 31 - s.leading_zeros();
            if !definite[(s & !(1 << top)) as usize] {
                continue;
            }
            let d = det_int(&principal(w, s));
            let k = s.count_ones();
            definite[s as usize] = if k % 2 == 0 { d > 0 } else { d < 0 };
            affine[s as usize] = d == 0 && components(&adj, s).len() == 1;
        }
        Self { adj, definite, affine }
    }

    pub fn is_negative_definite(&self, s: u32) -> bool {
        self.definite[s as usize]
    }

    /// Total rank (vertices minus components) when every component of `s`
    /// is affine.
    pub fn parabolic_rank(&self, s: u32) -> Option<usize> {
        if s == 0 {
            return None;
        }
        let comps = components(&self.adj, s);
        comps.iter().all(|&c| self.affine[c as usize]).then(|| s.count_ones() as usize - comps.len())
    }

    pub fn parabolics(&self) -> Vec<(u32, usize)> {
        (1u32..1 << self.adj.len()).filter_map(|s| self.parabolic_rank(s).map(|r| (s, r))).collect()
    }
}

/// All parabolic subsets with their ranks, by scanning every subset.
pub fn naive_parabolics(w: &[Vec<i64>]) -> Vec<(u32, usize)> {
    SubsetOracle::new(w).parabolics()
}

/// Coordinates times two, as integers.
pub fn doubled(v: &enriques_lattice::lattice::LatticeVector) -> [i64; RANK] {
    std::array::from_fn(|i| {
        let c = &v.coords()[i] * num_rational::BigRational::from_integer(2.into());
        assert!(c.is_integer(), "coordinate with denominator beyond 2");
        i64::try_from(c.to_integer()).unwrap()
    })
}

pub fn gram10(m: &EnriquesModel) -> [[i64; RANK]; RANK] {
    std::array::from_fn(|i| std::array::from_fn(|j| m.gram20()[i][j]))
}

fn inverse(a: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let n = a.len();
    let mut aug: Vec<Vec<Q>> = a
        .into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !aug[r][c].is_zero()).expect("invertible");
        aug.swap(p, c);
        let pivot = aug[c][c];
        for k in 0..2 * n {
            aug[c][k] /= pivot;
        }
        for r in 0..n {
            if r != c && !aug[r][c].is_zero() {
                let f = aug[r][c];
                for k in 0..2 * n {
                    let t = aug[c][k] * f;
                    aug[r][k] -= t;
                }
            }
        }
    }
    aug.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Largest `B` with `|2 x_i| <= B` for every real `x` with `x² = norm` and
/// `0 < (x, H) <= max_degree`. On that set the positive definite form
/// `P(x) = -x² + 2 (x, H)² / H²` is at most `R = -norm + 2 max_degree² / H²`,
/// and `max x_i` over `P(x) <= R` is `sqrt(R (P^-1)_ii)`.
pub fn coordinate_bound(m: &EnriquesModel, norm: i64, max_degree: i64) -> i64 {
    let g = gram10(m);
    let h = doubled(m.h());
    let gh: Vec<Q> = (0..RANK).map(|i| Q::new((0..RANK).map(|j| (g[i][j] * h[j]) as i128).sum(), 2)).collect();
    let h2: Q = (0..RANK).map(|i| gh[i] * Q::new(h[i] as i128, 2)).sum();
    let p: Vec<Vec<Q>> = (0..RANK)
        .map(|i| {
            (0..RANK).map(|j| Q::from_integer(-g[i][j] as i128) + Q::from_integer(2) * gh[i] * gh[j] / h2).collect()
        })
        .collect();
    let pinv = inverse(p);
    let r = Q::from_integer(-norm as i128) + Q::from_integer(2 * (max_degree * max_degree) as i128) / h2;
    (0..RANK)
        .map(|i| {
            let limit = Q::from_integer(4) * r * pinv[i][i];
            let mut b = 0i64;
            while Q::from_integer(((b + 1) * (b + 1)) as i128) <= limit {
                b += 1;
            }
            b
        })
        .max()
        .unwrap()
}

/// Box search for the curve lattice vectors of the given norm with
/// `0 < (x, H) <= max_degree`. The curve lattice is covered by the cosets
/// of `Z^10` met by sums of curve classes; every coordinate is bounded by
/// [`coordinate_bound`]. Results are doubled coordinates, sorted.
pub fn box_enumerate(m: &EnriquesModel, norm: i64, max_degree: i64) -> Vec<[i64; RANK]> {
    let bound = coordinate_bound(m, norm, max_degree);
    let g = gram10(m);
    let h = doubled(m.h());
    let gh: [i64; RANK] = std::array::from_fn(|i| (0..RANK).map(|j| g[i][j] * h[j]).sum::<i64>());
    // cosets of Z^10 in the curve lattice, as parity vectors
    let curves: Vec<[i64; RANK]> = RootLabel::curves().map(|l| doubled(m.class_vector(l))).collect();
    let mut cosets: BTreeSet<[i64; RANK]> = BTreeSet::new();
    cosets.insert([0; RANK]);
    loop {
        let before = cosets.len();
        let current: Vec<_> = cosets.iter().copied().collect();
        for c in &current {
            for v in &curves {
                cosets.insert(std::array::from_fn(|i| (c[i] + v[i]).rem_euclid(2)));
            }
        }
        if cosets.len() == before {
            break;
        }
    }
    let mut out = Vec::new();
    for parity in cosets {
        let choices: Vec<Vec<i64>> =
            (0..RANK).map(|i| (-bound..=bound).filter(|x| (x - parity[i]).rem_euclid(2) == 0).collect()).collect();
        let mut x = [0i64; RANK];
        let mut gx = [0i64; RANK];
        search(&g, &gh, &choices, 0, &mut x, &mut gx, 0, norm, max_degree, &mut out);
    }
    out.sort_unstable();
    out
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: &[[i64; RANK]; RANK],
    gh: &[i64; RANK],
    choices: &[Vec<i64>],
    k: usize,
    x: &mut [i64; RANK],
    gx: &mut [i64; RANK],
    q: i64,
    norm: i64,
    max_degree: i64,
    out: &mut Vec<[i64; RANK]>,
) {
    if k == RANK {
        // (x, H) = X·G·2H / 4 and x² = X·G·X / 4
        let deg4: i64 = (0..RANK).map(|i| x[i] * gh[i]).sum();
        if q == 4 * norm && deg4 > 0 && deg4 <= 4 * max_degree && deg4 % 4 == 0 {
            out.push(*x);
        }
        return;
    }
    for &c in &choices[k] {
        // adding c e_k to a vector whose later entries are zero
        let nq = q + 2 * c * gx[k] + c * c * g[k][k];
        x[k] = c;
        for i in 0..RANK {
            gx[i] += c * g[i][k];
        }
        search(g, gh, choices, k + 1, x, gx, nq, norm, max_degree, out);
        for i in 0..RANK {
            gx[i] -= c * g[i][k];
        }
    }
    x[k] = 0;
}
