use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{gcd_all, Coords, OrbitContext};
use crate::error::{Error, Result};
use crate::lattice::{coordinates_in, lattice_basis, LatticeVector, Rational};
use crate::model::{EnriquesModel, RootLabel, RANK};

type Q = Ratio<i128>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumeratedVector {
    pub vector: LatticeVector,
    pub degree: i64,
    /// Primitive in the curve lattice.
    pub primitive: bool,
    #[serde(skip)]
    pub(crate) coords: Coords,
}

/// The degree-`a` slice `{x = a·e + k : k ∈ K}` of the curve lattice, where
/// `e` is a curve of degree 1 and `K` is the negative definite lattice
/// orthogonal to `H`. The search finds `k` with
/// `-(k + a·p)² = a²/H² - norm`, where `p` is the projection of `e` to `K`.
struct Slices {
    base: Coords,
    kernel: Vec<Coords>,
    /// `-(k, k)` is `Σ d_i (y_i + Σ_{j>i} u_ij y_j)²` in `K`-coordinates.
    d: Vec<Q>,
    u: Vec<Vec<Q>>,
    projection: Vec<Q>,
    h_norm: i64,
}

fn to_q(r: &Rational) -> Result<Q> {
    let n = r.numer().to_i128().ok_or_else(|| Error::Precondition("entry too large".into()))?;
    let d = r.denom().to_i128().ok_or_else(|| Error::Precondition("entry too large".into()))?;
    Ok(Q::new(n, d))
}

impl Slices {
    fn new(ctx: &OrbitContext<'_>) -> Result<Self> {
        let base_label = RootLabel::curves()
            .find(|&l| ctx.degree(ctx.root(l)) == 1)
            .ok_or_else(|| Error::ModelInvariant("no curve of degree 1".into()))?;
        let e = ctx.unscale(ctx.root(base_label));
        let gens: Vec<LatticeVector> = ctx
            .lattice_basis
            .iter()
            .map(|b| {
                let deg = ctx.degree(&ctx.scale(b)?);
                Ok(b.add_scaled(&Rational::from_integer((-deg).into()), &e))
            })
            .collect::<Result<_>>()?;
        let kernel_vectors = lattice_basis(&gens);
        if kernel_vectors.len() != RANK - 1 {
            return Err(Error::ModelInvariant("curve lattice does not have rank 10".into()));
        }
        let kernel: Vec<Coords> = kernel_vectors.iter().map(|k| ctx.scale(k)).collect::<Result<_>>()?;
        let n = kernel.len();
        let pair =
            |x: &Coords, y: &Coords| ctx.pair(x, y).ok_or_else(|| Error::ModelInvariant("non-integral pairing".into()));
        let mut gram = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = Q::from_integer(-(pair(&kernel[i], &kernel[j])? as i128));
            }
        }
        let h_norm = pair(&ctx.h, &ctx.h)?;
        if h_norm <= 0 {
            return Err(Error::ModelInvariant("H is not positive".into()));
        }
        // p = e - H / H²
        let h = ctx.unscale(&ctx.h);
        let p = e.add_scaled(&Rational::new((-1).into(), h_norm.into()), &h);
        let projection = coordinates_in(&kernel_vectors, &p)
            .ok_or_else(|| Error::ModelInvariant("projection outside the span of K".into()))?
            .iter()
            .map(to_q)
            .collect::<Result<Vec<_>>>()?;
        let mut d = vec![Q::zero(); n];
        let mut u = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            let mut di = gram[i][i];
            for k in 0..i {
                di -= d[k] * u[k][i] * u[k][i];
            }
            if !di.is_positive() {
                return Err(Error::ModelInvariant("H-orthogonal lattice is not negative definite".into()));
            }
            d[i] = di;
            for j in i + 1..n {
                let mut s = gram[i][j];
                for k in 0..i {
                    s -= d[k] * u[k][i] * u[k][j];
                }
                u[i][j] = s / di;
            }
        }
        Ok(Self { base: *ctx.root(base_label), kernel, d, u, projection, h_norm })
    }

    fn n(&self) -> usize {
        self.kernel.len()
    }

    /// `a·π_i + Σ_{j>i} u_ij y_j`.
    fn offset(&self, i: usize, a: i64, y: &[Q]) -> Q {
        let mut t = self.projection[i] * Q::from_integer(a as i128);
        for j in i + 1..self.n() {
            t += self.u[i][j] * y[j];
        }
        t
    }

    /// Integers `c` with `d_i (c + t)² ≤ r`, in increasing order.
    fn range(&self, i: usize, t: Q, r: Q) -> Vec<i64> {
        let fits = |c: i64| {
            let z = Q::from_integer(c as i128) + t;
            self.d[i] * z * z <= r
        };
        let start = (-t).floor().to_integer() as i64;
        let mut out = Vec::new();
        let mut c = start;
        while fits(c) {
            out.push(c);
            c -= 1;
        }
        out.reverse();
        let mut c = start + 1;
        while fits(c) {
            out.push(c);
            c += 1;
        }
        out
    }

    fn search(&self, i: usize, a: i64, y: &mut Vec<Q>, c: &mut Vec<i64>, r: Q, out: &mut Vec<Vec<i64>>) {
        let t = self.offset(i, a, y);
        if i == 0 {
            let q = r / self.d[0];
            let (num, den) = (*q.numer(), *q.denom());
            let (sn, sd) = (num.sqrt(), den.sqrt());
            if sn * sn != num || sd * sd != den {
                return;
            }
            let s = Q::new(sn, sd);
            let mut roots = vec![-t - s, -t + s];
            roots.dedup();
            for z in roots {
                if z.is_integer() {
                    c[0] = z.to_integer() as i64;
                    out.push(c.clone());
                }
            }
            return;
        }
        for ci in self.range(i, t, r) {
            let z = Q::from_integer(ci as i128) + t;
            c[i] = ci;
            y[i] = Q::from_integer(ci as i128) + self.projection[i] * Q::from_integer(a as i128);
            self.search(i - 1, a, y, c, r - self.d[i] * z * z, out);
        }
    }

    fn target(&self, a: i64, norm: i64) -> Q {
        Q::new((a * a) as i128, self.h_norm as i128) - Q::from_integer(norm as i128)
    }

    /// Kernel coordinates of all slice vectors with the given degree and norm.
    fn solve(&self, a: i64, norm: i64) -> Vec<Vec<i64>> {
        let n = self.n();
        let r = self.target(a, norm);
        if r.is_negative() {
            return Vec::new();
        }
        let top = n - 1;
        let t = self.offset(top, a, &vec![Q::zero(); n]);
        self.range(top, t, r)
            .into_par_iter()
            .map(|ct| {
                let mut y = vec![Q::zero(); n];
                let mut c = vec![0i64; n];
                let z = Q::from_integer(ct as i128) + t;
                c[top] = ct;
                y[top] = Q::from_integer(ct as i128) + self.projection[top] * Q::from_integer(a as i128);
                let mut out = Vec::new();
                if top == 0 {
                    if self.d[0] * z * z == r {
                        out.push(c);
                    }
                } else {
                    self.search(top - 1, a, &mut y, &mut c, r - self.d[top] * z * z, &mut out);
                }
                out
            })
            .flatten()
            .collect()
    }

    fn assemble(&self, a: i64, c: &[i64]) -> Coords {
        let mut x = self.base.map(|v| v * a);
        for (k, ck) in self.kernel.iter().zip(c) {
            for i in 0..RANK {
                x[i] += ck * k[i];
            }
        }
        x
    }
}

impl OrbitContext<'_> {
    /// All vectors `x` of the curve lattice with `x² = norm` and
    /// `0 < (x, H) ≤ max_degree`, sorted by degree and then coordinates.
    pub fn enumerate_vectors(&self, norm: i64, max_degree: i64, primitive_only: bool) -> Result<Vec<EnumeratedVector>> {
        if norm != -2 && norm != 0 {
            return Err(Error::Precondition(format!("unsupported norm {norm}, expected -2 or 0")));
        }
        if max_degree < 1 {
            return Err(Error::Precondition("max_degree must be positive".into()));
        }
        let slices = Slices::new(self)?;
        let mut found: Vec<EnumeratedVector> = (1..=max_degree)
            .into_par_iter()
            .map(|a| {
                slices
                    .solve(a, norm)
                    .into_iter()
                    .map(|c| {
                        let coords = slices.assemble(a, &c);
                        let mut all = c.clone();
                        all.push(a);
                        (coords, gcd_all(&all) == 1)
                    })
                    .collect::<Vec<_>>()
            })
            .flatten()
            .map(|(coords, primitive)| -> Result<EnumeratedVector> {
                let degree = self.degree(&coords);
                if self.pair(&coords, &coords) != Some(norm) || degree < 1 || degree > max_degree {
                    return Err(Error::ModelInvariant("enumerated vector fails its constraints".into()));
                }
                Ok(EnumeratedVector { vector: self.unscale(&coords), degree, primitive, coords })
            })
            .collect::<Result<_>>()?;
        if primitive_only {
            found.retain(|v| v.primitive);
        }
        found.sort_by(|a, b| a.degree.cmp(&b.degree).then_with(|| a.coords.cmp(&b.coords)));
        Ok(found)
    }
}

pub fn enumerate_vectors(
    m: &EnriquesModel,
    norm: i64,
    max_degree: i64,
    primitive_only: bool,
) -> Result<Vec<EnumeratedVector>> {
    OrbitContext::new(m)?.enumerate_vectors(norm, max_degree, primitive_only)
}
