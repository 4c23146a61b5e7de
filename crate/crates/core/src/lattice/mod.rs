//! Exact rational lattice primitives.
//!
//! Everything here works over [`Rational`] (arbitrary precision fractions);
//! no floating point is used anywhere. Vectors carry no basis tag: callers
//! pair them with the [`GramMatrix`] of whatever basis they are written in.

mod definiteness;
mod linalg;
mod smith;

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use definiteness::{classify_definiteness, classify_integer_gram, Definiteness};
pub use linalg::{determinant, inverse, kernel_basis, rank, solve};
pub use smith::{coordinates_in, hermite_rows, lattice_basis, smith_invariants};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Shorthand for an integral rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Converts an integral rational to `i64`, if it is one and fits.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        i64::try_from(r.to_integer()).ok()
    } else {
        None
    }
}

/// A coordinate vector with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<Rational>);

impl LatticeVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![Rational::zero(); n])
    }

    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[k] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self(self.0.iter().map(|c| c * k).collect())
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, k: &Rational, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + k * b).collect())
    }

    /// Integer entries, if all entries are integral and fit in `i64`.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(to_i64).collect()
    }

    /// Smallest positive rational `c` such that `self / c` is integral and
    /// primitive (the gcd of its entries is 1). `None` for the zero vector.
    pub fn content(&self) -> Option<Rational> {
        if self.is_zero() {
            return None;
        }
        use num_integer::Integer;
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in &self.0 {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        Some(Rational::new(num, den))
    }

    /// The primitive integral vector on the same ray.
    pub fn primitive(&self) -> Option<Self> {
        self.content().map(|c| self.scale(&c.recip()))
    }
}

impl Index<usize> for LatticeVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;

    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;

    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;

    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Comma separated exact entries, e.g. `1,0,-1/2`.
impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Serialized as an array of exact entries such as `["1", "-1/2"]`.
impl serde::Serialize for LatticeVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|c| c.to_string()))
    }
}

impl FromStr for LatticeVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Err(Error::Parse("empty vector".into()));
        }
        s.split(',').map(parse_rational).collect::<Result<Vec<_>>>().map(Self)
    }
}

/// A symmetric bilinear form in a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    entries: Vec<Vec<Rational>>,
}

impl GramMatrix {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::EmptyGram);
        }
        for row in &entries {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn from_integers<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.as_ref().iter().map(|&x| rat(x)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let entries =
            (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    /// `g · v`.
    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        check_dim(self.dim(), v.dim())?;
        Ok(LatticeVector(
            self.entries
                .iter()
                .map(|row| row.iter().zip(v.coords()).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
                .collect(),
        ))
    }

    /// Principal submatrix on the given indices.
    pub fn principal(&self, idx: &[usize]) -> Self {
        let entries = idx.iter().map(|&i| idx.iter().map(|&j| self.entries[i][j].clone()).collect()).collect();
        Self { entries }
    }

    /// Gram matrix of the given vectors under this form.
    pub fn gram_of(&self, vectors: &[LatticeVector]) -> Result<Self> {
        let images = vectors.iter().map(|v| self.apply(v)).collect::<Result<Vec<_>>>()?;
        let entries = vectors.iter().map(|v| images.iter().map(|gw| dot(v, gw)).collect()).collect();
        Self::new(entries)
    }

    /// Integer entries, if every entry is integral and fits in `i64`.
    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.entries.iter().map(|r| r.iter().map(to_i64).collect()).collect()
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

fn dot(v: &LatticeVector, w: &LatticeVector) -> Rational {
    v.coords().iter().zip(w.coords()).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

/// `vᵀ · g · w`.
pub fn inner_product(v: &LatticeVector, w: &LatticeVector, g: &GramMatrix) -> Result<Rational> {
    check_dim(g.dim(), v.dim())?;
    let gw = g.apply(w)?;
    Ok(dot(v, &gw))
}

/// Reflection in a root `e` of norm −2: `x ↦ x + (x, e) e`.
pub fn reflect(x: &LatticeVector, e: &LatticeVector, g: &GramMatrix) -> Result<LatticeVector> {
    let norm = inner_product(e, e, g)?;
    if norm != rat(-2) {
        return Err(Error::NotARoot(norm.to_string()));
    }
    let c = inner_product(x, e, g)?;
    Ok(x.add_scaled(&c, e))
}
