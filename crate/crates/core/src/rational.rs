//! Exact rational scalars, vectors, and matrices.
//!
//! [`Rat`] wraps an arbitrary-precision rational kept in canonical form
//! (positive denominator, reduced fraction). Vectors and matrices are thin
//! immutable wrappers used by every geometric layer above. Rationals
//! serialize as JSON strings `"p/q"` (or bare integer strings `"p"`) and
//! deserialization canonicalizes.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Index, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    /// Builds `num / den`, canonicalizing sign and common factors.
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidConstruction(
                "rational with zero denominator".into(),
            ));
        }
        Ok(Rat(BigRational::new(num, den)))
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// Convenience constructor for literal fractions; panics on `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "ratio with zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat(self.0.recip())
    }

    /// Sign as -1, 0, or 1.
    pub fn signum(&self) -> i32 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt> {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::InvalidConstruction(format!("bad integer literal '{t}'")))
        };
        match s.split_once('/') {
            Some((num, den)) => Rat::new(parse_int(num)?, parse_int(den)?),
            None => Ok(Rat(BigRational::from_integer(parse_int(s)?))),
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rat(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, rhs: &'a Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

/// An immutable vector of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RatVec(Vec<Rat>);

impl RatVec {
    pub fn new(entries: Vec<Rat>) -> Self {
        RatVec(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        RatVec(vec![Rat::zero(); dim])
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        RatVec(entries.iter().map(|&n| Rat::from_int(n)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    pub fn add(&self, other: &RatVec) -> RatVec {
        debug_assert_eq!(self.dim(), other.dim());
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RatVec) -> RatVec {
        debug_assert_eq!(self.dim(), other.dim());
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, factor: &Rat) -> RatVec {
        RatVec(self.0.iter().map(|a| a * factor).collect())
    }

    pub fn neg(&self) -> RatVec {
        RatVec(self.0.iter().map(|a| -a).collect())
    }

    /// Concatenates two vectors, e.g. a parameter block with a decision block.
    pub fn concat(&self, other: &RatVec) -> RatVec {
        let mut entries = self.0.clone();
        entries.extend(other.0.iter().cloned());
        RatVec(entries)
    }

    /// Keeps the listed coordinates, in the given order.
    pub fn select(&self, keep: &[usize]) -> RatVec {
        RatVec(keep.iter().map(|&i| self.0[i].clone()).collect())
    }

    pub fn push(&self, entry: Rat) -> RatVec {
        let mut entries = self.0.clone();
        entries.push(entry);
        RatVec(entries)
    }
}

impl Index<usize> for RatVec {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl FromIterator<Rat> for RatVec {
    fn from_iter<I: IntoIterator<Item = Rat>>(iter: I) -> Self {
        RatVec(iter.into_iter().collect())
    }
}

/// Exact inner product; the dual pairing of this crate.
pub fn dot(a: &RatVec, b: &RatVec) -> Result<Rat> {
    if a.dim() != b.dim() {
        return Err(Error::dim(a.dim(), b.dim(), "dot product"));
    }
    Ok(a.iter()
        .zip(b.iter())
        .fold(Rat::zero(), |acc, (x, y)| acc + x.clone() * y.clone()))
}

/// A dense rational matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<RatVec>", into = "Vec<RatVec>")]
pub struct RatMat {
    rows: Vec<RatVec>,
    n_cols: usize,
}

impl RatMat {
    /// Builds a matrix from rows of a common length.
    ///
    /// `n_cols` disambiguates the zero-row case, where the column count is
    /// not recoverable from the data.
    pub fn new(rows: Vec<RatVec>, n_cols: usize) -> Result<Self> {
        for row in &rows {
            if row.dim() != n_cols {
                return Err(Error::dim(n_cols, row.dim(), "matrix row length"));
            }
        }
        Ok(RatMat { rows, n_cols })
    }

    pub fn empty(n_cols: usize) -> Self {
        RatMat {
            rows: Vec::new(),
            n_cols,
        }
    }

    pub fn from_int_rows(rows: &[&[i64]], n_cols: usize) -> Self {
        RatMat::new(rows.iter().map(|r| RatVec::from_ints(r)).collect(), n_cols)
            .expect("ragged integer rows")
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                RatVec::new(
                    (0..n)
                        .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                        .collect(),
                )
            })
            .collect();
        RatMat { rows, n_cols: n }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn rows(&self) -> &[RatVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &RatVec {
        &self.rows[i]
    }

    /// Matrix-vector product `A x`.
    pub fn mul_vec(&self, x: &RatVec) -> Result<RatVec> {
        if x.dim() != self.n_cols {
            return Err(Error::dim(self.n_cols, x.dim(), "matrix-vector product"));
        }
        Ok(RatVec::new(
            self.rows
                .iter()
                .map(|r| dot(r, x).expect("row length checked at construction"))
                .collect(),
        ))
    }

    /// Applies the matrix to a vector, i.e. the linear image of `x`.
    pub fn apply(&self, x: &RatVec) -> Result<RatVec> {
        self.mul_vec(x)
    }

    pub fn push_row(&mut self, row: RatVec) -> Result<()> {
        if row.dim() != self.n_cols {
            return Err(Error::dim(self.n_cols, row.dim(), "matrix row length"));
        }
        self.rows.push(row);
        Ok(())
    }
}

impl TryFrom<Vec<RatVec>> for RatMat {
    type Error = Error;
    fn try_from(rows: Vec<RatVec>) -> Result<Self> {
        let n_cols = rows.first().map_or(0, RatVec::dim);
        RatMat::new(rows, n_cols)
    }
}

impl From<RatMat> for Vec<RatVec> {
    fn from(m: RatMat) -> Vec<RatVec> {
        m.rows
    }
}
