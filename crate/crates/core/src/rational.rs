//! Exact rational scalars, vectors and inner products.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| Error::Parse(format!("bad numerator in {t:?}")))?;
    let d: BigInt = den.parse().map_err(|_| Error::Parse(format!("bad denominator in {t:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("denominator is zero in {t:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Integer value of `r`, if it is one and fits in `i64`.
pub fn to_i64(r: &Rational) -> Option<i64> {
    use num_traits::ToPrimitive;
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn sign(r: &Rational) -> std::cmp::Ordering {
    if r.is_positive() {
        std::cmp::Ordering::Greater
    } else if r.is_negative() {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Equal
    }
}

pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// A vector of exact rationals. Orders lexicographically by coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QVector(Vec<Rational>);

impl QVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        QVector(coords)
    }

    pub fn from_ints(v: &[i64]) -> Self {
        QVector(v.iter().map(|&x| int(x)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        QVector(vec![Rational::zero(); dim])
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

    pub fn scale(&self, c: &Rational) -> QVector {
        QVector(self.0.iter().map(|x| x * c).collect())
    }

    /// Standard (coordinate) dot product; see [`InnerProduct`] for the invariant form.
    pub fn dot(&self, other: &QVector) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn parse(s: &str) -> Result<QVector> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        t.split(',').map(parse_rational).collect::<Result<Vec<_>>>().map(QVector)
    }
}

impl Add for &QVector {
    type Output = QVector;
    fn add(self, rhs: &QVector) -> QVector {
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &QVector {
    type Output = QVector;
    fn sub(self, rhs: &QVector) -> QVector {
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &QVector {
    type Output = QVector;
    fn neg(self) -> QVector {
        QVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Dimension-1 vectors print as a bare rational, others as `(a,b,...)`.
impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return f.write_str(&fmt_rational(&self.0[0]));
        }
        let parts: Vec<String> = self.0.iter().map(fmt_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Square rational matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix(Vec<Vec<Rational>>);

impl QMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty("matrix"));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: r.len() });
        }
        Ok(QMatrix(rows))
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        QMatrix(
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.0[i][j]
    }

    pub fn apply(&self, v: &QVector) -> QVector {
        QVector(self.0.iter().map(|row| row.iter().zip(v.coords()).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        let n = self.dim();
        QMatrix(
            (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|k| &self.0[i][k] * &other.0[k][j]).sum()).collect())
                .collect(),
        )
    }

    pub fn transpose(&self) -> QMatrix {
        let n = self.dim();
        QMatrix((0..n).map(|i| (0..n).map(|j| self.0[j][i].clone()).collect()).collect())
    }
}

/// Positive-definite symmetric bilinear form `<u, v> = u^T G v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InnerProduct {
    gram: QMatrix,
}

impl InnerProduct {
    /// Validates symmetry and positive-definiteness by exact elimination
    /// (all pivots of the unpivoted LDL^T factorisation must be positive).
    pub fn new(gram: QMatrix) -> Result<Self> {
        let n = gram.dim();
        for i in 0..n {
            for j in 0..i {
                if gram.entry(i, j) != gram.entry(j, i) {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        let mut a: Vec<Vec<Rational>> = gram.rows().to_vec();
        for k in 0..n {
            if !a[k][k].is_positive() {
                return Err(Error::NotPositiveDefinite);
            }
            for i in k + 1..n {
                let f = &a[i][k] / &a[k][k];
                for j in k..n {
                    let d = &f * &a[k][j];
                    a[i][j] -= d;
                }
            }
        }
        Ok(InnerProduct { gram })
    }

    pub fn identity(n: usize) -> Self {
        InnerProduct { gram: QMatrix::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    pub fn dot(&self, u: &QVector, v: &QVector) -> Rational {
        let gv = self.gram.apply(v);
        u.dot(&gv)
    }

    pub fn norm_sq(&self, v: &QVector) -> Rational {
        self.dot(v, v)
    }

    /// `M^T G M == G`, i.e. `M` is an isometry of this form.
    pub fn preserved_by(&self, m: &QMatrix) -> bool {
        m.transpose().mul(&self.gram).mul(m) == self.gram
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        assert_eq!(fmt_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(fmt_rational(&parse_rational("-10/5").unwrap()), "-2");
        assert_eq!(fmt_rational(&parse_rational(" 7 ").unwrap()), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn denominators_are_positive() {
        let r = parse_rational("3/-6").unwrap();
        assert!(r.denom().is_positive());
        assert_eq!(r, frac(-1, 2));
    }

    #[test]
    fn vector_display() {
        assert_eq!(QVector::new(vec![frac(1, 2), int(-1)]).to_string(), "(1/2,-1)");
        assert_eq!(QVector::from_ints(&[4]).to_string(), "4");
        assert_eq!(QVector::parse("(1/2, -1)").unwrap(), QVector::new(vec![frac(1, 2), int(-1)]));
    }

    #[test]
    fn rejects_indefinite_and_asymmetric_forms() {
        let m = QMatrix::from_ints(&[&[1, 2], &[2, 1]]).unwrap();
        assert_eq!(InnerProduct::new(m), Err(Error::NotPositiveDefinite));
        let m = QMatrix::from_ints(&[&[2, 1], &[0, 2]]).unwrap();
        assert_eq!(InnerProduct::new(m), Err(Error::NotSymmetric));
        let m = QMatrix::from_ints(&[&[0, 0], &[0, 1]]).unwrap();
        assert_eq!(InnerProduct::new(m), Err(Error::NotPositiveDefinite));
        let m = QMatrix::from_ints(&[&[2, -1], &[-1, 2]]).unwrap();
        assert!(InnerProduct::new(m).is_ok());
    }

    #[test]
    fn isometry_check() {
        let ip = InnerProduct::identity(2);
        let swap = QMatrix::from_ints(&[&[0, 1], &[1, 0]]).unwrap();
        assert!(ip.preserved_by(&swap));
        let shear = QMatrix::from_ints(&[&[1, 1], &[0, 1]]).unwrap();
        assert!(!ip.preserved_by(&shear));
    }
}
