//! Hilbert polynomials in `Q[t]`, the Rudakov order, Harder-Narasimhan types
//! and the cocharacter data `beta(n, m, tau)` attached to a type.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, int, parse_rational, sign, to_i64, Rational};

/// Polynomial in `t` with coefficients in the monomial basis, lowest degree first.
/// Trailing zeros are trimmed; the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct HilbertPolynomial {
    coeffs: Vec<Rational>,
}

impl HilbertPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        HilbertPolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// `a t + b`
    pub fn linear(a: i64, b: i64) -> Self {
        Self::from_ints(&[b, a])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_int(&self, t: i64) -> Rational {
        self.eval(&int(t))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    fn check_sheaf_like(&self) -> Result<()> {
        match self.leading_coeff() {
            Some(c) if c.is_positive() => Ok(()),
            _ => Err(Error::invalid(format!("polynomial {self} does not have a positive leading coefficient"))),
        }
    }
}

impl Add for &HilbertPolynomial {
    type Output = HilbertPolynomial;
    fn add(self, rhs: &HilbertPolynomial) -> HilbertPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = Rational::zero();
        HilbertPolynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + rhs.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Sub for &HilbertPolynomial {
    type Output = HilbertPolynomial;
    fn sub(self, rhs: &HilbertPolynomial) -> HilbertPolynomial {
        self + &rhs.scale(&-Rational::one())
    }
}

impl Mul for &HilbertPolynomial {
    type Output = HilbertPolynomial;
    fn mul(self, rhs: &HilbertPolynomial) -> HilbertPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return HilbertPolynomial::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        HilbertPolynomial::new(out)
    }
}

impl<'a> std::iter::Sum<&'a HilbertPolynomial> for HilbertPolynomial {
    fn sum<I: Iterator<Item = &'a HilbertPolynomial>>(iter: I) -> Self {
        iter.fold(HilbertPolynomial::default(), |acc, p| &acc + p)
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let abs = c.abs();
            if deg == 0 || !abs.is_one() {
                out.push_str(&fmt_rational(&abs));
            }
            match deg {
                0 => {}
                1 => out.push('t'),
                d => out.push_str(&format!("t^{d}")),
            }
        }
        f.write_str(&out)
    }
}

/// Parses text such as `"2t+3"`, `"t^2-1/2t+3"` or `"1/2*t - 4"`.
impl FromStr for HilbertPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut coeffs: Vec<Rational> = Vec::new();
        for term in terms {
            let (negative, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            let (coef_text, degree) = match body.find('t') {
                None => (body, 0usize),
                Some(pos) => {
                    let rest = &body[pos + 1..];
                    let degree = if rest.is_empty() {
                        1
                    } else if let Some(exp) = rest.strip_prefix('^') {
                        exp.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent in term {term:?}")))?
                    } else {
                        return Err(Error::Parse(format!("unexpected text after t in term {term:?}")));
                    };
                    (body[..pos].trim_end_matches('*'), degree)
                }
            };
            let mut c = if coef_text.is_empty() { Rational::one() } else { parse_rational(coef_text)? };
            if negative {
                c = -c;
            }
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, Rational::zero());
            }
            coeffs[degree] += c;
        }
        Ok(HilbertPolynomial::new(coeffs))
    }
}

impl TryFrom<String> for HilbertPolynomial {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<HilbertPolynomial> for String {
    fn from(p: HilbertPolynomial) -> String {
        p.to_string()
    }
}

/// Compares `P` and `Q` in the Rudakov order: the eventual sign of
/// `P(n)/P(m) - Q(n)/Q(m)` for `m >> n >> 0`. `Less` means `P` precedes `Q`.
///
/// Higher degree is smaller. For equal degrees with leading coefficients
/// `a`, `b` the sign is that of the leading coefficient of `bP - aQ`,
/// and `Equal` happens exactly for proportional polynomials.
pub fn rudakov_compare(p: &HilbertPolynomial, q: &HilbertPolynomial) -> Result<Ordering> {
    p.check_sheaf_like()?;
    q.check_sheaf_like()?;
    let (dp, dq) = (p.degree().unwrap_or(0), q.degree().unwrap_or(0));
    if dp != dq {
        return Ok(dq.cmp(&dp));
    }
    let a = p.leading_coeff().expect("nonzero");
    let b = q.leading_coeff().expect("nonzero");
    let diff = &p.scale(b) - &q.scale(a);
    Ok(diff.leading_coeff().map_or(Ordering::Equal, sign))
}

/// Sign of `P(n) Q(m) - Q(n) P(m)` at a concrete pair; the defining quantity
/// of the Rudakov order when both values are positive.
pub fn rudakov_sample(p: &HilbertPolynomial, q: &HilbertPolynomial, n: i64, m: i64) -> Ordering {
    let lhs = p.eval_int(n) * q.eval_int(m);
    let rhs = q.eval_int(n) * p.eval_int(m);
    lhs.cmp(&rhs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HnViolation {
    Empty,
    NonPositiveLeading { index: usize },
    NotDecreasing { index: usize },
    SumMismatch { expected: HilbertPolynomial, found: HilbertPolynomial },
}

impl fmt::Display for HnViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HnViolation::Empty => f.write_str("type has no entries"),
            HnViolation::NonPositiveLeading { index } => {
                write!(f, "entry {index} has non-positive leading coefficient")
            }
            HnViolation::NotDecreasing { index } => {
                write!(f, "entries {index} and {} are not strictly decreasing in the Rudakov order", index + 1)
            }
            HnViolation::SumMismatch { expected, found } => {
                write!(f, "entries sum to {found}, expected {expected}")
            }
        }
    }
}

/// Checks the Harder-Narasimhan conditions: strictly decreasing entries
/// summing to `total`. Reports the first violated condition.
pub fn validate_hn_type(entries: &[HilbertPolynomial], total: &HilbertPolynomial) -> Result<(), HnViolation> {
    if entries.is_empty() {
        return Err(HnViolation::Empty);
    }
    for (index, e) in entries.iter().enumerate() {
        if e.check_sheaf_like().is_err() {
            return Err(HnViolation::NonPositiveLeading { index });
        }
    }
    for (index, w) in entries.windows(2).enumerate() {
        if rudakov_compare(&w[0], &w[1]).expect("checked") != Ordering::Greater {
            return Err(HnViolation::NotDecreasing { index });
        }
    }
    let found: HilbertPolynomial = entries.iter().sum();
    if &found != total {
        return Err(HnViolation::SumMismatch { expected: total.clone(), found });
    }
    Ok(())
}

/// Validated Harder-Narasimhan type `(P_1, ..., P_l)`, `P_1 > ... > P_l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<HilbertPolynomial>", into = "Vec<HilbertPolynomial>")]
pub struct HNType {
    entries: Vec<HilbertPolynomial>,
}

impl HNType {
    pub fn new(entries: Vec<HilbertPolynomial>) -> Result<Self> {
        let total: HilbertPolynomial = entries.iter().sum();
        validate_hn_type(&entries, &total).map_err(|v| Error::HnAxiom(v.to_string()))?;
        Ok(HNType { entries })
    }

    /// Also checks that the entries sum to `total`.
    pub fn with_total(entries: Vec<HilbertPolynomial>, total: &HilbertPolynomial) -> Result<Self> {
        validate_hn_type(&entries, total).map_err(|v| Error::HnAxiom(v.to_string()))?;
        Ok(HNType { entries })
    }

    /// Parses `"t+2;t+1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let entries = s.split(';').map(str::parse).collect::<Result<Vec<HilbertPolynomial>>>()?;
        Self::new(entries)
    }

    pub fn entries(&self) -> &[HilbertPolynomial] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> HilbertPolynomial {
        self.entries.iter().sum()
    }

    /// For curve-type entries `r t + c` on `P^1`: every entry has `gcd(rank, degree) = 1`,
    /// where the degree is `c - r`. Higher-degree entries are never reported coprime.
    pub fn is_coprime_on_p1(&self) -> bool {
        self.entries.iter().all(|p| {
            if p.degree() != Some(1) {
                return false;
            }
            let (Some(c), Some(r)) = (to_i64(&p.coeffs()[0]), to_i64(&p.coeffs()[1])) else {
                return false;
            };
            num_integer::gcd(r, c - r) == 1
        })
    }
}

impl TryFrom<Vec<HilbertPolynomial>> for HNType {
    type Error = Error;
    fn try_from(v: Vec<HilbertPolynomial>) -> Result<Self> {
        HNType::new(v)
    }
}

impl From<HNType> for Vec<HilbertPolynomial> {
    fn from(t: HNType) -> Self {
        t.entries
    }
}

impl fmt::Display for HNType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(";"))
    }
}

/// Eigenvalues of a rational `SL` cocharacter with their multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BetaVector {
    entries: Vec<(Rational, u64)>,
}

impl BetaVector {
    pub fn entries(&self) -> &[(Rational, u64)] {
        &self.entries
    }

    pub fn trace(&self) -> Rational {
        self.entries.iter().map(|(v, m)| v * Rational::from_integer((*m).into())).sum()
    }

    pub fn dim(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicities(&self) -> Vec<u64> {
        self.entries.iter().map(|(_, m)| *m).collect()
    }

    /// Every eigenvalue repeated by its multiplicity.
    pub fn expanded(&self) -> Vec<Rational> {
        self.entries
            .iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v.clone(), *m as usize))
            .collect()
    }
}

fn positive_integer(value: &Rational, what: &str) -> Result<u64> {
    use num_traits::ToPrimitive;
    if !value.is_integer() || !value.is_positive() {
        return Err(Error::NotLargeEnough(format!("{what} = {} is not a positive integer", fmt_rational(value))));
    }
    value
        .numer()
        .to_u64()
        .ok_or_else(|| Error::NotLargeEnough(format!("{what} does not fit in u64")))
}

/// `beta_i = P(m)/P(n) - P_i(m)/P_i(n)`, repeated `P_i(n)` times.
pub fn beta_of_type(tau: &HNType, n: i64, m: i64) -> Result<BetaVector> {
    if m <= n {
        return Err(Error::invalid(format!("need m > n, got n = {n}, m = {m}")));
    }
    let total = tau.total();
    let pn = total.eval_int(n);
    let pm = total.eval_int(m);
    positive_integer(&pn, "P(n)")?;
    positive_integer(&pm, "P(m)")?;
    let base = &pm / &pn;
    let mut entries = Vec::with_capacity(tau.len());
    for (i, p) in tau.entries().iter().enumerate() {
        let pin = p.eval_int(n);
        let pim = p.eval_int(m);
        let mult = positive_integer(&pin, &format!("P_{}(n)", i + 1))?;
        positive_integer(&pim, &format!("P_{}(m)", i + 1))?;
        entries.push((&base - &pim / &pin, mult));
    }
    if let Some(i) = entries.windows(2).position(|w| w[0].0 <= w[1].0) {
        return Err(Error::HnAxiom(format!(
            "beta_{} <= beta_{} at (n, m) = ({n}, {m}): the Rudakov ordering of the type is not yet visible at this pair",
            i + 1,
            i + 2
        )));
    }
    let beta = BetaVector { entries };
    if !beta.trace().is_zero() {
        return Err(Error::HnAxiom(format!(
            "trace {} != 0: multiplicities do not sum to P(n)",
            fmt_rational(&beta.trace())
        )));
    }
    Ok(beta)
}
