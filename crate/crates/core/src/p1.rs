//! Configurations of `n` unordered points on `P^1` under `SL(2)` acting on
//! `Sym^n(P^1)`, the space of binary forms of degree `n`.
//!
//! Orientation: an affine point `a` is `[a:1]` and contributes the factor
//! `x - a y`; infinity is `[1:0]` and contributes `y`. With `i` points at
//! infinity the form is divisible by `y^i`, so the coefficients of
//! `x^(n-j) y^j` with `j < i` vanish. In the weight basis of
//! [`WeightSystem::sym_power`] such a form has weights `<= n - 2i`, and its
//! destabilising direction is `n - 2i`; the Weyl flip sends it to the
//! chamber representative `2i - n`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hkkn::{self, Cocharacter, EpsWeight, PointSupport, WeightSystem};
use crate::rational::{fmt_rational, int, parse_rational, InnerProduct, QVector, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum P1Point {
    Affine(Rational),
    Infinity,
}

impl PartialOrd for P1Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Affine values ascending, infinity last.
impl Ord for P1Point {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (P1Point::Affine(a), P1Point::Affine(b)) => a.cmp(b),
            (P1Point::Affine(_), P1Point::Infinity) => Ordering::Less,
            (P1Point::Infinity, P1Point::Affine(_)) => Ordering::Greater,
            (P1Point::Infinity, P1Point::Infinity) => Ordering::Equal,
        }
    }
}

impl P1Point {
    pub fn affine(v: i64) -> Self {
        P1Point::Affine(int(v))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, P1Point::Infinity)
    }

    fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            Ok(P1Point::Infinity)
        } else {
            parse_rational(s).map(P1Point::Affine)
        }
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Point::Affine(a) => f.write_str(&fmt_rational(a)),
            P1Point::Infinity => f.write_str("inf"),
        }
    }
}

/// A multiset of points, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration(Vec<P1Point>);

impl Configuration {
    pub fn new(mut points: Vec<P1Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty("configuration"));
        }
        points.sort();
        Ok(Configuration(points))
    }

    /// Comma-separated values with `inf` for infinity, e.g. `0,1,inf,inf`.
    pub fn parse(s: &str) -> Result<Self> {
        let points = s
            .split(',')
            .enumerate()
            .map(|(k, p)| P1Point::parse(p).map_err(|e| Error::field(format!("points[{k}]"), e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }

    pub fn points(&self) -> &[P1Point] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn count_infinity(&self) -> usize {
        self.0.iter().filter(|p| p.is_infinity()).count()
    }

    pub fn affine_values(&self) -> Vec<Rational> {
        self.0
            .iter()
            .filter_map(|p| match p {
                P1Point::Affine(a) => Some(a.clone()),
                P1Point::Infinity => None,
            })
            .collect()
    }

    /// Largest number of coincident points.
    pub fn max_multiplicity(&self) -> usize {
        let mut counts: BTreeMap<&P1Point, usize> = BTreeMap::new();
        for p in &self.0 {
            *counts.entry(p).or_default() += 1;
        }
        counts.into_values().max().unwrap_or(0)
    }

    pub fn map(&self, f: impl Fn(&P1Point) -> P1Point) -> Configuration {
        let mut points: Vec<P1Point> = self.0.iter().map(f).collect();
        points.sort();
        Configuration(points)
    }

    /// Coefficients of `x^(n-j) y^j`, `j = 0..=n`, of the product of the point factors.
    pub fn binary_form(&self) -> Vec<Rational> {
        let mut coeffs = vec![Rational::one()];
        for p in &self.0 {
            let mut next = vec![Rational::zero(); coeffs.len() + 1];
            for (j, c) in coeffs.iter().enumerate() {
                match p {
                    P1Point::Affine(a) => {
                        next[j] += c;
                        next[j + 1] -= a * c;
                    }
                    P1Point::Infinity => next[j + 1] += c,
                }
            }
            coeffs = next;
        }
        coeffs
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Indices of the nonzero coefficients of the binary form, in the
/// coordinates of `WeightSystem::sym_power(n)`.
pub fn to_support(c: &Configuration) -> PointSupport {
    PointSupport::from_indices(
        c.binary_form().iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, _)| j),
    )
}

/// Stratum index read off the geometry: `2M - n` when more than half of the
/// points coincide at a point of multiplicity `M`, otherwise 0.
pub fn classify(c: &Configuration) -> Rational {
    let n = c.n();
    let m = c.max_multiplicity();
    if 2 * m > n {
        int((2 * m - n) as i64)
    } else {
        Rational::zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum YzMembership {
    InZ,
    #[serde(rename = "InY_only")]
    InYOnly,
    Neither,
}

impl fmt::Display for YzMembership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            YzMembership::InZ => "InZ",
            YzMembership::InYOnly => "InY_only",
            YzMembership::Neither => "Neither",
        })
    }
}

fn check_i(n: usize, i: usize) -> Result<()> {
    if 2 * i <= n || i > n {
        return Err(Error::invalid(format!("i = {i} must satisfy n/2 < i <= n for n = {n}")));
    }
    Ok(())
}

/// `Y`: exactly `i` points at infinity. `Z`: additionally all remaining points at 0.
pub fn membership_yz(c: &Configuration, i: usize) -> Result<YzMembership> {
    check_i(c.n(), i)?;
    if c.count_infinity() != i {
        return Ok(YzMembership::Neither);
    }
    if c.affine_values().iter().all(Zero::is_zero) {
        Ok(YzMembership::InZ)
    } else {
        Ok(YzMembership::InYOnly)
    }
}

fn all_equal(values: &[Rational]) -> bool {
    values.windows(2).all(|w| w[0] == w[1])
}

/// Totally stable: exactly `i` points at infinity and the others not all equal.
pub fn membership_ts(c: &Configuration, i: usize) -> Result<bool> {
    check_i(c.n(), i)?;
    Ok(c.count_infinity() == i && !all_equal(&c.affine_values()))
}

/// `z -> a z + b` with `a != 0`; fixes infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub a: Rational,
    pub b: Rational,
}

impl AffineMap {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::invalid("affine map needs a != 0"));
        }
        Ok(AffineMap { a, b })
    }

    pub fn apply(&self, p: &P1Point) -> P1Point {
        match p {
            P1Point::Affine(z) => P1Point::Affine(&self.a * z + &self.b),
            P1Point::Infinity => P1Point::Infinity,
        }
    }

    pub fn apply_all(&self, c: &Configuration) -> Configuration {
        c.map(|p| self.apply(p))
    }

    pub fn apply_values(&self, values: &[Rational]) -> Vec<Rational> {
        values.iter().map(|z| &self.a * z + &self.b).collect()
    }
}

fn pow_i(r: &Rational, e: i64) -> Rational {
    if e >= 0 {
        Pow::pow(r, e as u64)
    } else {
        Pow::pow(r.recip(), e.unsigned_abs())
    }
}

fn centred_power_sums(values: &[Rational]) -> Vec<Rational> {
    let s = int(values.len() as i64);
    let mean = values.iter().sum::<Rational>() / s;
    let centred: Vec<Rational> = values.iter().map(|v| v - &mean).collect();
    (1..=values.len() as u64).map(|k| centred.iter().map(|u| Pow::pow(u, k)).sum()).collect()
}

/// Whether some `z -> a z + b` with `a` in the algebraic closure carries `c1`
/// onto `c2` as multisets.
///
/// After centring, the question is whether `v = a u` for some `a != 0`, i.e.
/// whether the power sums satisfy `p_k(v) = a^k p_k(u)`. With `K` the set of
/// `k` where `p_k(u) != 0` and `g = gcd(K)`, such an `a` exists iff the zero
/// patterns agree and every ratio `r_k = p_k(v) / p_k(u)` equals `A^(k/g)`,
/// where `A = prod r_k^(c_k)` for Bezout coefficients `sum c_k k = g`.
pub fn affine_equivalent(c1: &[Rational], c2: &[Rational]) -> Result<bool> {
    if c1.is_empty() || c1.len() != c2.len() {
        return Err(Error::invalid(format!("sizes {} and {} must agree and be positive", c1.len(), c2.len())));
    }
    if all_equal(c1) || all_equal(c2) {
        return Err(Error::invalid("configuration with all points equal is not totally stable"));
    }
    let p = centred_power_sums(c1);
    let q = centred_power_sums(c2);
    let mut ks: Vec<(i64, Rational)> = Vec::new();
    for (k, (pk, qk)) in (1i64..).zip(p.iter().zip(&q)) {
        match (pk.is_zero(), qk.is_zero()) {
            (true, true) => {}
            (false, false) => ks.push((k, qk / pk)),
            _ => return Ok(false),
        }
    }
    // Bezout: track (g, A) with A = a^g for any valid a.
    let (mut g, mut big_a) = (ks[0].0, ks[0].1.clone());
    for (k, r) in &ks[1..] {
        let e = g.extended_gcd(k);
        big_a = pow_i(&big_a, e.x) * pow_i(r, e.y);
        g = e.gcd;
    }
    Ok(ks.iter().all(|(k, r)| *r == pow_i(&big_a, k / g)))
}

/// `z -> 1/z`, swapping 0 and infinity; the Weyl element up to a sign.
pub fn weyl_flip(c: &Configuration) -> Configuration {
    c.map(|p| match p {
        P1Point::Infinity => P1Point::Affine(Rational::zero()),
        P1Point::Affine(z) if z.is_zero() => P1Point::Infinity,
        P1Point::Affine(z) => P1Point::Affine(z.recip()),
    })
}

/// `SL(2)` translates used to find the worst destabilising direction: the
/// configuration itself and, for each distinct affine point `p`, its image
/// under `z -> 1/(z - p)`, which moves `p` to infinity.
pub fn sl2_sweep(c: &Configuration) -> Vec<Configuration> {
    let mut out = vec![c.clone()];
    let mut distinct = c.affine_values();
    distinct.dedup();
    for p in distinct {
        out.push(c.map(|q| match q {
            P1Point::Infinity => P1Point::Affine(Rational::zero()),
            P1Point::Affine(z) if *z == p => P1Point::Infinity,
            P1Point::Affine(z) => P1Point::Affine((z - &p).recip()),
        }));
    }
    out
}

/// Stratum index computed by the weight engine: the largest chamber
/// representative over the `SL(2)` sweep of the configuration.
pub fn engine_stratum(c: &Configuration) -> Result<Rational> {
    let ws = WeightSystem::sym_power(c.n());
    sl2_sweep(c).iter().try_fold(Rational::zero(), |best, t| {
        let beta = ws.stratum_of(&to_support(t))?.beta;
        Ok(best.max(beta.coords()[0].clone()))
    })
}

/// Dimension of the group of translations `z -> z + b` fixing `c`: a
/// nonzero translation moves every finite nonempty set of affine points.
pub fn translation_stabiliser_dim(c: &Configuration) -> u32 {
    u32::from(c.affine_values().is_empty())
}

/// The configuration with `i` points at infinity and the rest at 0, spanning `Z_min`.
pub fn zmin_configuration(n: usize, i: usize) -> Result<Configuration> {
    check_i(n, i)?;
    let mut pts = vec![P1Point::Infinity; i];
    pts.extend(std::iter::repeat_n(P1Point::affine(0), n - i));
    Configuration::new(pts)
}

/// Executable form of the hypotheses needed for a projective quotient of
/// `Ybar_beta` by the Borel subgroup, with `beta = 2i - n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumHypotheses {
    pub n: usize,
    pub i: usize,
    pub beta: String,
    /// The grading cocharacter acts with positive weights on `Lie U`.
    pub grading: bool,
    /// After the `(1 + e)` twist, the `lambda_beta`-pairings on `Ybar_beta` are adapted.
    pub adapted: bool,
    /// Points of `Z_min` have trivial unipotent stabiliser, so stability equals semistability there.
    pub ss_equals_s: bool,
    pub twisted_pairings: Vec<EpsWeight>,
}

impl StratumHypotheses {
    pub fn all_hold(&self) -> bool {
        self.grading && self.adapted && self.ss_equals_s
    }
}

pub fn stratum_hypotheses(n: usize, i: usize) -> Result<StratumHypotheses> {
    check_i(n, i)?;
    let ws = WeightSystem::sym_power(n);
    let beta = QVector::from_ints(&[2 * i as i64 - n as i64]);
    let lambda = Cocharacter::new(beta.clone());
    let ybar = ws.ybar_support(&beta)?;
    let all = ws.twist_eps(&beta, &lambda)?;
    let twisted_pairings: Vec<EpsWeight> = ybar.indices().iter().map(|&j| all[j].clone()).collect();
    Ok(StratumHypotheses {
        n,
        i,
        beta: beta.to_string(),
        grading: ws.grades_unipotent()?,
        adapted: hkkn::is_adapted(&twisted_pairings)?,
        ss_equals_s: translation_stabiliser_dim(&zmin_configuration(n, i)?) == 0,
        twisted_pairings,
    })
}

/// `Ybar` for `i` points at infinity in the untranslated orientation:
/// coordinates `j >= i` of `Sym^n`, with their weights `n - 2j`.
pub fn ybar_weight_system(n: usize, i: usize) -> Result<WeightSystem> {
    check_i(n, i)?;
    let weights = (i..=n).map(|j| QVector::from_ints(&[n as i64 - 2 * j as i64])).collect();
    WeightSystem::new(weights, InnerProduct::identity(1))
}

/// Total stability decided through the weight engine: flow to `Z_min`
/// under `lambda = n - 2i`, then the `U`-sweep and `Z_min` predicates.
pub fn totally_stable_via_engine(c: &Configuration, i: usize) -> Result<bool> {
    let n = c.n();
    let ws = ybar_weight_system(n, i)?;
    let full = to_support(c);
    if full.indices().iter().any(|&j| j < i) {
        return Ok(false);
    }
    let x = PointSupport::from_indices(full.indices().iter().map(|j| j - i));
    let lambda = Cocharacter::from_ints(&[n as i64 - 2 * i as i64]);
    let affine = c.affine_values();
    let in_uzmin = |_: &PointSupport| all_equal(&affine);
    let zmin_stable = |_: &PointSupport| translation_stabiliser_dim(&zmin_configuration(n, i).expect("checked")) == 0;
    match hkkn::totally_stable(&x, &lambda, &ws, in_uzmin, zmin_stable) {
        Err(Error::NotInMinimalBasin(_)) => Ok(false),
        other => other,
    }
}
