//! Convex-hull questions about finite point sets in `t*`: where the origin sits
//! relative to the hull, and the hull's closest point to the origin.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{LinearProgram, LpOutcome};
use crate::rational::{InnerProduct, QVector, Rational};

/// Position of the origin relative to `conv(points)`.
///
/// `Interior` is interior in the ambient space: a hull that is not
/// full-dimensional has empty interior and never reports it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HullPosition {
    Outside,
    Boundary,
    Interior,
}

fn check_dims(points: &[QVector]) -> Result<usize> {
    let first = points.first().ok_or(Error::Empty("point list"))?;
    let k = first.dim();
    if let Some(p) = points.iter().find(|p| p.dim() != k) {
        return Err(Error::DimensionMismatch { expected: k, found: p.dim() });
    }
    Ok(k)
}

/// Dimension of the affine span of `points`.
pub fn affine_rank(points: &[QVector]) -> usize {
    let Some(p0) = points.first() else {
        return 0;
    };
    let diffs: Vec<Vec<Rational>> = points[1..].iter().map(|p| (p - p0).into_coords()).collect();
    linalg::rank(&diffs)
}

pub fn origin_position(points: &[QVector]) -> Result<HullPosition> {
    let k = check_dims(points)?;
    let n = points.len();

    // sum_i l_i p_i = 0, sum_i l_i = 1, l >= 0
    let mut a: Vec<Vec<Rational>> = (0..k).map(|d| points.iter().map(|p| p.coords()[d].clone()).collect()).collect();
    a.push(vec![Rational::one(); n]);
    let mut b = vec![Rational::zero(); k];
    b.push(Rational::one());
    let feasible = LinearProgram { a, b, c: vec![Rational::zero(); n] }.solve();
    if feasible == LpOutcome::Infeasible {
        return Ok(HullPosition::Outside);
    }
    if affine_rank(points) < k {
        return Ok(HullPosition::Boundary);
    }

    // Substitute l_i = t + m_i and maximise t: the origin is in the relative
    // interior iff it has a combination with every weight strictly positive.
    let mut a: Vec<Vec<Rational>> = (0..k)
        .map(|d| {
            let total: Rational = points.iter().map(|p| &p.coords()[d]).sum();
            std::iter::once(total).chain(points.iter().map(|p| p.coords()[d].clone())).collect()
        })
        .collect();
    a.push(std::iter::once(Rational::from_integer(n.into())).chain(std::iter::repeat_n(Rational::one(), n)).collect());
    let mut b = vec![Rational::zero(); k];
    b.push(Rational::one());
    let mut c = vec![Rational::zero(); n + 1];
    c[0] = Rational::one();
    match (LinearProgram { a, b, c }).solve() {
        LpOutcome::Optimal { value, .. } if value.is_positive() => Ok(HullPosition::Interior),
        LpOutcome::Optimal { .. } => Ok(HullPosition::Boundary),
        other => Err(Error::Internal(format!("strict-positivity LP returned {other:?}"))),
    }
}

/// Closest point of a hull to the origin, with a convex-combination witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinNormPoint {
    pub point: QVector,
    pub norm_sq: Rational,
    /// Barycentric weights indexed like the input points; non-negative, summing to one.
    pub weights: Vec<Rational>,
}

/// Minimiser of `|y|` over `aff(points[s] for s in corral)` as barycentric coefficients.
fn affine_minimiser(points: &[QVector], corral: &[usize], ip: &InnerProduct) -> Result<Vec<Rational>> {
    let m = corral.len();
    let mut a = vec![vec![Rational::zero(); m + 1]; m + 1];
    for (r, &i) in corral.iter().enumerate() {
        for (c, &j) in corral.iter().enumerate() {
            a[r][c] = ip.dot(&points[i], &points[j]);
        }
        a[r][m] = Rational::one();
        a[m][r] = Rational::one();
    }
    let mut b = vec![Rational::zero(); m + 1];
    b[m] = Rational::one();
    let mut sol = linalg::solve(a, b).ok_or_else(|| Error::Internal("corral is affinely dependent".into()))?;
    sol.truncate(m);
    Ok(sol)
}

fn combine(points: &[QVector], corral: &[usize], coeffs: &[Rational], dim: usize) -> QVector {
    let mut acc = QVector::zeros(dim);
    for (&i, c) in corral.iter().zip(coeffs) {
        acc = &acc + &points[i].scale(c);
    }
    acc
}

/// Wolfe's minimum-norm-point algorithm over exact rationals.
///
/// Entering points are chosen by least `<x, p>`, ties broken by the
/// lexicographic order of coordinates and then by input position.
pub fn min_norm_point(points: &[QVector], ip: &InnerProduct) -> Result<MinNormPoint> {
    let k = check_dims(points)?;
    if ip.dim() != k {
        return Err(Error::DimensionMismatch { expected: k, found: ip.dim() });
    }
    let norms: Vec<Rational> = points.iter().map(|p| ip.norm_sq(p)).collect();
    let start = (0..points.len())
        .min_by(|&a, &b| norms[a].cmp(&norms[b]).then_with(|| points[a].cmp(&points[b])))
        .expect("nonempty");

    let mut corral = vec![start];
    let mut lambda = vec![Rational::one()];
    let mut x = points[start].clone();

    loop {
        let xx = ip.norm_sq(&x);
        let (j, xp) = points
            .iter()
            .enumerate()
            .map(|(j, p)| (j, ip.dot(&x, p)))
            .min_by(|(a, va), (b, vb)| va.cmp(vb).then_with(|| points[*a].cmp(&points[*b])).then(a.cmp(b)))
            .expect("nonempty");
        if xp >= xx {
            break;
        }
        if corral.contains(&j) {
            return Err(Error::Internal("entering point already in corral".into()));
        }
        corral.push(j);
        lambda.push(Rational::zero());

        loop {
            let alpha = affine_minimiser(points, &corral, ip)?;
            if alpha.iter().all(Signed::is_positive) {
                x = combine(points, &corral, &alpha, k);
                lambda = alpha;
                break;
            }
            let mut theta = Rational::one();
            for (l, a) in lambda.iter().zip(&alpha) {
                if a.is_negative() {
                    let t = l / (l - a);
                    if t < theta {
                        theta = t;
                    }
                }
            }
            let one_minus = Rational::one() - &theta;
            lambda = lambda.iter().zip(&alpha).map(|(l, a)| &one_minus * l + &theta * a).collect();
            let keep: Vec<bool> = lambda.iter().map(|l| !l.is_zero()).collect();
            if keep.iter().all(|&b| b) {
                return Err(Error::Internal("minor cycle removed no point".into()));
            }
            corral = corral.iter().zip(&keep).filter(|(_, &k)| k).map(|(&c, _)| c).collect();
            lambda = lambda.into_iter().zip(&keep).filter(|(_, &k)| k).map(|(l, _)| l).collect();
        }
    }

    let mut weights = vec![Rational::zero(); points.len()];
    for (&i, l) in corral.iter().zip(&lambda) {
        weights[i] = l.clone();
    }
    let norm_sq = ip.norm_sq(&x);
    Ok(MinNormPoint { point: x, norm_sq, weights })
}

/// First-order optimality: `<beta, p - beta> >= 0` for every input point.
pub fn is_optimal(beta: &QVector, points: &[QVector], ip: &InnerProduct) -> bool {
    let bb = ip.norm_sq(beta);
    points.iter().all(|p| ip.dot(beta, p).cmp(&bb) != Ordering::Less)
}
