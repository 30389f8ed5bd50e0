//! Independent oracles and random generators shared by the integration tests.
//! Nothing here calls the solvers under test.

#![allow(dead_code)]

use std::collections::BTreeMap;

use gitstrata_core::rational::{frac, int};
use gitstrata_core::{InnerProduct, QMatrix, QVector, Rational};
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Plain Gaussian elimination with partial search for a nonzero pivot.
/// Returns `None` when the system is singular.
pub fn gauss_solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let d = &f * &a[col][c];
                a[r][c] -= d;
            }
            let d = &f * &b[col];
            b[r] -= d;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for r in (0..n).rev() {
        let mut s = b[r].clone();
        for c in r + 1..n {
            s -= &a[r][c] * &x[c];
        }
        x[r] = s / &a[r][r];
    }
    Some(x)
}

fn gram_dot(g: &QMatrix, u: &QVector, v: &QVector) -> Rational {
    let mut s = Rational::zero();
    for i in 0..u.dim() {
        for j in 0..v.dim() {
            s += &u.coords()[i] * g.entry(i, j) * &v.coords()[j];
        }
    }
    s
}

/// Closest point of the hull by exhaustive face enumeration: for every subset
/// whose affine hull is nondegenerate, take the affine minimiser; keep those
/// with nonnegative barycentric coordinates; return the shortest.
pub fn min_norm_by_faces(points: &[QVector], gram: &QMatrix) -> (QVector, Rational) {
    let mut distinct: Vec<QVector> = points.to_vec();
    distinct.sort();
    distinct.dedup();
    let n = distinct.len();
    let dim = distinct[0].dim();
    let pair: Vec<Vec<Rational>> =
        distinct.iter().map(|u| distinct.iter().map(|v| gram_dot(gram, u, v)).collect()).collect();
    let mut best: Option<(QVector, Rational)> = None;
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
        let s: Vec<&QVector> = idx.iter().map(|&b| &distinct[b]).collect();
        let m = s.len();
        if m > dim + 1 {
            continue;
        }
        let mut a = vec![vec![Rational::zero(); m + 1]; m + 1];
        for r in 0..m {
            for c in 0..m {
                a[r][c] = pair[idx[r]][idx[c]].clone();
            }
            a[r][m] = -Rational::one();
            a[m][r] = Rational::one();
        }
        let mut rhs = vec![Rational::zero(); m + 1];
        rhs[m] = Rational::one();
        let Some(sol) = gauss_solve(a, rhs) else { continue };
        if sol[..m].iter().any(Signed::is_negative) {
            continue;
        }
        let mut p = QVector::zeros(dim);
        for (c, v) in sol[..m].iter().zip(&s) {
            p = &p + &v.scale(c);
        }
        let nn = sol[m].clone();
        if best.as_ref().is_none_or(|(_, b)| nn < *b) {
            best = Some((p, nn));
        }
    }
    best.expect("singletons are always faces")
}

pub fn random_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    frac(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

pub fn random_points(rng: &mut impl Rng, count: usize, dim: usize, bound: i64) -> Vec<QVector> {
    (0..count).map(|_| QVector::new((0..dim).map(|_| random_rational(rng, bound)).collect())).collect()
}

/// `A^T A + I` for a small random integer matrix `A`.
pub fn random_pd(rng: &mut impl Rng, dim: usize) -> InnerProduct {
    let a: Vec<Vec<i64>> = (0..dim).map(|_| (0..dim).map(|_| rng.gen_range(-3..=3)).collect()).collect();
    let rows = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let s: i64 = (0..dim).map(|k| a[k][i] * a[k][j]).sum();
                    int(s + i64::from(i == j))
                })
                .collect()
        })
        .collect();
    InnerProduct::new(QMatrix::new(rows).unwrap()).unwrap()
}

fn multiset(values: &[Rational]) -> BTreeMap<Rational, usize> {
    let mut m = BTreeMap::new();
    for v in values {
        *m.entry(v.clone()).or_default() += 1;
    }
    m
}

/// Searches for `z -> a z + b` carrying `c1` onto `c2`. Any witness sends the
/// first two distinct values of `c1` to two distinct values of `c2`, which
/// determines `(a, b)`, so trying every ordered pair is exhaustive.
pub fn affine_witness(c1: &[Rational], c2: &[Rational]) -> Option<(Rational, Rational)> {
    if c1.len() != c2.len() {
        return None;
    }
    let u0 = &c1[0];
    let u1 = c1.iter().find(|u| *u != u0)?;
    let target = multiset(c2);
    for vi in c2 {
        for vj in c2 {
            if vi == vj {
                continue;
            }
            let a = (vj - vi) / (u1 - u0);
            let b = vi - &a * u0;
            let image: Vec<Rational> = c1.iter().map(|z| &a * z + &b).collect();
            if multiset(&image) == target {
                return Some((a, b));
            }
        }
    }
    None
}
