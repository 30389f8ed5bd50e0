//! Instability stratification kernel for torus-presented actions: the
//! Hilbert-Mumford function, semistability, the index set of optimal
//! destabilising directions, stratum assignment and the `Z`/`Y` loci,
//! limits under cocharacters, parabolic block data, twisting and the
//! adaptedness and grading checks used for non-reductive quotients.

mod eps;
mod weights;

use std::collections::BTreeSet;

use num_traits::Signed;
use serde::Serialize;

pub use eps::EpsWeight;
pub use weights::{Cocharacter, PointSupport, WeightSystem};

use crate::error::{Error, Result};
use crate::hull::{self, HullPosition};
use crate::rational::{QVector, Rational};

/// Ordered from worst to best, so `min` picks the worst status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Semistability {
    Unstable,
    StrictlySemistable,
    Stable,
}

impl From<HullPosition> for Semistability {
    fn from(p: HullPosition) -> Self {
        match p {
            HullPosition::Outside => Semistability::Unstable,
            HullPosition::Boundary => Semistability::StrictlySemistable,
            HullPosition::Interior => Semistability::Stable,
        }
    }
}

/// `mu` together with `sign(mu) * mu^2 / |lambda|^2`, the square of
/// `M = mu / |lambda|` with its sign, so comparisons stay rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedMu {
    pub mu: Rational,
    pub signed_sq: Rational,
}

/// Outcome of assigning a point to its stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    /// Chamber representative; zero iff the point is semistable.
    pub beta: QVector,
    pub norm_sq: Rational,
    /// Closest point of the untranslated weight hull.
    pub raw_beta: QVector,
    /// Index of the Weyl element carrying `raw_beta` to `beta`.
    pub weyl_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParabolicBlocks {
    pub blocks: Vec<u64>,
    pub dim_unipotent: u64,
    pub dim_levi_gl: u64,
    pub dim_parabolic_gl: u64,
    pub dim_levi_sl: u64,
    pub dim_parabolic_sl: u64,
}

fn nonzero(lambda: &Cocharacter) -> Result<()> {
    if lambda.vector().is_zero() {
        Err(Error::invalid("cocharacter must be nonzero"))
    } else {
        Ok(())
    }
}

impl WeightSystem {
    fn check_vec(&self, v: &QVector) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: v.dim() });
        }
        Ok(())
    }

    pub fn pairing(&self, i: usize, lambda: &Cocharacter) -> Rational {
        self.ip().dot(self.weight(i), lambda.vector())
    }

    /// Hilbert-Mumford weight `mu(x, lambda) = -min_{i in x} <w_i, lambda>`.
    ///
    /// With this sign every point of `Z_beta` has `mu(x, lambda_beta) = -|beta|^2`.
    pub fn mu(&self, x: &PointSupport, lambda: &Cocharacter) -> Result<Rational> {
        self.check_vec(lambda.vector())?;
        nonzero(lambda)?;
        let min = x
            .indices()
            .iter()
            .map(|&i| self.pairing(i, lambda))
            .min()
            .ok_or(Error::Empty("support"))?;
        Ok(-min)
    }

    pub fn normalized_mu(&self, x: &PointSupport, lambda: &Cocharacter) -> Result<NormalizedMu> {
        let mu = self.mu(x, lambda)?;
        let sq = &mu * &mu / self.ip().norm_sq(lambda.vector());
        let signed_sq = if mu.is_negative() { -sq } else { sq };
        Ok(NormalizedMu { mu, signed_sq })
    }

    /// Semistability read off the weight polytope of `x`; with a Weyl group,
    /// the worst status over all Weyl translates of the weights.
    pub fn semistability(&self, x: &PointSupport) -> Result<Semistability> {
        let weights = self.support_weights(x);
        self.group_elements()
            .iter()
            .map(|g| {
                let translated: Vec<QVector> = weights.iter().map(|w| g.apply(w)).collect();
                hull::origin_position(&translated).map(Semistability::from)
            })
            .try_fold(Semistability::Stable, |acc, s| s.map(|s| acc.min(s)))
    }

    /// Lexicographically largest Weyl image of `v` in the closed chamber, and
    /// the index of the element realising it.
    pub fn chamber_representative(&self, v: &QVector) -> (QVector, usize) {
        let group = self.group_elements();
        group
            .iter()
            .enumerate()
            .map(|(i, g)| (g.apply(v), i))
            .filter(|(img, _)| self.in_chamber(img))
            .max_by(|(a, ia), (b, ib)| a.cmp(b).then(ib.cmp(ia)))
            .unwrap_or_else(|| (v.clone(), 0))
    }

    /// The index set: chamber representatives of the closest points to the
    /// origin of the hulls of all nonempty subsets of the weights, sorted.
    pub fn index_set(&self) -> Result<Vec<QVector>> {
        let distinct: Vec<QVector> = self.weights().iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let n = distinct.len();
        if n >= usize::BITS as usize - 1 {
            return Err(Error::invalid("too many distinct weights for exhaustive enumeration"));
        }
        let mut found = BTreeSet::new();
        let mut subset = Vec::with_capacity(n);
        for mask in 1u64..(1u64 << n) {
            subset.clear();
            subset.extend((0..n).filter(|b| mask >> b & 1 == 1).map(|b| distinct[b].clone()));
            let mn = hull::min_norm_point(&subset, self.ip())?;
            found.insert(self.chamber_representative(&mn.point).0);
        }
        Ok(found.into_iter().collect())
    }

    pub fn stratum_of(&self, x: &PointSupport) -> Result<Stratum> {
        let weights = self.support_weights(x);
        let mn = hull::min_norm_point(&weights, self.ip())?;
        let (beta, weyl_index) = self.chamber_representative(&mn.point);
        if !beta.is_zero() {
            let g = &self.group_elements()[weyl_index];
            let translated: Vec<QVector> = weights.iter().map(|w| g.apply(w)).collect();
            if !self.in_y_locus(&translated, &beta) {
                return Err(Error::Internal(format!("support is not in Y_beta for its own beta {beta}")));
            }
        }
        Ok(Stratum { norm_sq: mn.norm_sq, beta, raw_beta: mn.point, weyl_index })
    }

    fn in_z_locus(&self, weights: &[QVector], beta: &QVector) -> bool {
        let bb = self.ip().norm_sq(beta);
        weights.iter().all(|w| self.ip().dot(w, beta) == bb)
    }

    fn in_y_locus(&self, weights: &[QVector], beta: &QVector) -> bool {
        let bb = self.ip().norm_sq(beta);
        let mut touches = false;
        for w in weights {
            let d = self.ip().dot(w, beta);
            if d < bb {
                return false;
            }
            touches |= d == bb;
        }
        touches
    }

    fn in_z_ss_locus(&self, weights: &[QVector], beta: &QVector) -> Result<bool> {
        if !self.in_z_locus(weights, beta) {
            return Ok(false);
        }
        Ok(hull::min_norm_point(weights, self.ip())?.point == *beta)
    }

    fn in_y_ss_locus(&self, weights: &[QVector], beta: &QVector) -> Result<bool> {
        if !self.in_y_locus(weights, beta) {
            return Ok(false);
        }
        let lambda = Cocharacter::new(beta.clone());
        let min = weights.iter().map(|w| self.ip().dot(w, lambda.vector())).min().expect("nonempty");
        let limit: Vec<QVector> =
            weights.iter().filter(|w| self.ip().dot(w, lambda.vector()) == min).cloned().collect();
        self.in_z_ss_locus(&limit, beta)
    }

    fn check_beta(&self, beta: &QVector) -> Result<()> {
        self.check_vec(beta)?;
        if beta.is_zero() {
            return Err(Error::invalid("beta must be nonzero"));
        }
        Ok(())
    }

    /// Every weight of `x` lies on the hyperplane `<w, beta> = |beta|^2`.
    pub fn membership_z(&self, x: &PointSupport, beta: &QVector) -> Result<bool> {
        self.check_beta(beta)?;
        Ok(self.in_z_locus(&self.support_weights(x), beta))
    }

    /// Every weight of `x` lies in `<w, beta> >= |beta|^2`, at least one on the boundary.
    pub fn membership_y(&self, x: &PointSupport, beta: &QVector) -> Result<bool> {
        self.check_beta(beta)?;
        Ok(self.in_y_locus(&self.support_weights(x), beta))
    }

    /// `Z_beta` membership with `beta` the closest point of the weights of `x`.
    pub fn membership_z_ss(&self, x: &PointSupport, beta: &QVector) -> Result<bool> {
        self.check_beta(beta)?;
        self.in_z_ss_locus(&self.support_weights(x), beta)
    }

    /// `Y_beta` membership whose `lambda_beta`-limit is in `Z_beta^ss`.
    pub fn membership_y_ss(&self, x: &PointSupport, beta: &QVector) -> Result<bool> {
        self.check_beta(beta)?;
        self.in_y_ss_locus(&self.support_weights(x), beta)
    }

    /// Membership in the stratum `S_beta`: semistable for `beta = 0`,
    /// otherwise some Weyl translate of `x` lies in `Y_beta^ss`.
    pub fn membership_s(&self, x: &PointSupport, beta: &QVector) -> Result<bool> {
        self.check_vec(beta)?;
        if beta.is_zero() {
            return Ok(self.semistability(x)? != Semistability::Unstable);
        }
        let weights = self.support_weights(x);
        for g in self.group_elements() {
            let translated: Vec<QVector> = weights.iter().map(|w| g.apply(w)).collect();
            if self.in_y_ss_locus(&translated, beta)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Indices of `x` on which `<w_i, lambda>` is minimal: the support of
    /// `lim_{t -> 0} lambda(t) x`.
    pub fn limit_support(&self, x: &PointSupport, lambda: &Cocharacter) -> Result<PointSupport> {
        self.check_vec(lambda.vector())?;
        nonzero(lambda)?;
        let pairs: Vec<(usize, Rational)> = x.indices().iter().map(|&i| (i, self.pairing(i, lambda))).collect();
        let min = pairs.iter().map(|(_, p)| p).min().ok_or(Error::Empty("support"))?.clone();
        Ok(PointSupport::from_indices(pairs.into_iter().filter(|(_, p)| *p == min).map(|(i, _)| i)))
    }

    /// Indices in the closure `Ybar_beta`: weights with `<w, beta> >= |beta|^2`.
    pub fn ybar_support(&self, beta: &QVector) -> Result<PointSupport> {
        self.check_beta(beta)?;
        let bb = self.ip().norm_sq(beta);
        let idx: Vec<usize> = (0..self.len()).filter(|&i| self.ip().dot(self.weight(i), beta) >= bb).collect();
        if idx.is_empty() {
            return Err(Error::invalid(format!("Ybar_{beta} contains no weights")));
        }
        Ok(PointSupport::from_indices(idx))
    }

    /// Shift every weight by `-chi`. Weyl and grading data are carried over unchanged.
    pub fn twist(&self, chi: &QVector) -> Result<WeightSystem> {
        self.check_vec(chi)?;
        let weights = self.weights().iter().map(|w| w - chi).collect();
        let mut out = WeightSystem::new(weights, self.ip().clone())?;
        if let (Some(g), Some(c)) = (self.weyl(), self.chamber()) {
            out = out.with_weyl(g.to_vec(), c.to_vec())?;
        }
        if let Some(a) = self.adjoint_weights() {
            out = out.with_adjoint_weights(a.to_vec());
        }
        Ok(out)
    }

    /// `lambda`-pairings of the weights after twisting by `(1 + e) chi`, one per weight.
    pub fn twist_eps(&self, chi: &QVector, lambda: &Cocharacter) -> Result<Vec<EpsWeight>> {
        self.check_vec(chi)?;
        self.check_vec(lambda.vector())?;
        let shift = self.ip().dot(chi, lambda.vector());
        Ok((0..self.len()).map(|i| EpsWeight::new(self.pairing(i, lambda) - &shift, -shift.clone())).collect())
    }

    /// Every adjoint weight of the grading cocharacter on `Lie U` is strictly positive.
    pub fn grades_unipotent(&self) -> Result<bool> {
        self.adjoint_weights()
            .map(grades_unipotent)
            .ok_or_else(|| Error::invalid("weight system has no adjoint weights"))
    }
}

pub fn grades_unipotent(adjoint_weights: &[Rational]) -> bool {
    adjoint_weights.iter().all(Signed::is_positive)
}

/// The minimal pairing is strictly negative and every other value strictly positive.
pub fn is_adapted(pairings: &[EpsWeight]) -> Result<bool> {
    let min = pairings.iter().min().ok_or(Error::Empty("pairings"))?;
    Ok(min.is_negative() && pairings.iter().filter(|p| *p != min).all(EpsWeight::is_positive))
}

/// Block structure of the parabolic of a cocharacter acting on `V` with the
/// given weights: equal weights form diagonal blocks, ordered by decreasing weight.
pub fn parabolic_blocks(weights: &[Rational]) -> Result<ParabolicBlocks> {
    if weights.is_empty() {
        return Err(Error::Empty("weights"));
    }
    let mut sorted = weights.to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    let mut blocks: Vec<u64> = Vec::new();
    for (i, w) in sorted.iter().enumerate() {
        if i > 0 && *w == sorted[i - 1] {
            *blocks.last_mut().expect("nonempty") += 1;
        } else {
            blocks.push(1);
        }
    }
    let mut dim_unipotent = 0;
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            dim_unipotent += blocks[i] * blocks[j];
        }
    }
    let dim_levi_gl: u64 = blocks.iter().map(|b| b * b).sum();
    Ok(ParabolicBlocks {
        dim_unipotent,
        dim_levi_gl,
        dim_parabolic_gl: dim_levi_gl + dim_unipotent,
        dim_levi_sl: dim_levi_gl - 1,
        dim_parabolic_sl: dim_levi_gl + dim_unipotent - 1,
        blocks,
    })
}

/// Membership in the totally stable locus: `x` is off `U Z_min` and its
/// `lambda`-limit is stable in `Z_min`. Both predicates come from the caller,
/// since `U`-sweeps are not determined by weights.
pub fn totally_stable(
    x: &PointSupport,
    lambda: &Cocharacter,
    ws: &WeightSystem,
    in_uzmin: impl FnOnce(&PointSupport) -> bool,
    zmin_stable: impl FnOnce(&PointSupport) -> bool,
) -> Result<bool> {
    nonzero(lambda)?;
    let global_min = (0..ws.len()).map(|i| ws.pairing(i, lambda)).min().expect("nonempty");
    let local_min = x.indices().iter().map(|&i| ws.pairing(i, lambda)).min().ok_or(Error::Empty("support"))?;
    if local_min != global_min {
        return Err(Error::NotInMinimalBasin(format!(
            "minimal pairing {} on the support, {} globally",
            crate::rational::fmt_rational(&local_min),
            crate::rational::fmt_rational(&global_min)
        )));
    }
    if in_uzmin(x) {
        return Ok(false);
    }
    let limit = ws.limit_support(x, lambda)?;
    Ok(zmin_stable(&limit))
}
