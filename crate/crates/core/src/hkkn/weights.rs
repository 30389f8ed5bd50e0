use std::collections::BTreeSet;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::rational::{int, InnerProduct, QMatrix, QVector, Rational};

/// A torus-linearised action presented by its weights in `t*`, together with
/// the invariant inner product and optional Weyl group, chamber and adjoint
/// weights of a grading cocharacter on `Lie U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    weights: Vec<QVector>,
    ip: InnerProduct,
    weyl: Option<Vec<QMatrix>>,
    chamber: Option<Vec<QVector>>,
    adjoint_weights: Option<Vec<Rational>>,
}

impl WeightSystem {
    pub fn new(weights: Vec<QVector>, ip: InnerProduct) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Empty("weights"));
        }
        let k = ip.dim();
        if let Some(w) = weights.iter().find(|w| w.dim() != k) {
            return Err(Error::DimensionMismatch { expected: k, found: w.dim() });
        }
        Ok(WeightSystem { weights, ip, weyl: None, chamber: None, adjoint_weights: None })
    }

    /// Attaches a finite Weyl group and the chamber `{v : <v, c> >= 0 for all c}`.
    ///
    /// The group must contain the identity, be closed under products and
    /// preserve the inner product exactly.
    pub fn with_weyl(mut self, group: Vec<QMatrix>, chamber: Vec<QVector>) -> Result<Self> {
        let k = self.dim();
        if let Some(g) = group.iter().find(|g| g.dim() != k) {
            return Err(Error::DimensionMismatch { expected: k, found: g.dim() });
        }
        if let Some(c) = chamber.iter().find(|c| c.dim() != k) {
            return Err(Error::DimensionMismatch { expected: k, found: c.dim() });
        }
        if chamber.is_empty() {
            return Err(Error::Weyl("chamber must be nonempty when a Weyl group is given".into()));
        }
        if !group.contains(&QMatrix::identity(k)) {
            return Err(Error::Weyl("group does not contain the identity".into()));
        }
        for (i, g) in group.iter().enumerate() {
            if !self.ip.preserved_by(g) {
                return Err(Error::Weyl(format!("element {i} does not preserve the inner product")));
            }
            for h in &group {
                if !group.contains(&g.mul(h)) {
                    return Err(Error::Weyl(format!("group is not closed under products (element {i})")));
                }
            }
        }
        self.weyl = Some(group);
        self.chamber = Some(chamber);
        Ok(self)
    }

    pub fn with_adjoint_weights(mut self, weights: Vec<Rational>) -> Self {
        self.adjoint_weights = Some(weights);
        self
    }

    /// `SL(2)` on `Sym^n(P^1)`: weights `n - 2j` on the coefficient of
    /// `x^(n-j) y^j`, Weyl group `{1, -1}`, chamber `t >= 0`, adjoint weight 2.
    pub fn sym_power(n: usize) -> Self {
        let n_i = n as i64;
        let weights = (0..=n_i).map(|j| QVector::from_ints(&[n_i - 2 * j])).collect();
        let group = vec![QMatrix::identity(1), QMatrix::from_ints(&[&[-1]]).expect("1x1")];
        WeightSystem::new(weights, InnerProduct::identity(1))
            .and_then(|ws| ws.with_weyl(group, vec![QVector::from_ints(&[1])]))
            .expect("Sym^n weight system is well-formed")
            .with_adjoint_weights(vec![int(2)])
    }

    pub fn dim(&self) -> usize {
        self.ip.dim()
    }

    pub fn weights(&self) -> &[QVector] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &QVector {
        &self.weights[i]
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn ip(&self) -> &InnerProduct {
        &self.ip
    }

    pub fn weyl(&self) -> Option<&[QMatrix]> {
        self.weyl.as_deref()
    }

    pub fn chamber(&self) -> Option<&[QVector]> {
        self.chamber.as_deref()
    }

    pub fn adjoint_weights(&self) -> Option<&[Rational]> {
        self.adjoint_weights.as_deref()
    }

    pub fn in_chamber(&self, v: &QVector) -> bool {
        match &self.chamber {
            Some(ch) => ch.iter().all(|c| !self.ip.dot(v, c).is_negative()),
            None => true,
        }
    }

    /// Weyl group elements, or just the identity when none was given.
    pub fn group_elements(&self) -> Vec<QMatrix> {
        self.weyl.clone().unwrap_or_else(|| vec![QMatrix::identity(self.dim())])
    }

    /// Image of a support under a Weyl element, when that element permutes the weights.
    pub fn translate_support(&self, x: &PointSupport, g: &QMatrix) -> Option<PointSupport> {
        let mut out = BTreeSet::new();
        for &i in x.indices() {
            let image = g.apply(&self.weights[i]);
            out.insert(self.weights.iter().position(|w| *w == image)?);
        }
        Some(PointSupport(out))
    }

    pub fn support_weights(&self, x: &PointSupport) -> Vec<QVector> {
        x.indices().iter().map(|&i| self.weights[i].clone()).collect()
    }
}

/// Indices of the nonzero coordinates of a point of projective space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSupport(BTreeSet<usize>);

impl PointSupport {
    pub fn new(indices: impl IntoIterator<Item = usize>, ws: &WeightSystem) -> Result<Self> {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        if set.is_empty() {
            return Err(Error::Empty("support"));
        }
        if let Some(&bad) = set.iter().find(|&&i| i >= ws.len()) {
            return Err(Error::invalid(format!("support index {bad} out of range (weights 0..{})", ws.len())));
        }
        Ok(PointSupport(set))
    }

    /// Support without range validation; callers guarantee the indices are valid.
    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        PointSupport(indices.into_iter().collect())
    }

    /// Parses `"0,1,3"`.
    pub fn parse(s: &str, ws: &WeightSystem) -> Result<Self> {
        let idx = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad support index {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(idx, ws)
    }

    pub fn indices(&self) -> &BTreeSet<usize> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Element of `t`, paired with weights through the inner product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cocharacter(pub QVector);

impl Cocharacter {
    pub fn new(v: QVector) -> Self {
        Cocharacter(v)
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Cocharacter(QVector::from_ints(v))
    }

    pub fn vector(&self) -> &QVector {
        &self.0
    }
}
