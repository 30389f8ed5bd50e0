//! Discrete sheaf data on `P^1`: split bundles as the computable oracle for
//! Harder-Narasimhan filtrations and Hom dimensions, and abstract records of
//! sheaves with HN length 2, which carry the non-split cases that split
//! bundles cannot realise.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::blowup::{CellGraph, StratumCell};
use crate::error::{Error, Result};
use crate::hkkn::EpsWeight;
use crate::poly::{HNType, HilbertPolynomial};
use crate::rational::int;

/// `O(a_1) + ... + O(a_r)`, degrees kept in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct SplitBundle(Vec<i64>);

impl SplitBundle {
    pub fn new(mut degrees: Vec<i64>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::Empty("splitting type"));
        }
        degrees.sort_by(|a, b| b.cmp(a));
        Ok(SplitBundle(degrees))
    }

    /// Comma-separated degrees, e.g. `2,0,0`.
    pub fn parse(s: &str) -> Result<Self> {
        let degrees = s
            .split(',')
            .enumerate()
            .map(|(k, d)| {
                d.trim().parse::<i64>().map_err(|e| Error::field(format!("splitting[{k}]"), format!("{d:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(degrees)
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Semistable on `P^1` means all degrees equal; stable additionally means rank 1.
    pub fn is_semistable(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_stable(&self) -> bool {
        self.rank() == 1
    }
}

impl TryFrom<Vec<i64>> for SplitBundle {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<SplitBundle> for Vec<i64> {
    fn from(b: SplitBundle) -> Self {
        b.0
    }
}

impl fmt::Display for SplitBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// `sum (t + a_i + 1)`.
pub fn hilbert_poly(b: &SplitBundle) -> HilbertPolynomial {
    let r = b.rank() as i64;
    HilbertPolynomial::linear(r, b.degrees().iter().sum::<i64>() + r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HnPiece {
    pub slope: i64,
    pub bundle: SplitBundle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HnFiltration {
    pub pieces: Vec<HnPiece>,
    pub tau: HNType,
}

/// Groups equal degrees, highest first; each group is a semistable subquotient.
pub fn hn_filtration(b: &SplitBundle) -> Result<HnFiltration> {
    let mut pieces: Vec<HnPiece> = Vec::new();
    for &d in b.degrees() {
        match pieces.last_mut() {
            Some(p) if p.slope == d => p.bundle.0.push(d),
            _ => pieces.push(HnPiece { slope: d, bundle: SplitBundle(vec![d]) }),
        }
    }
    let tau = HNType::with_total(pieces.iter().map(|p| hilbert_poly(&p.bundle)).collect(), &hilbert_poly(b))?;
    Ok(HnFiltration { pieces, tau })
}

/// `dim Hom(from, to) = sum max(0, a - b + 1)` over `O(b)` in `from`, `O(a)` in `to`.
pub fn hom_dim(from: &SplitBundle, to: &SplitBundle) -> u64 {
    from.degrees()
        .iter()
        .flat_map(|b| to.degrees().iter().map(move |a| (a - b + 1).max(0) as u64))
        .sum()
}

pub fn end_dim(b: &SplitBundle) -> u64 {
    hom_dim(b, b)
}

/// A sheaf with HN type of length 2, `0 -> F_1 -> F -> F_2 -> 0`, recorded
/// by its discrete invariants. `hom_dim` is `dim Hom(F_2, F_1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Length2Sheaf {
    pub tau: HNType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gr1: Option<SplitBundle>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gr2: Option<SplitBundle>,
    pub is_split: bool,
    pub hom_dim: u64,
    pub summands_stable: bool,
}

impl Length2Sheaf {
    pub fn abstract_record(tau: HNType, is_split: bool, hom_dim: u64, summands_stable: bool) -> Result<Self> {
        let s = Length2Sheaf { tau, gr1: None, gr2: None, is_split, hom_dim, summands_stable };
        s.validate()?;
        Ok(s)
    }

    /// The bundle itself, which on `P^1` is always its own associated graded.
    pub fn from_split(b: &SplitBundle) -> Result<Self> {
        let hn = hn_filtration(b)?;
        let [p1, p2] = hn.pieces.as_slice() else {
            return Err(Error::invalid(format!("{b} has HN length {}, not 2", hn.pieces.len())));
        };
        let s = Length2Sheaf {
            hom_dim: hom_dim(&p2.bundle, &p1.bundle),
            summands_stable: p1.bundle.is_stable() && p2.bundle.is_stable(),
            gr1: Some(p1.bundle.clone()),
            gr2: Some(p2.bundle.clone()),
            is_split: true,
            tau: hn.tau,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn is_concrete(&self) -> bool {
        self.gr1.is_some() && self.gr2.is_some()
    }

    fn check_length(&self) -> Result<()> {
        if self.tau.len() != 2 {
            return Err(Error::invalid(format!("HN type {} has length {}, expected 2", self.tau, self.tau.len())));
        }
        Ok(())
    }

    /// Length 2, and concrete graded pieces consistent with `tau` and `hom_dim`.
    pub fn validate(&self) -> Result<()> {
        self.check_length()?;
        for (k, g) in [&self.gr1, &self.gr2].into_iter().enumerate() {
            if let Some(g) = g {
                if !g.is_semistable() {
                    return Err(Error::field(format!("gr{}", k + 1), format!("{g} is not semistable")));
                }
                if hilbert_poly(g) != self.tau.entries()[k] {
                    return Err(Error::field(format!("gr{}", k + 1), format!("Hilbert polynomial differs from tau[{k}]")));
                }
            }
        }
        if let (Some(g1), Some(g2)) = (&self.gr1, &self.gr2) {
            if hom_dim(g2, g1) != self.hom_dim {
                return Err(Error::field("hom_dim", format!("expected {} from the graded pieces", hom_dim(g2, g1))));
            }
            if self.summands_stable != (g1.is_stable() && g2.is_stable()) {
                return Err(Error::field("summands_stable", "inconsistent with the graded pieces"));
            }
        }
        Ok(())
    }
}

/// Non-split with stable HN subquotients.
pub fn is_tau_stable(s: &Length2Sheaf) -> Result<bool> {
    s.check_length()?;
    Ok(!s.is_split && s.summands_stable)
}

/// A length-2 sheaf is indecomposable iff it is not isomorphic to its associated graded.
pub fn is_indecomposable(s: &Length2Sheaf) -> Result<bool> {
    s.check_length()?;
    Ok(!s.is_split)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StabDims {
    pub ustab_dim: u64,
    /// `dim End(F) = dim stab_U + 1`, asserted only for tau-stable sheaves.
    pub end_dim_claim: Option<u64>,
}

pub fn stab_dims(s: &Length2Sheaf) -> Result<StabDims> {
    let claim = is_tau_stable(s)?.then_some(s.hom_dim + 1);
    Ok(StabDims { ustab_dim: s.hom_dim, end_dim_claim: claim })
}

/// One cell per `(hom_dim, split?)` class. Split cells are fixed by the
/// flow; a non-split cell flows to the split cell with the same `hom_dim`,
/// its associated graded, so stabiliser dimension is preserved along flows.
pub fn to_blowup_cells(records: &[Length2Sheaf]) -> Result<CellGraph> {
    let first = records.first().ok_or(Error::Empty("sheaf records"))?;
    for (k, r) in records.iter().enumerate() {
        if r.tau != first.tau {
            return Err(Error::field(format!("records[{k}].tau"), format!("{} differs from {}", r.tau, first.tau)));
        }
        r.validate().map_err(|e| e.at(&format!("records[{k}].")))?;
    }
    let classes: BTreeSet<(u64, bool)> = records.iter().map(|r| (r.hom_dim, r.is_split)).collect();
    let dims: BTreeSet<u64> = classes.iter().map(|(d, _)| *d).collect();
    let dim_u32 = |d: u64| u32::try_from(d).map_err(|_| Error::invalid(format!("hom_dim {d} too large")));
    let mut cells = Vec::new();
    for d in dims {
        let split_id = format!("split-{d}");
        cells.push(
            StratumCell::new(&split_id, vec![EpsWeight::exact(int(0))], dim_u32(d)?, &split_id)
                .with_label(format!("gr F with dim Hom(F2,F1) = {d}")),
        );
        if classes.contains(&(d, false)) {
            cells.push(
                StratumCell::new(
                    &format!("nonsplit-{d}"),
                    vec![EpsWeight::exact(int(0)), EpsWeight::exact(int(1))],
                    dim_u32(d)?,
                    &split_id,
                )
                .with_label(format!("non-split F with dim Hom(F2,F1) = {d}")),
            );
        }
    }
    Ok(CellGraph { cells })
}
