//! Combinatorial model of the partial desingularisation that makes unipotent
//! stabiliser dimensions constant on the basin of the minimal weight space.
//!
//! A [`BlowupState`] is a finite cell decomposition: each cell records the
//! `lambda`-weights occurring on it, the dimension of its unipotent
//! stabiliser and the cell its `lambda`-limit lands in. A step blows up the
//! closure of the locus of maximal stabiliser dimension and updates the
//! minimal weight space; [`run`] iterates until the dimension is constant.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hkkn::EpsWeight;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumCell {
    pub id: String,
    #[serde(default)]
    pub label: String,
    pub lambda_weights: Vec<EpsWeight>,
    pub ustab_dim: u32,
    pub flows_to: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub closed_in: Vec<String>,
    #[serde(default)]
    pub exceptional: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub synthetic: bool,
}

impl StratumCell {
    pub fn new(id: &str, weights: Vec<EpsWeight>, ustab_dim: u32, flows_to: &str) -> Self {
        StratumCell {
            id: id.to_string(),
            label: String::new(),
            lambda_weights: weights,
            ustab_dim,
            flows_to: flows_to.to_string(),
            closed_in: Vec::new(),
            exceptional: false,
            synthetic: false,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    fn min_weight(&self) -> &EpsWeight {
        self.lambda_weights.iter().min().expect("validated nonempty")
    }

    fn max_weight(&self) -> &EpsWeight {
        self.lambda_weights.iter().max().expect("validated nonempty")
    }
}

/// The cell-graph file: `{"cells": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellGraph {
    pub cells: Vec<StratumCell>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlowupCase {
    /// `Z_min` is not contained in the centre; its proper transform stays minimal.
    #[serde(rename = "case-1")]
    ProperTransform,
    /// `Z_min` lies in the centre; a new minimal weight space is cut out of the exceptional divisor.
    #[serde(rename = "case-2")]
    NewMinimum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    pub case: BlowupCase,
    pub centre: Vec<String>,
    pub new_exceptional: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_min: Option<EpsWeight>,
    pub zmin_after: Vec<String>,
    pub d_max_before: u32,
    pub d_max_after: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupState {
    pub cells: Vec<StratumCell>,
    pub zmin_ids: Vec<String>,
    pub d_min: u32,
    pub d_max: u32,
    pub step_count: usize,
    pub trace: Vec<StepRecord>,
    /// Every live cell has the same stabiliser dimension as its limit.
    pub p_preserves: bool,
}

fn index_of(cells: &[StratumCell]) -> BTreeMap<&str, usize> {
    cells.iter().enumerate().map(|(i, c)| (c.id.as_str(), i)).collect()
}

pub fn init_state(cells: Vec<StratumCell>) -> Result<BlowupState> {
    if cells.is_empty() {
        return Err(Error::Empty("cells"));
    }
    let idx = index_of(&cells);
    if idx.len() != cells.len() {
        let mut seen = BTreeSet::new();
        let dup = cells.iter().find(|c| !seen.insert(c.id.as_str())).expect("duplicate exists");
        return Err(Error::InconsistentFlow { cell: dup.id.clone(), reason: "duplicate id".into() });
    }
    for c in &cells {
        let bad = |reason: String| Error::InconsistentFlow { cell: c.id.clone(), reason };
        if c.lambda_weights.is_empty() {
            return Err(bad("no lambda-weights".into()));
        }
        let Some(&t) = idx.get(c.flows_to.as_str()) else {
            return Err(bad(format!("flows_to {:?} does not exist", c.flows_to)));
        };
        let target = &cells[t];
        if target.flows_to != target.id {
            return Err(bad(format!("limit cell {:?} is not fixed by the flow", target.id)));
        }
        if target.lambda_weights.is_empty() || target.min_weight() > c.min_weight() {
            return Err(bad(format!("limit cell {:?} has larger minimal weight", target.id)));
        }
        if let Some(missing) = c.closed_in.iter().find(|id| !idx.contains_key(id.as_str())) {
            return Err(bad(format!("closed_in refers to unknown cell {missing:?}")));
        }
    }
    let live_fixed: Vec<&StratumCell> = cells.iter().filter(|c| !c.exceptional && c.flows_to == c.id).collect();
    let global_min = live_fixed
        .iter()
        .map(|c| c.min_weight())
        .min()
        .ok_or_else(|| Error::InconsistentFlow { cell: cells[0].id.clone(), reason: "no live fixed cell".into() })?
        .clone();
    let zmin_ids = live_fixed.iter().filter(|c| *c.min_weight() == global_min).map(|c| c.id.clone()).collect();
    let mut state =
        BlowupState { cells, zmin_ids, d_min: 0, d_max: 0, step_count: 0, trace: Vec::new(), p_preserves: false };
    state.refresh();
    Ok(state)
}

impl BlowupState {
    fn cell(&self, id: &str) -> &StratumCell {
        self.cells.iter().find(|c| c.id == id).expect("id validated")
    }

    /// Live cells whose limit lies in the current minimal weight space.
    pub fn basin(&self) -> Vec<&StratumCell> {
        self.cells
            .iter()
            .filter(|c| !c.exceptional && self.zmin_ids.contains(&c.flows_to))
            .collect()
    }

    pub fn basin_ids(&self) -> Vec<String> {
        self.basin().into_iter().map(|c| c.id.clone()).collect()
    }

    fn refresh(&mut self) {
        let dims: Vec<u32> = self.basin().iter().map(|c| c.ustab_dim).collect();
        self.d_max = dims.iter().copied().max().unwrap_or(0);
        self.d_min = dims.iter().copied().min().unwrap_or(0);
        self.p_preserves = self
            .cells
            .iter()
            .filter(|c| !c.exceptional)
            .all(|c| c.ustab_dim == self.cell(&c.flows_to).ustab_dim);
    }

    /// Constant stabiliser dimension on the basin of `Z_min`.
    pub fn satisfies_star_d(&self) -> bool {
        self.d_max == self.d_min
    }
}

pub fn step(state: &BlowupState) -> Result<BlowupState> {
    if state.satisfies_star_d() {
        return Err(Error::AlreadyConstant(state.d_max));
    }
    let d_max = state.d_max;
    let basin = state.basin();
    let c_dmax: BTreeSet<&str> = basin.iter().filter(|c| c.ustab_dim == d_max).map(|c| c.id.as_str()).collect();
    let centre: BTreeSet<String> = basin
        .iter()
        .filter(|c| c_dmax.contains(c.id.as_str()) || c.closed_in.iter().any(|o| c_dmax.contains(o.as_str())))
        .map(|c| c.id.clone())
        .collect();

    let mut next = state.clone();
    let step_no = state.step_count + 1;
    let record;

    if !state.zmin_ids.iter().all(|z| centre.contains(z)) {
        let removed: BTreeSet<String> = basin
            .iter()
            .filter(|c| centre.contains(&c.id) || state.cell(&c.flows_to).ustab_dim >= d_max)
            .map(|c| c.id.clone())
            .collect();
        for c in next.cells.iter_mut() {
            if removed.contains(&c.id) {
                c.exceptional = true;
            }
        }
        next.zmin_ids.retain(|z| !removed.contains(z));
        record = StepRecord {
            step: step_no,
            case: BlowupCase::ProperTransform,
            centre: centre.iter().cloned().collect(),
            new_exceptional: removed.into_iter().collect(),
            r_min: None,
            zmin_after: next.zmin_ids.clone(),
            d_max_before: d_max,
            d_max_after: 0,
        };
    } else {
        // W^0_r: basin cells grouped by their highest lambda-weight r.
        let mut groups: BTreeMap<&EpsWeight, Vec<&StratumCell>> = BTreeMap::new();
        for c in &basin {
            groups.entry(c.max_weight()).or_default().push(c);
        }
        let (r_min, survivors) = groups
            .iter()
            .find_map(|(r, cells)| {
                let outside: Vec<&StratumCell> = cells.iter().copied().filter(|c| !centre.contains(&c.id)).collect();
                (!outside.is_empty()).then(|| ((*r).clone(), outside))
            })
            .ok_or_else(|| Error::Internal("every W^0_r lies in the centre although d_max > d_min".into()))?;
        let old_min: Rational = state
            .zmin_ids
            .iter()
            .map(|z| state.cell(z).min_weight().main.clone())
            .min()
            .expect("zmin nonempty");
        let survivor_ids: BTreeSet<String> = survivors.iter().map(|c| c.id.clone()).collect();
        let new_id = format!("zmin@{step_no}");
        let new_cell = StratumCell {
            id: new_id.clone(),
            label: format!("p(W0_r \\ C) with r = {r_min}"),
            lambda_weights: vec![EpsWeight::new(old_min.clone(), r_min.main.clone())],
            ustab_dim: survivors.iter().map(|c| c.ustab_dim).max().expect("nonempty"),
            flows_to: new_id.clone(),
            closed_in: Vec::new(),
            exceptional: false,
            synthetic: true,
        };
        for c in next.cells.iter_mut() {
            if centre.contains(&c.id) {
                c.exceptional = true;
            }
            if survivor_ids.contains(&c.id) {
                c.flows_to = new_id.clone();
            }
        }
        next.cells.push(new_cell);
        next.zmin_ids = vec![new_id];
        record = StepRecord {
            step: step_no,
            case: BlowupCase::NewMinimum,
            centre: centre.iter().cloned().collect(),
            new_exceptional: centre.iter().cloned().collect(),
            r_min: Some(r_min),
            zmin_after: next.zmin_ids.clone(),
            d_max_before: d_max,
            d_max_after: 0,
        };
    }

    next.refresh();
    if next.basin().is_empty() || next.d_max >= d_max {
        return Err(Error::NoDecrease { before: d_max, after: next.d_max });
    }
    next.step_count = step_no;
    let mut record = record;
    record.d_max_after = next.d_max;
    next.trace.push(record);
    Ok(next)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunOutcome {
    pub state: BlowupState,
    /// Live basin after the last step: the model of the locus that admits a quotient.
    pub survivors: Vec<String>,
}

pub fn run(state: BlowupState) -> Result<RunOutcome> {
    let budget = (state.d_max - state.d_min) as usize;
    let mut current = state;
    let mut steps = 0;
    while !current.satisfies_star_d() {
        if steps == budget {
            return Err(Error::Internal(format!("no termination within {budget} steps")));
        }
        current = step(&current)?;
        steps += 1;
    }
    let survivors = current.basin_ids();
    Ok(RunOutcome { state: current, survivors })
}

/// Weights on the blow-up of a weighted projective space along the
/// coordinate subspace of `centre`: each weight spreads into a cluster
/// `w_i + e * w_j` over the off-centre weights `w_j`, sorted.
pub fn cluster_weights(weights: &[Rational], centre: &[usize]) -> Result<Vec<EpsWeight>> {
    let centre: BTreeSet<usize> = centre.iter().copied().collect();
    if let Some(&bad) = centre.iter().find(|&&i| i >= weights.len()) {
        return Err(Error::invalid(format!("centre index {bad} out of range")));
    }
    if centre.len() == weights.len() {
        return Err(Error::invalid("centre must be a proper subset of the coordinates"));
    }
    let off: Vec<&Rational> = (0..weights.len()).filter(|i| !centre.contains(i)).map(|i| &weights[i]).collect();
    let mut out: Vec<EpsWeight> = weights
        .iter()
        .flat_map(|w| off.iter().map(move |o| EpsWeight::new(w.clone(), (*o).clone())))
        .collect();
    out.sort();
    Ok(out)
}
