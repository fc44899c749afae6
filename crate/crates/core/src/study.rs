//! One simulation cell end to end: simulate, estimate with both methods,
//! evaluate all indices against the true profile and summarize.
//!
//! A replicate whose estimates cannot be formed (an empty sample) is excluded
//! from both estimators and recorded; the cell carries on.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::evaluation::{summarize, CellErrors, IndexSummary};
use crate::indices::{IndexKind, Simplex};
use crate::model::{eb_proportions, mle_proportions, Method};
use crate::simulation::{simulate_replicate, Profile, Scenario, SimulatedSample};
use crate::solver::{estimate_eta, EtaSolution, EtaSolverOptions, EtaStatus};
use crate::{Error, Result};

/// True value of each index for a profile, in [`IndexKind::ALL`] order.
pub fn true_values(profile: &Profile) -> [f64; 4] {
    [profile.true_shannon, profile.true_simpson, 1.0, 1.0]
}

/// Index values of one replicate.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicateValues {
    pub replicate_index: usize,
    pub n: u64,
    pub eta: EtaSolution,
    /// `[ML, EB]`, each in [`IndexKind::ALL`] order.
    pub values: [[f64; 4]; 2],
}

fn method_slot(method: Method) -> usize {
    match method {
        Method::Ml => 0,
        Method::Eb => 1,
    }
}

fn index_values(estimate: Simplex, reference: &Simplex) -> Result<[f64; 4]> {
    let mut out = [0.0; 4];
    for (slot, index) in IndexKind::ALL.into_iter().enumerate() {
        out[slot] = index.evaluate(&estimate, reference)?.value;
    }
    Ok(out)
}

pub fn evaluate_replicate(
    sample: &SimulatedSample,
    profile: &Profile,
    opts: &EtaSolverOptions,
) -> Result<ReplicateValues> {
    let x = &sample.counts;
    let ml = mle_proportions(x)?;
    let eta = estimate_eta(x, opts)?;
    let eb = eb_proportions(x, eta.eta)?;
    Ok(ReplicateValues {
        replicate_index: sample.replicate_index,
        n: x.n(),
        eta,
        values: [
            index_values(Simplex::try_from(ml)?, &profile.pi_star)?,
            index_values(Simplex::try_from(eb)?, &profile.pi_star)?,
        ],
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StatusCounts {
    pub converged: usize,
    pub floor_clamped: usize,
    pub ceiling_clamped: usize,
    pub flat_likelihood: usize,
    pub max_iterations: usize,
}

impl StatusCounts {
    pub fn record(&mut self, status: EtaStatus) {
        match status {
            EtaStatus::Converged => self.converged += 1,
            EtaStatus::FloorClamped => self.floor_clamped += 1,
            EtaStatus::CeilingClamped => self.ceiling_clamped += 1,
            EtaStatus::FlatLikelihood => self.flat_likelihood += 1,
            EtaStatus::MaxIterations => self.max_iterations += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.converged
            + self.floor_clamped
            + self.ceiling_clamped
            + self.flat_likelihood
            + self.max_iterations
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Exclusion {
    pub replicate_index: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioOutcome {
    pub scenario_id: String,
    pub setting: String,
    pub scenario: Scenario,
    /// Two per index, EB then ML, in [`IndexKind::ALL`] order.
    pub summaries: Vec<IndexSummary>,
    pub cell_errors: Vec<CellErrors>,
    pub solver_status: StatusCounts,
    pub excluded: Vec<Exclusion>,
    pub replicates: Vec<ReplicateValues>,
}

/// Replicate-level work for a cell, without summarizing. Replicates are
/// processed in index order and each depends only on `(seed, index)`.
pub fn collect_replicates(
    scenario: &Scenario,
    profile: &Profile,
    opts: &EtaSolverOptions,
) -> Result<(Vec<ReplicateValues>, Vec<Exclusion>)> {
    scenario.validate()?;
    if profile.k != scenario.k || profile.kind != scenario.profile_kind {
        return Err(Error::ProfileMismatch);
    }
    let mut kept = Vec::with_capacity(scenario.m);
    let mut excluded = Vec::new();
    for i in 0..scenario.m {
        let sample = simulate_replicate(scenario, profile, i)?;
        match evaluate_replicate(&sample, profile, opts) {
            Ok(v) => kept.push(v),
            Err(Error::EmptySample) => excluded.push(Exclusion {
                replicate_index: i,
                reason: format!("{}", Error::EmptySample),
            }),
            Err(e) => return Err(e.at_replicate(i)),
        }
    }
    Ok((kept, excluded))
}

/// Summarizes already collected replicate values of one cell.
pub fn summarize_cell(
    scenario_id: &str,
    setting: &str,
    scenario: &Scenario,
    profile: &Profile,
    replicates: Vec<ReplicateValues>,
    excluded: Vec<Exclusion>,
) -> Result<ScenarioOutcome> {
    let truth = true_values(profile);
    let mut solver_status = StatusCounts::default();
    for r in &replicates {
        solver_status.record(r.eta.status);
    }

    let mut summaries = Vec::with_capacity(8);
    let mut cell_errors = Vec::with_capacity(4);
    for (slot, index) in IndexKind::ALL.into_iter().enumerate() {
        let mut by_method = [None, None];
        for method in [Method::Eb, Method::Ml] {
            let values: Vec<f64> = replicates
                .iter()
                .map(|r| r.values[method_slot(method)][slot])
                .collect();
            let summary = summarize(&values, truth[slot])?;
            by_method[method_slot(method)] = Some(summary);
            summaries.push(IndexSummary {
                scenario_id: scenario_id.into(),
                index,
                estimator: method,
                true_value: truth[slot],
                summary,
            });
        }
        let [Some(ml), Some(eb)] = by_method else {
            unreachable!("both estimators summarized")
        };
        cell_errors.push(CellErrors {
            setting: setting.into(),
            profile: profile.kind,
            index,
            m: ml.m,
            ml_sse: ml.squared_error_sum(),
            eb_sse: eb.squared_error_sum(),
        });
    }

    Ok(ScenarioOutcome {
        scenario_id: scenario_id.into(),
        setting: setting.into(),
        scenario: scenario.clone(),
        summaries,
        cell_errors,
        solver_status,
        excluded,
        replicates,
    })
}

pub fn evaluate_scenario(
    scenario_id: &str,
    setting: &str,
    scenario: &Scenario,
    profile: &Profile,
    opts: &EtaSolverOptions,
) -> Result<ScenarioOutcome> {
    let (kept, excluded) = collect_replicates(scenario, profile, opts)?;
    summarize_cell(scenario_id, setting, scenario, profile, kept, excluded)
}
