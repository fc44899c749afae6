//! Sampling summaries of index values and RMSE-based relative efficiency.
//!
//! RMSE uses the `1/m` convention, so `rmse² = bias² + sd²·(m−1)/m` with `sd`
//! the usual `m−1` sample standard deviation. Efficiency ratios pool raw sums
//! of squared errors across cells; with equal `m` in every cell this is the
//! same ratio whichever normalization is used.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::indices::IndexKind;
use crate::math::sqrt;
use crate::model::Method;
use crate::simulation::ProfileKind;
use crate::{Error, Result};

/// Five-number summary, linear interpolation between order statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Quantiles {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

/// Quantile of sorted data (Hyndman-Fan type 7).
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h as usize;
    if lo + 1 >= sorted.len() {
        return sorted[sorted.len() - 1];
    }
    sorted[lo] + (h - lo as f64) * (sorted[lo + 1] - sorted[lo])
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Summary {
    pub m: usize,
    pub mean: f64,
    /// Sample standard deviation; absent when `m = 1`.
    pub sd: Option<f64>,
    pub bias: f64,
    pub rmse: f64,
    pub quantiles: Quantiles,
}

impl Summary {
    /// `Σ (v_i − v*)²`, the quantity pooled by the efficiency measures.
    pub fn squared_error_sum(&self) -> f64 {
        self.rmse * self.rmse * self.m as f64
    }
}

pub fn summarize(values: &[f64], true_value: f64) -> Result<Summary> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !true_value.is_finite() {
        return Err(Error::NonFinite { term: "true value" });
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            term: "index value",
        });
    }
    let m = values.len();
    let mf = m as f64;
    // shifted by the first value so that constant input has an exact mean
    let shift = values[0];
    let mean = shift + values.iter().map(|v| v - shift).sum::<f64>() / mf;
    let sd = (m > 1).then(|| {
        let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
        sqrt(ss / (mf - 1.0))
    });
    let sse: f64 = values
        .iter()
        .map(|v| (v - true_value) * (v - true_value))
        .sum();

    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let quantiles = Quantiles {
        min: sorted[0],
        q1: quantile_sorted(&sorted, 0.25),
        median: quantile_sorted(&sorted, 0.5),
        q3: quantile_sorted(&sorted, 0.75),
        max: sorted[m - 1],
    };

    Ok(Summary {
        m,
        mean,
        sd,
        bias: mean - true_value,
        rmse: sqrt(sse / mf),
        quantiles,
    })
}

/// Summary of one index under one estimator in one scenario.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IndexSummary {
    pub scenario_id: String,
    pub index: IndexKind,
    pub estimator: Method,
    pub true_value: f64,
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub summary: Summary,
}

/// `RMSE_ML / RMSE_EB`; above 1 means EB is more efficient.
pub fn relative_efficiency(rmse_ml: f64, rmse_eb: f64) -> Result<f64> {
    for (name, v) in [("rmse_ml", rmse_ml), ("rmse_eb", rmse_eb)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::param(name, v));
        }
    }
    Ok(rmse_ml / rmse_eb)
}

/// Squared-error sums of both estimators for one (setting, profile, index)
/// cell of a simulation grid.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CellErrors {
    /// Label of the `(α, β, γ)` setting.
    pub setting: String,
    pub profile: ProfileKind,
    pub index: IndexKind,
    pub m: usize,
    pub ml_sse: f64,
    pub eb_sse: f64,
}

impl CellErrors {
    pub fn efficiency(&self) -> Result<f64> {
        relative_efficiency(sqrt(self.ml_sse), sqrt(self.eb_sse))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum EfficiencyScope {
    Specific,
    Partial,
    Total,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EfficiencyCell {
    pub index: IndexKind,
    pub scope: EfficiencyScope,
    /// Present for specific and partial cells.
    pub profile: Option<ProfileKind>,
    /// Present for specific cells.
    pub setting: Option<String>,
    pub value: f64,
}

fn pooled(
    settings: &[String],
    profiles: &[ProfileKind],
    index: IndexKind,
    cells: &[CellErrors],
) -> Result<(f64, f64)> {
    let mut missing = Vec::new();
    let (mut ml, mut eb) = (0.0, 0.0);
    for &profile in profiles {
        for setting in settings {
            match cells
                .iter()
                .find(|c| c.index == index && c.profile == profile && &c.setting == setting)
            {
                Some(c) => {
                    ml += c.ml_sse;
                    eb += c.eb_sse;
                }
                None => missing.push(format!("{}/{}/{}", profile, setting, index.symbol())),
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingCells(missing));
    }
    if settings.is_empty() || profiles.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok((ml, eb))
}

/// Efficiency pooled over every setting of the grid for one profile.
pub fn partial_efficiency(
    settings: &[String],
    profile: ProfileKind,
    index: IndexKind,
    cells: &[CellErrors],
) -> Result<f64> {
    let (ml, eb) = pooled(settings, &[profile], index, cells)?;
    relative_efficiency(sqrt(ml), sqrt(eb))
}

/// Efficiency pooled over every profile and setting for one index.
pub fn total_efficiency(
    settings: &[String],
    profiles: &[ProfileKind],
    index: IndexKind,
    cells: &[CellErrors],
) -> Result<f64> {
    let (ml, eb) = pooled(settings, profiles, index, cells)?;
    relative_efficiency(sqrt(ml), sqrt(eb))
}

/// Specific, partial and total efficiencies for every index, ordered index by
/// index: total first, then per profile the specific cells followed by the
/// partial one.
pub fn efficiency_table(
    settings: &[String],
    profiles: &[ProfileKind],
    cells: &[CellErrors],
) -> Result<Vec<EfficiencyCell>> {
    let mut out = Vec::new();
    for index in IndexKind::ALL {
        out.push(EfficiencyCell {
            index,
            scope: EfficiencyScope::Total,
            profile: None,
            setting: None,
            value: total_efficiency(settings, profiles, index, cells)?,
        });
        for &profile in profiles {
            for setting in settings {
                let cell = cells
                    .iter()
                    .find(|c| c.index == index && c.profile == profile && &c.setting == setting)
                    .ok_or_else(|| {
                        Error::MissingCells(alloc::vec![format!(
                            "{}/{}/{}",
                            profile,
                            setting,
                            index.symbol()
                        )])
                    })?;
                out.push(EfficiencyCell {
                    index,
                    scope: EfficiencyScope::Specific,
                    profile: Some(profile),
                    setting: Some(setting.clone()),
                    value: cell.efficiency()?,
                });
            }
            out.push(EfficiencyCell {
                index,
                scope: EfficiencyScope::Partial,
                profile: Some(profile),
                setting: None,
                value: partial_efficiency(settings, profile, index, cells)?,
            });
        }
    }
    Ok(out)
}
