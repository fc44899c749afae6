//! The JSON run report.

use std::path::Path;

use ebcount_core::study::{Exclusion, StatusCounts};
use ebcount_core::{EfficiencyCell, EtaStatus, IndexSummary, Method, Profile, ProfileKind};
use serde::{Deserialize, Serialize};

use crate::config::{PlannedScenario, SimulationConfig};
use crate::error::{CliError, Result};

pub const TOOL: &str = "ebcount";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub metadata: Metadata,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub summaries: Vec<IndexSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scenario_results: Vec<ScenarioResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub efficiency: Vec<EfficiencyCell>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub estimates: Vec<SampleEstimate>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// RFC 3339, UTC. The only field that differs between reruns.
    pub timestamp: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rng_algorithm: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<SimulationConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub profiles: Vec<ProfileRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scenarios: Vec<PlannedScenario>,
    /// Input file and taxa of an `estimate` run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts_file: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub taxa: Vec<String>,
}

impl Metadata {
    pub fn new(command: &str) -> Self {
        Self {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            seed: None,
            rng_algorithm: None,
            config: None,
            profiles: Vec::new(),
            scenarios: Vec::new(),
            counts_file: None,
            taxa: Vec::new(),
        }
    }
}

/// A true profile as used by the run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileRecord {
    pub kind: ProfileKind,
    pub k: usize,
    /// Intercept `a` of `π*_j ∝ a + (j/k)^p`.
    pub calibration_constant: f64,
    pub exponent: f64,
    pub true_shannon: f64,
    pub true_simpson: f64,
}

impl From<&Profile> for ProfileRecord {
    fn from(p: &Profile) -> Self {
        Self {
            kind: p.kind,
            k: p.k,
            calibration_constant: p.calibration_constant,
            exponent: p.kind.exponent(),
            true_shannon: p.true_shannon,
            true_simpson: p.true_simpson,
        }
    }
}

/// Solver outcomes and exclusions for one scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub scenario_id: String,
    pub replicates_used: usize,
    pub solver_status: StatusCounts,
    pub median_eta: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub excluded: Vec<Exclusion>,
}

/// Estimates for one sample of a count matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleEstimate {
    pub sample_id: String,
    pub n: u64,
    pub estimates: Vec<MethodEstimate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodEstimate {
    pub method: Method,
    pub proportions: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver_status: Option<EtaStatus>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<u32>,
    pub shannon: f64,
    pub simpson: f64,
}

impl RunReport {
    pub fn new(metadata: Metadata) -> Self {
        Self {
            metadata,
            summaries: Vec::new(),
            scenario_results: Vec::new(),
            efficiency: Vec::new(),
            estimates: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|source| CliError::Write {
            path: path.into(),
            source,
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.into(),
            source,
        })?;
        let report: RunReport = serde_json::from_str(&text).map_err(|e| CliError::data(path, e))?;
        report.check().map_err(|m| CliError::data(path, m))?;
        Ok(report)
    }

    /// Every summary must reference a scenario listed in the metadata.
    pub fn check(&self) -> std::result::Result<(), String> {
        for s in &self.summaries {
            if !self
                .metadata
                .scenarios
                .iter()
                .any(|p| p.id == s.scenario_id)
            {
                return Err(format!(
                    "summary references unknown scenario {}",
                    s.scenario_id
                ));
            }
        }
        Ok(())
    }

    pub fn scenario(&self, id: &str) -> Option<&PlannedScenario> {
        self.metadata.scenarios.iter().find(|p| p.id == id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ebcount_core::{IndexKind, Quantiles, Summary};

    #[test]
    fn json_round_trip_and_scenario_check() {
        let mut report = RunReport::new(Metadata::new("simulate"));
        report.summaries.push(IndexSummary {
            scenario_id: "nowhere".into(),
            index: IndexKind::Pma,
            estimator: Method::Eb,
            true_value: 1.0,
            summary: Summary {
                m: 1,
                mean: 0.5,
                sd: None,
                bias: -0.5,
                rmse: 0.5,
                quantiles: Quantiles {
                    min: 0.5,
                    q1: 0.5,
                    median: 0.5,
                    q3: 0.5,
                    max: 0.5,
                },
            },
        });
        let json = report.to_json();
        assert!(json.contains("\"sd\": null"));
        assert!(json.contains("\"index\": \"PMA\""));
        let back: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert!(back.check().unwrap_err().contains("nowhere"));
    }
}
