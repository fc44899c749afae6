//! Simulation configuration: a TOML file declaring the grid.
//!
//! ```toml
//! k = 200
//! m = 1000
//! seed = 20240601
//! profiles = ["quasi-uniform", "smooth", "concentrated"]
//!
//! [grid]
//! alpha = [20, 50, 100]
//! beta = [0.1]
//! gamma = [1, 10, 100]
//! ```
//!
//! Explicit `[[settings]]` tables (`alpha`, `beta`, `gamma`) may be given
//! instead of, or in addition to, `[grid]`; they come first. An optional
//! `[solver]` table overrides the η solver defaults.

use std::collections::HashSet;
use std::path::Path;

use ebcount_core::simulation::derive_seed;
use ebcount_core::{EtaSolverOptions, ProfileKind, Scenario};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::report::RunReport;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfig {
    pub k: usize,
    pub m: usize,
    pub seed: u64,
    pub profiles: Vec<ProfileKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Grid>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub settings: Vec<Setting>,
    #[serde(default)]
    pub solver: EtaSolverOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub gamma: Vec<f64>,
}

/// One `(α, β, γ)` combination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Setting {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl Setting {
    pub fn label(&self) -> String {
        format!(
            "alpha={},beta={},gamma={}",
            self.alpha, self.beta, self.gamma
        )
    }
}

/// A scenario together with its identifiers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlannedScenario {
    pub id: String,
    pub setting: String,
    #[serde(flatten)]
    pub scenario: Scenario,
}

impl SimulationConfig {
    pub fn from_toml(text: &str, path: &Path) -> Result<Self> {
        let config: SimulationConfig =
            toml::from_str(text).map_err(|e| CliError::config(path, e))?;
        config.validate(path)?;
        Ok(config)
    }

    /// Reads a TOML config, or the config embedded in a JSON report.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::config(path, e))?;
        if path.extension().is_some_and(|e| e == "json") {
            let report: RunReport = serde_json::from_str(&text)
                .map_err(|e| CliError::config(path, format!("not a report: {e}")))?;
            let config = report
                .metadata
                .config
                .ok_or_else(|| CliError::config(path, "report carries no simulation config"))?;
            config.validate(path)?;
            return Ok(config);
        }
        Self::from_toml(&text, path)
    }

    /// Settings in declaration order: explicit settings, then the grid with
    /// α varying slowest and γ fastest.
    pub fn settings(&self) -> Vec<Setting> {
        let mut out = self.settings.clone();
        if let Some(g) = &self.grid {
            for &alpha in &g.alpha {
                for &beta in &g.beta {
                    for &gamma in &g.gamma {
                        out.push(Setting { alpha, beta, gamma });
                    }
                }
            }
        }
        out
    }

    /// Every scenario of the run, profile-major, each with its own seed.
    pub fn scenarios(&self) -> Vec<PlannedScenario> {
        let settings = self.settings();
        let mut out = Vec::with_capacity(self.profiles.len() * settings.len());
        for &profile in &self.profiles {
            for s in &settings {
                let index = out.len() as u64;
                out.push(PlannedScenario {
                    id: format!(
                        "{}/alpha={}/beta={}/gamma={}",
                        profile, s.alpha, s.beta, s.gamma
                    ),
                    setting: s.label(),
                    scenario: Scenario {
                        alpha: s.alpha,
                        beta: s.beta,
                        gamma: s.gamma,
                        k: self.k,
                        m: self.m,
                        profile_kind: profile,
                        seed: derive_seed(self.seed, index),
                    },
                });
            }
        }
        out
    }

    pub fn validate(&self, path: &Path) -> Result<()> {
        let fail = |message: String| Err(CliError::config(path, message));
        if self.k < 2 {
            return fail(format!("k: need at least 2 categories, got {}", self.k));
        }
        if self.m == 0 {
            return fail("m: need at least one replicate".into());
        }
        if self.profiles.is_empty() {
            return fail("profiles: list is empty".into());
        }
        let mut seen = HashSet::new();
        for p in &self.profiles {
            if !seen.insert(*p) {
                return fail(format!("profiles: {p} listed twice"));
            }
        }
        if let Some(g) = &self.grid {
            for (name, values) in [("alpha", &g.alpha), ("beta", &g.beta), ("gamma", &g.gamma)] {
                if values.is_empty() {
                    return fail(format!("grid.{name}: list is empty"));
                }
            }
        }
        let settings = self.settings();
        if settings.is_empty() {
            return fail("no settings: give [grid] or [[settings]]".into());
        }
        let mut labels = HashSet::new();
        for s in &settings {
            for (name, v) in [("alpha", s.alpha), ("beta", s.beta), ("gamma", s.gamma)] {
                if !(v > 0.0 && v.is_finite()) {
                    return fail(format!("{name} must be positive and finite, got {v}"));
                }
            }
            if !labels.insert(s.label()) {
                return fail(format!("setting {} declared twice", s.label()));
            }
        }
        self.solver
            .validate()
            .or_else(|e| fail(format!("solver: {e}")))
    }
}
