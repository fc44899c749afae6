//! Fitting the Dirichlet concentration by maximizing the marginal likelihood.
//!
//! Plain Newton-Raphson on `l′(η) = 0`, kept inside a sign bracket. Whenever
//! the Newton step would leave the bracket or the curvature is not negative,
//! the iterate moves to the geometric midpoint of the bracket instead, which
//! is always in the uphill direction.

use crate::model::{log_lik_derivatives, log_lik_gradient, CountVector};
use crate::{Error, Result};

/// Below this, `l′` is treated as identically zero when probing for a flat
/// likelihood.
pub const FLAT_GRADIENT: f64 = 1e-10;

/// Convergence additionally requires `|η · l′(η)|` (the derivative with respect
/// to `ln η`) to be below this.
pub const GRADIENT_TOLERANCE: f64 = 1e-6;

const PROBE_GRID: [f64; 9] = [1e-4, 1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3, 1e4];

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct EtaSolverOptions {
    pub initial_eta: f64,
    pub rel_tolerance: f64,
    pub max_iterations: u32,
    pub eta_floor: f64,
    pub eta_ceiling: f64,
}

impl Default for EtaSolverOptions {
    fn default() -> Self {
        Self {
            initial_eta: 1.0,
            rel_tolerance: 1e-8,
            max_iterations: 100,
            eta_floor: 1e-6,
            eta_ceiling: 1e6,
        }
    }
}

impl EtaSolverOptions {
    pub fn validate(&self) -> Result<()> {
        let positive = |name, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::param(name, v))
            }
        };
        positive("eta_floor", self.eta_floor)?;
        positive("initial_eta", self.initial_eta)?;
        positive("eta_ceiling", self.eta_ceiling)?;
        positive("rel_tolerance", self.rel_tolerance)?;
        if self.max_iterations == 0 {
            return Err(Error::param("max_iterations", 0.0));
        }
        if self.eta_floor >= self.initial_eta {
            return Err(Error::param("eta_floor", self.eta_floor));
        }
        if self.initial_eta >= self.eta_ceiling {
            return Err(Error::param("eta_ceiling", self.eta_ceiling));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum EtaStatus {
    Converged,
    /// The likelihood is decreasing at the floor; the maximum is at `η → 0`.
    FloorClamped,
    /// The likelihood is still increasing at the ceiling; the maximum is at `η → ∞`.
    CeilingClamped,
    /// `l′` vanishes across the probe grid, so `η` is not identifiable.
    FlatLikelihood,
    MaxIterations,
}

impl EtaStatus {
    pub const ALL: [EtaStatus; 5] = [
        EtaStatus::Converged,
        EtaStatus::FloorClamped,
        EtaStatus::CeilingClamped,
        EtaStatus::FlatLikelihood,
        EtaStatus::MaxIterations,
    ];

    pub fn label(self) -> &'static str {
        match self {
            EtaStatus::Converged => "Converged",
            EtaStatus::FloorClamped => "FloorClamped",
            EtaStatus::CeilingClamped => "CeilingClamped",
            EtaStatus::FlatLikelihood => "FlatLikelihood",
            EtaStatus::MaxIterations => "MaxIterations",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EtaSolution {
    pub eta: f64,
    pub iterations: u32,
    pub converged: bool,
    pub status: EtaStatus,
}

impl EtaSolution {
    fn done(eta: f64, iterations: u32, status: EtaStatus) -> Self {
        Self {
            eta,
            iterations,
            converged: status == EtaStatus::Converged,
            status,
        }
    }
}

/// Maximizes the Dirichlet-Multinomial marginal likelihood over `η`.
///
/// Non-convergence is reported through [`EtaSolution::status`], never as an
/// error; errors are reserved for invalid options or an empty sample.
pub fn estimate_eta(x: &CountVector, opts: &EtaSolverOptions) -> Result<EtaSolution> {
    opts.validate()?;
    if x.n() == 0 {
        return Err(Error::EmptySample);
    }

    let flat = PROBE_GRID
        .iter()
        .chain([opts.eta_floor, opts.initial_eta, opts.eta_ceiling].iter())
        .all(|&eta| log_lik_gradient(eta, x).abs() < FLAT_GRADIENT);
    if flat {
        return Ok(EtaSolution::done(
            opts.initial_eta,
            0,
            EtaStatus::FlatLikelihood,
        ));
    }

    let mut lo = opts.eta_floor;
    let mut hi = opts.eta_ceiling;
    if log_lik_gradient(lo, x) <= 0.0 {
        return Ok(EtaSolution::done(lo, 0, EtaStatus::FloorClamped));
    }
    if log_lik_gradient(hi, x) >= 0.0 {
        return Ok(EtaSolution::done(hi, 0, EtaStatus::CeilingClamped));
    }

    // From here on l′(lo) > 0 > l′(hi).
    let mut eta = opts.initial_eta;
    for iteration in 1..=opts.max_iterations {
        let (grad, hess) = log_lik_derivatives(eta, x);
        if grad > 0.0 {
            lo = eta;
        } else if grad < 0.0 {
            hi = eta;
        } else {
            return Ok(EtaSolution::done(eta, iteration, EtaStatus::Converged));
        }

        let newton = eta - grad / hess;
        let next = if hess < 0.0 && newton > lo && newton < hi {
            newton
        } else {
            libm::sqrt(lo * hi)
        };

        let step = next - eta;
        eta = next;
        if step.abs() <= opts.rel_tolerance * eta {
            let grad = log_lik_gradient(eta, x);
            if (eta * grad).abs() <= GRADIENT_TOLERANCE {
                return Ok(EtaSolution::done(eta, iteration, EtaStatus::Converged));
            }
        }
    }
    Ok(EtaSolution::done(
        eta,
        opts.max_iterations,
        EtaStatus::MaxIterations,
    ))
}
