//! Composition estimation for overdispersed multivariate counts.
//!
//! A single sample of counts over `k` fixed categories is modelled as
//! Multinomial given the composition, with a symmetric Dirichlet prior on the
//! composition. The prior concentration `η` is fitted by maximizing the
//! compound Dirichlet-Multinomial marginal likelihood, and the posterior mean
//! gives the empirical-Bayes (EB) estimate. The plain Multinomial maximum
//! likelihood (ML) estimate is provided alongside for comparison.
//!
//! The crate also carries the machinery for a Monte Carlo comparison of the
//! two estimators: profile construction, a Gamma → Dirichlet → Poisson count
//! generator, four diversity/similarity indices and RMSE-based efficiency
//! summaries.
//!
//! Everything here is `no_std` (with `alloc`); file formats and the command
//! line live in the `ebcount` crate.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
mod math;

pub mod evaluation;
pub mod indices;
pub mod model;
pub mod simulation;
pub mod solver;
pub mod study;

pub use error::{Error, Result};
pub use evaluation::{
    relative_efficiency, summarize, CellErrors, EfficiencyCell, EfficiencyScope, IndexSummary,
    Quantiles, Summary,
};
pub use indices::{euclidean_similarity, pma, shannon, simpson, IndexKind, IndexValue, Simplex};
pub use model::{
    eb_proportions, log_lik_gradient, log_lik_hessian, marginal_log_likelihood, mle_proportions,
    prior_marginal_variance, CompositionEstimate, CountVector, Method,
};
pub use simulation::{make_profile, run_scenario, Profile, ProfileKind, Scenario, SimulatedSample};
pub use solver::{estimate_eta, EtaSolution, EtaSolverOptions, EtaStatus};
