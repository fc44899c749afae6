//! Multinomial sampling model, the symmetric Dirichlet prior and the two
//! composition estimators built on them.
//!
//! For a sample `x = (x_1, …, x_k)` with total `n`, the compound
//! Dirichlet-Multinomial marginal likelihood of the prior concentration `η` is
//!
//! ```text
//! L(η) = Γ(n+1) Γ(kη) / Γ(n+kη) · Π_j Γ(x_j+η) / (Γ(x_j+1) Γ(η))
//! ```
//!
//! Its first two derivatives in log space are finite harmonic sums, which is
//! what the Newton-Raphson fit in [`crate::solver`] iterates on.

use alloc::vec::Vec;

use crate::math::ln_gamma;
use crate::{Error, Result};

/// Counts of individuals over `k` fixed categories.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CountVector {
    counts: Vec<u64>,
    n: u64,
}

impl CountVector {
    /// Builds a count vector; the total is the sum of `counts`.
    pub fn new(counts: Vec<u64>) -> Result<Self> {
        if counts.len() < 2 {
            return Err(Error::TooFewCategories(counts.len()));
        }
        let n = counts
            .iter()
            .try_fold(0u64, |acc, &c| acc.checked_add(c))
            .ok_or(Error::NonFinite {
                term: "sample total",
            })?;
        Ok(Self { counts, n })
    }

    /// Builds a count vector with a declared total, which must equal the sum.
    pub fn with_total(counts: Vec<u64>, n: u64) -> Result<Self> {
        let x = Self::new(counts)?;
        if x.n != n {
            return Err(Error::TotalMismatch {
                declared: n,
                actual: x.n,
            });
        }
        Ok(x)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Sample total.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Number of categories.
    pub fn k(&self) -> usize {
        self.counts.len()
    }

    pub fn into_counts(self) -> Vec<u64> {
        self.counts
    }
}

/// Which estimator produced a composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Method {
    #[cfg_attr(feature = "serde", serde(rename = "ML"))]
    Ml,
    #[cfg_attr(feature = "serde", serde(rename = "EB"))]
    Eb,
}

impl Method {
    pub const ALL: [Method; 2] = [Method::Ml, Method::Eb];

    pub fn label(self) -> &'static str {
        match self {
            Method::Ml => "ML",
            Method::Eb => "EB",
        }
    }
}

/// A point estimate of the composition.
///
/// ML estimates may contain zeros for unobserved categories; EB estimates are
/// strictly positive and carry the fitted concentration.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CompositionEstimate {
    pub proportions: Vec<f64>,
    pub method: Method,
    #[cfg_attr(
        feature = "serde",
        serde(default, skip_serializing_if = "Option::is_none")
    )]
    pub eta: Option<f64>,
}

pub(crate) fn check_eta(eta: f64) -> Result<()> {
    if eta > 0.0 && eta.is_finite() {
        Ok(())
    } else {
        Err(Error::param("eta", eta))
    }
}

/// Multinomial maximum likelihood estimate `x_j / n`.
pub fn mle_proportions(x: &CountVector) -> Result<CompositionEstimate> {
    if x.n == 0 {
        return Err(Error::EmptySample);
    }
    let n = x.n as f64;
    Ok(CompositionEstimate {
        proportions: x.counts.iter().map(|&c| c as f64 / n).collect(),
        method: Method::Ml,
        eta: None,
    })
}

/// Posterior mean `(x_j + η) / (n + kη)` under a symmetric Dirichlet(η) prior.
pub fn eb_proportions(x: &CountVector, eta: f64) -> Result<CompositionEstimate> {
    check_eta(eta)?;
    let denom = x.n as f64 + x.k() as f64 * eta;
    Ok(CompositionEstimate {
        proportions: x.counts.iter().map(|&c| (c as f64 + eta) / denom).collect(),
        method: Method::Eb,
        eta: Some(eta),
    })
}

/// Log of the compound Dirichlet-Multinomial marginal likelihood, including the
/// multinomial coefficient.
pub fn marginal_log_likelihood(eta: f64, x: &CountVector) -> Result<f64> {
    check_eta(eta)?;
    let k = x.k() as f64;
    let n = x.n as f64;

    let finite = |v: f64, term: &'static str| {
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { term })
        }
    };

    let k_eta = finite(k * eta, "k·eta")?;
    let mut total = finite(ln_gamma(n + 1.0), "lnΓ(n+1)")?;
    total += finite(ln_gamma(k_eta), "lnΓ(k·eta)")?;
    total -= finite(ln_gamma(n + k_eta), "lnΓ(n+k·eta)")?;

    let ln_gamma_eta = finite(ln_gamma(eta), "lnΓ(eta)")?;
    for &c in &x.counts {
        if c == 0 {
            // Γ(0+η) / (Γ(1) Γ(η)) = 1
            continue;
        }
        let c = c as f64;
        total += finite(ln_gamma(c + eta), "lnΓ(x_j+eta)")? - ln_gamma(c + 1.0) - ln_gamma_eta;
    }
    finite(total, "log marginal likelihood")
}

/// First and second derivatives of the log marginal likelihood in `η`.
///
/// Uses the harmonic-sum forms; the inner sum for a category is empty when its
/// count is zero.
pub(crate) fn log_lik_derivatives(eta: f64, x: &CountVector) -> (f64, f64) {
    debug_assert!(eta > 0.0);
    let k = x.k() as f64;
    let k_eta = k * eta;

    let mut grad = 0.0;
    let mut hess = 0.0;
    for m in 0..x.n {
        let t = k / (k_eta + m as f64);
        grad -= t;
        hess += t * t;
    }
    for &c in &x.counts {
        for y in 0..c {
            let t = 1.0 / (eta + y as f64);
            grad += t;
            hess -= t * t;
        }
    }
    (grad, hess)
}

/// `l′(η)`.
pub fn log_lik_gradient(eta: f64, x: &CountVector) -> f64 {
    log_lik_derivatives(eta, x).0
}

/// `l″(η)`.
pub fn log_lik_hessian(eta: f64, x: &CountVector) -> f64 {
    log_lik_derivatives(eta, x).1
}

/// Marginal variance of each coordinate under a symmetric Dirichlet(η) prior.
pub fn prior_marginal_variance(eta: f64, k: usize) -> f64 {
    let k = k as f64;
    (k - 1.0) / (k * k * (1.0 + k * eta))
}
