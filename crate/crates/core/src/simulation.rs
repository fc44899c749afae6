//! Overdispersed count generation: `λ ~ Gamma(α, β)`, `π ~ Dirichlet(kγπ*)`,
//! `x_j ~ Poisson(λπ_j)`.
//!
//! True profiles `π*` are ranked (non-decreasing) and take the form
//! `π*_j ∝ a + (j/k)^p` with `p = 1, 3, 50` for the quasi-uniform, smooth and
//! concentrated kinds. The intercept `a` is calibrated once, at `k = 200`, so
//! that the Shannon entropy of the profile hits a reference value; other `k`
//! reuse the same intercept.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Poisson};

use crate::indices::{shannon, simpson, Simplex};
use crate::math::powf;
use crate::model::CountVector;
use crate::{Error, Result};

/// Number of categories at which profile intercepts are calibrated.
pub const CALIBRATION_K: usize = 200;

/// Search interval for the intercept.
pub const INTERCEPT_BRACKET: (f64, f64) = (0.0, 1e3);

/// Description of the per-replicate generator, recorded in reports.
pub const RNG_ALGORITHM: &str =
    "ChaCha8 (rand_chacha 0.9); key = seed_from_u64(scenario seed), stream = replicate index";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum ProfileKind {
    QuasiUniform,
    Smooth,
    Concentrated,
}

impl ProfileKind {
    pub const ALL: [ProfileKind; 3] = [
        ProfileKind::QuasiUniform,
        ProfileKind::Smooth,
        ProfileKind::Concentrated,
    ];

    /// Power applied to `j/k`.
    pub fn exponent(self) -> f64 {
        match self {
            ProfileKind::QuasiUniform => 1.0,
            ProfileKind::Smooth => 3.0,
            ProfileKind::Concentrated => 50.0,
        }
    }

    /// Shannon entropy the profile is calibrated to at `k = 200`.
    pub fn target_entropy(self) -> f64 {
        match self {
            ProfileKind::QuasiUniform => 5.280,
            ProfileKind::Smooth => 4.699,
            ProfileKind::Concentrated => 3.291,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ProfileKind::QuasiUniform => "quasi-uniform",
            ProfileKind::Smooth => "smooth",
            ProfileKind::Concentrated => "concentrated",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            ProfileKind::QuasiUniform => "Quasi-uniform",
            ProfileKind::Smooth => "Smooth",
            ProfileKind::Concentrated => "Concentrated",
        }
    }
}

impl fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProfileKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProfileKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownProfile(s.into()))
    }
}

/// A ranked true composition with its calibration and true index values.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Profile {
    pub kind: ProfileKind,
    pub k: usize,
    pub pi_star: Simplex,
    /// Additive intercept `a` in `a + (j/k)^p`.
    pub calibration_constant: f64,
    pub true_shannon: f64,
    pub true_simpson: f64,
}

fn ranked_weights(intercept: f64, exponent: f64, k: usize) -> Vec<f64> {
    let raw: Vec<f64> = (1..=k)
        .map(|j| intercept + powf(j as f64 / k as f64, exponent))
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

fn profile_entropy(intercept: f64, exponent: f64, k: usize) -> f64 {
    // weights are strictly positive for j ≥ 1, so this is a valid simplex
    shannon(&Simplex(ranked_weights(intercept, exponent, k))).value
}

/// Finds the intercept `a` such that `a + (j/k)^p`, normalized, has the target
/// Shannon entropy. Entropy increases with `a`, so bisection suffices.
pub fn calibrate_intercept(exponent: f64, k: usize, target_entropy: f64) -> Result<f64> {
    if k < 2 {
        return Err(Error::TooFewCategories(k));
    }
    let (mut lo, mut hi) = INTERCEPT_BRACKET;
    let h_lo = profile_entropy(lo, exponent, k);
    let h_hi = profile_entropy(hi, exponent, k);
    if !(h_lo <= target_entropy && target_entropy <= h_hi) {
        return Err(Error::Calibration {
            target: target_entropy,
            min: h_lo,
            max: h_hi,
        });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if profile_entropy(mid, exponent, k) < target_entropy {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Builds a profile with an explicit intercept.
pub fn profile_with_intercept(kind: ProfileKind, k: usize, intercept: f64) -> Result<Profile> {
    if k < 2 {
        return Err(Error::TooFewCategories(k));
    }
    if !(intercept >= 0.0 && intercept.is_finite()) {
        return Err(Error::param("intercept", intercept));
    }
    let pi_star = Simplex::new(ranked_weights(intercept, kind.exponent(), k))?;
    Ok(Profile {
        kind,
        k,
        true_shannon: shannon(&pi_star).value,
        true_simpson: simpson(&pi_star).value,
        pi_star,
        calibration_constant: intercept,
    })
}

/// Builds the profile of `kind` over `k` categories, with the intercept
/// calibrated at [`CALIBRATION_K`] categories.
pub fn make_profile(kind: ProfileKind, k: usize) -> Result<Profile> {
    let intercept = calibrate_intercept(kind.exponent(), CALIBRATION_K, kind.target_entropy())?;
    profile_with_intercept(kind, k, intercept)
}

/// Builds a profile calibrated directly at `k` to an arbitrary target entropy.
pub fn make_profile_with_target(
    kind: ProfileKind,
    k: usize,
    target_entropy: f64,
) -> Result<Profile> {
    let intercept = calibrate_intercept(kind.exponent(), k, target_entropy)?;
    profile_with_intercept(kind, k, intercept)
}

/// One draw of the expected sample size from `Gamma(shape α, rate β)`.
pub fn sample_lambda<R: Rng + ?Sized>(alpha: f64, beta: f64, rng: &mut R) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::param("alpha", alpha));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::param("beta", beta));
    }
    let dist = Gamma::new(alpha, 1.0 / beta).map_err(|_| Error::param("alpha", alpha))?;
    Ok(dist.sample(rng))
}

/// Draws from `Dirichlet(θ)` by normalizing independent `Gamma(θ_j, 1)` draws.
pub fn sample_dirichlet<R: Rng + ?Sized>(theta: &[f64], rng: &mut R) -> Result<Simplex> {
    let mut draws = Vec::with_capacity(theta.len());
    for &t in theta {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::param("dirichlet parameter", t));
        }
        let g = Gamma::new(t, 1.0).map_err(|_| Error::param("dirichlet parameter", t))?;
        draws.push(g.sample(rng));
    }
    let total: f64 = draws.iter().sum();
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::NonFinite {
            term: "dirichlet normalization",
        });
    }
    for d in &mut draws {
        *d /= total;
    }
    Simplex::new(draws)
}

/// One composition draw around the profile, `Dirichlet(kγπ*)`.
pub fn sample_composition<R: Rng + ?Sized>(
    gamma: f64,
    profile: &Profile,
    rng: &mut R,
) -> Result<Simplex> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::param("gamma", gamma));
    }
    let scale = profile.k as f64 * gamma;
    let theta: Vec<f64> = profile.pi_star.values().iter().map(|p| scale * p).collect();
    sample_dirichlet(&theta, rng)
}

/// Independent Poisson counts with means `λπ_j`.
pub fn sample_counts<R: Rng + ?Sized>(
    lambda: f64,
    pi: &Simplex,
    rng: &mut R,
) -> Result<CountVector> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::param("lambda", lambda));
    }
    let mut counts = Vec::with_capacity(pi.k());
    for &p in pi.values() {
        let mean = lambda * p;
        let c = if mean > 0.0 {
            let dist = Poisson::new(mean).map_err(|_| Error::param("poisson mean", mean))?;
            dist.sample(rng) as u64
        } else {
            0
        };
        counts.push(c);
    }
    CountVector::new(counts)
}

/// Parameters of one simulation cell.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Scenario {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub k: usize,
    pub m: usize,
    pub profile_kind: ProfileKind,
    pub seed: u64,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("gamma", self.gamma),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::param(name, v));
            }
        }
        if self.k < 2 {
            return Err(Error::TooFewCategories(self.k));
        }
        if self.m == 0 {
            return Err(Error::param("m", 0.0));
        }
        Ok(())
    }

    /// Expected sample size `α/β`.
    pub fn expected_size(&self) -> f64 {
        self.alpha / self.beta
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SimulatedSample {
    pub counts: CountVector,
    pub lambda_drawn: f64,
    pub pi_drawn: Simplex,
    pub replicate_index: usize,
}

/// The random stream for one replicate of a scenario.
pub fn replicate_rng(seed: u64, replicate: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replicate as u64);
    rng
}

/// Mixes a base seed with a cell index (SplitMix64 finalizer), so that every
/// cell of a grid gets its own key.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Simulates replicate `i` of a scenario; depends only on `(seed, i)`.
pub fn simulate_replicate(
    scenario: &Scenario,
    profile: &Profile,
    replicate: usize,
) -> Result<SimulatedSample> {
    let mut rng = replicate_rng(scenario.seed, replicate);
    let run = |rng: &mut ChaCha8Rng| -> Result<SimulatedSample> {
        let lambda = sample_lambda(scenario.alpha, scenario.beta, rng)?;
        let pi = sample_composition(scenario.gamma, profile, rng)?;
        let counts = sample_counts(lambda, &pi, rng)?;
        Ok(SimulatedSample {
            counts,
            lambda_drawn: lambda,
            pi_drawn: pi,
            replicate_index: replicate,
        })
    };
    run(&mut rng).map_err(|e| e.at_replicate(replicate))
}

/// Runs all `m` replicates of a scenario in order.
pub fn run_scenario(scenario: &Scenario) -> Result<Vec<SimulatedSample>> {
    scenario.validate()?;
    let profile = make_profile(scenario.profile_kind, scenario.k)?;
    (0..scenario.m)
        .map(|i| simulate_replicate(scenario, &profile, i))
        .collect()
}
