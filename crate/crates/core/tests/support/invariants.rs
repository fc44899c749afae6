//! Property checks shared by the property-test suite and the acceptance run.

use ebcount_core::{
    eb_proportions, estimate_eta, make_profile, mle_proportions, run_scenario, shannon, simpson,
    summarize, CountVector, EtaSolverOptions, IndexKind, ProfileKind, Scenario, Simplex,
};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn counts() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(
        prop_oneof![3 => Just(0u64), 5 => 0u64..20, 2 => 0u64..2000],
        2..80,
    )
    .prop_filter("non-empty sample", |c| c.iter().any(|&v| v > 0))
}

pub fn eta() -> impl Strategy<Value = f64> {
    (-4.0f64..4.0).prop_map(|e| 10f64.powf(e))
}

pub fn simplex() -> impl Strategy<Value = Simplex> {
    prop::collection::vec(prop_oneof![1 => Just(0.0), 4 => 0.0f64..10.0], 2..300)
        .prop_filter("non-zero", |w| w.iter().sum::<f64>() > 0.0)
        .prop_map(|w| {
            let t: f64 = w.iter().sum();
            Simplex::new(w.iter().map(|v| v / t).collect()).unwrap()
        })
}

pub fn sample_values() -> impl Strategy<Value = (Vec<f64>, f64)> {
    (
        prop::collection::vec(-50.0f64..50.0, 1..200),
        -50.0f64..50.0,
    )
}

fn cv(c: &[u64]) -> CountVector {
    CountVector::new(c.to_vec()).unwrap()
}

pub fn eb_is_on_the_simplex(c: &[u64], eta: f64) -> Result<(), TestCaseError> {
    let p = eb_proportions(&cv(c), eta).unwrap().proportions;
    let sum: f64 = p.iter().sum();
    prop_assert!((sum - 1.0).abs() <= 1e-12, "sum = {}", sum);
    prop_assert!(p.iter().all(|&v| v > 0.0 && v < 1.0));
    Ok(())
}

pub fn eb_limits(c: &[u64]) -> Result<(), TestCaseError> {
    let x = cv(c);
    let ml = mle_proportions(&x).unwrap().proportions;
    let small = eb_proportions(&x, 1e-12).unwrap().proportions;
    let large = eb_proportions(&x, 1e12).unwrap().proportions;
    let k = c.len() as f64;
    for j in 0..c.len() {
        prop_assert!((small[j] - ml[j]).abs() <= 1e-8);
        prop_assert!((large[j] - 1.0 / k).abs() <= 1e-8);
    }
    Ok(())
}

/// Raising η moves every EB proportion towards `1/k`.
pub fn shrinkage_is_monotone(c: &[u64], a: f64, b: f64) -> Result<(), TestCaseError> {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let x = cv(c);
    let p_lo = eb_proportions(&x, lo).unwrap().proportions;
    let p_hi = eb_proportions(&x, hi).unwrap().proportions;
    let u = 1.0 / c.len() as f64;
    for j in 0..c.len() {
        prop_assert!((p_hi[j] - u).abs() <= (p_lo[j] - u).abs() + 1e-15);
    }
    Ok(())
}

/// Permuting the categories permutes both estimates and leaves η̂ unchanged.
pub fn permutation_equivariance(c: &[u64], rotation: usize) -> Result<(), TestCaseError> {
    let perm: Vec<usize> = (0..c.len())
        .rev()
        .map(|j| (j + rotation) % c.len())
        .collect();
    let permuted: Vec<u64> = perm.iter().map(|&j| c[j]).collect();
    let opts = EtaSolverOptions::default();
    let (x, y) = (cv(c), cv(&permuted));
    let ex = estimate_eta(&x, &opts).unwrap();
    let ey = estimate_eta(&y, &opts).unwrap();
    prop_assert_eq!(ex.status, ey.status);
    prop_assert!((ex.eta - ey.eta).abs() <= 1e-6 * ex.eta);

    let px = eb_proportions(&x, ex.eta).unwrap().proportions;
    let py = eb_proportions(&y, ex.eta).unwrap().proportions;
    let mx = mle_proportions(&x).unwrap().proportions;
    let my = mle_proportions(&y).unwrap().proportions;
    for (i, &j) in perm.iter().enumerate() {
        prop_assert_eq!(py[i], px[j]);
        prop_assert_eq!(my[i], mx[j]);
    }
    Ok(())
}

pub fn index_ranges(p: &Simplex) -> Result<(), TestCaseError> {
    let k = p.k();
    for (index, v) in [
        (IndexKind::Shannon, shannon(p).value),
        (IndexKind::Simpson, simpson(p).value),
    ] {
        let (lo, hi) = index.range(k);
        prop_assert!(v >= lo - 1e-12 && v <= hi + 1e-12, "{:?} = {}", index, v);
    }
    let u = Simplex::uniform(k);
    for index in [IndexKind::Pma, IndexKind::Euclidean] {
        let v = index.evaluate(p, &u).unwrap().value;
        let (lo, hi) = index.range(k);
        prop_assert!(v >= lo - 1e-12 && v <= hi + 1e-12, "{:?} = {}", index, v);
    }
    Ok(())
}

/// `rmse² = bias² + sd²(m−1)/m`, and the five quantiles are ordered.
pub fn rmse_identity(values: &[f64], truth: f64) -> Result<(), TestCaseError> {
    let s = summarize(values, truth).unwrap();
    let m = s.m as f64;
    let var = s.sd.map_or(0.0, |sd| sd * sd * (m - 1.0) / m);
    let lhs = s.rmse * s.rmse;
    let rhs = s.bias * s.bias + var;
    prop_assert!(
        (lhs - rhs).abs() <= 1e-9 * lhs.max(1.0),
        "{} vs {}",
        lhs,
        rhs
    );
    let q = s.quantiles;
    prop_assert!(q.min <= q.q1 && q.q1 <= q.median && q.median <= q.q3 && q.q3 <= q.max);
    Ok(())
}

/// The same scenario and seed give identical samples.
pub fn deterministic_under_seed(seed: u64, gamma: f64) -> Result<(), TestCaseError> {
    let scenario = Scenario {
        alpha: 20.0,
        beta: 0.1,
        gamma,
        k: 30,
        m: 4,
        profile_kind: ProfileKind::Smooth,
        seed,
    };
    let a = run_scenario(&scenario).unwrap();
    let b = run_scenario(&scenario).unwrap();
    prop_assert_eq!(&a, &b);
    let other = run_scenario(&Scenario {
        seed: seed.wrapping_add(1),
        ..scenario
    })
    .unwrap();
    prop_assert_ne!(a, other);
    Ok(())
}

pub fn profile_is_a_simplex(k: usize) -> Result<(), TestCaseError> {
    for kind in ProfileKind::ALL {
        let p = make_profile(kind, k).unwrap();
        let sum: f64 = p.pi_star.values().iter().sum();
        prop_assert!((sum - 1.0).abs() <= 1e-12);
    }
    Ok(())
}
