//! Test oracles written independently of the library code paths.
#![allow(dead_code)]

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Binomial, Distribution, Gamma};

/// Tanh-sinh nodes on (0, 1) in log form: `(ln u, ln(1 − u), ln w)`.
fn tanh_sinh_nodes(h: f64, half_width: f64) -> Vec<(f64, f64, f64)> {
    let n = (half_width / h).ceil() as i64;
    (-n..=n)
        .map(|j| {
            let t = j as f64 * h;
            let s = PI * t.sinh();
            // u = logistic(s), so 1 − u = logistic(−s)
            let ln_logistic = |z: f64| {
                if z > 0.0 {
                    -(-z).exp().ln_1p()
                } else {
                    z - z.exp().ln_1p()
                }
            };
            let ln_u = ln_logistic(s);
            let ln_v = ln_logistic(-s);
            let ln_w = h.ln() + (PI * t.cosh()).ln() + ln_u + ln_v;
            (ln_u, ln_v, ln_w)
        })
        .collect()
}

/// `∫∫ π1^(a1−1) π2^(a2−1) π3^(a3−1)` over the 2-simplex, by tanh-sinh
/// quadrature in `π1 = u`, `π2 = (1 − u) v`, refined until two successive
/// step sizes agree to `1e-12`.
pub fn simplex_integral(a: [f64; 3]) -> f64 {
    let level = |h: f64| {
        let nodes = tanh_sinh_nodes(h, 7.0);
        let mut total = 0.0;
        for &(ln_u, ln_1mu, ln_wu) in &nodes {
            // Jacobian (1 − u) folded into the exponent
            let outer = (a[0] - 1.0) * ln_u + (a[1] + a[2] - 1.0) * ln_1mu + ln_wu;
            for &(ln_v, ln_1mv, ln_wv) in &nodes {
                total += (outer + (a[1] - 1.0) * ln_v + (a[2] - 1.0) * ln_1mv + ln_wv).exp();
            }
        }
        total
    };
    let mut h = 0.25;
    let mut prev = level(h);
    loop {
        h /= 2.0;
        let cur = level(h);
        if (cur - prev).abs() <= 1e-12 * cur.abs() || h < 1.0 / 256.0 {
            return cur;
        }
        prev = cur;
    }
}

fn factorial(n: u64) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Dirichlet-Multinomial probability of `x` (k = 3, symmetric concentration
/// `eta`) with both the likelihood integral and the prior normalizer
/// obtained by quadrature.
pub fn dm_probability_by_quadrature(x: [u64; 3], eta: f64) -> f64 {
    let n: u64 = x.iter().sum();
    let coef = factorial(n) / x.iter().map(|&c| factorial(c)).product::<f64>();
    let a = x.map(|c| c as f64 + eta);
    coef * simplex_integral(a) / simplex_integral([eta; 3])
}

/// All count vectors of length 3 with total at most `max_n`.
pub fn small_count_vectors(max_n: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        for a in 0..=n {
            for b in 0..=n - a {
                out.push([a, b, n - a - b]);
            }
        }
    }
    out
}

/// Counts from the symmetric Dirichlet-Multinomial model: a normalized Gamma
/// draw for the composition, then sequential binomial splitting.
pub fn sample_dirichlet_multinomial<R: Rng>(k: usize, eta: f64, n: u64, rng: &mut R) -> Vec<u64> {
    let gamma = Gamma::new(eta, 1.0).unwrap();
    let g: Vec<f64> = (0..k).map(|_| gamma.sample(rng)).collect();
    let mut remaining_mass: f64 = g.iter().sum();
    let mut remaining = n;
    let mut counts = Vec::with_capacity(k);
    for (j, gj) in g.iter().enumerate() {
        if j == k - 1 {
            counts.push(remaining);
            break;
        }
        let p = if remaining_mass > 0.0 {
            (gj / remaining_mass).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let c = if remaining == 0 {
            0
        } else {
            Binomial::new(remaining, p).unwrap().sample(rng)
        };
        counts.push(c);
        remaining -= c;
        remaining_mass -= gj;
    }
    counts
}

/// Five-point central difference of `f` at `x` with step `h`.
pub fn central_difference(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

/// `|a − b| ≤ tol · max(1, |b|)`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

pub fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len();
    if m % 2 == 1 {
        v[m / 2]
    } else {
        0.5 * (v[m / 2 - 1] + v[m / 2])
    }
}

pub mod invariants;
