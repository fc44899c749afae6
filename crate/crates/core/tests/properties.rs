mod support;

use proptest::prelude::*;
use support::invariants as inv;

proptest! {
    #[test]
    fn eb_is_on_the_simplex(c in inv::counts(), eta in inv::eta()) {
        inv::eb_is_on_the_simplex(&c, eta)?;
    }

    #[test]
    fn eb_limits(c in inv::counts()) {
        inv::eb_limits(&c)?;
    }

    #[test]
    fn shrinkage_is_monotone(c in inv::counts(), a in inv::eta(), b in inv::eta()) {
        inv::shrinkage_is_monotone(&c, a, b)?;
    }

    #[test]
    fn permutation_equivariance(c in inv::counts(), rot in 0usize..100) {
        inv::permutation_equivariance(&c, rot)?;
    }

    #[test]
    fn index_ranges(p in inv::simplex()) {
        inv::index_ranges(&p)?;
    }

    #[test]
    fn rmse_identity((values, truth) in inv::sample_values()) {
        inv::rmse_identity(&values, truth)?;
    }

    #[test]
    fn profiles_are_simplices(k in 2usize..1500) {
        inv::profile_is_a_simplex(k)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn deterministic_under_seed(seed in any::<u64>(), gamma in 0.5f64..50.0) {
        inv::deterministic_under_seed(seed, gamma)?;
    }
}
