//! Diversity and similarity indices on compositions.

use alloc::vec::Vec;

use crate::math::ln;
use crate::model::CompositionEstimate;
use crate::{Error, Result};

/// Tolerance on `Σ p_j = 1` accepted by [`Simplex::new`].
pub const SIMPLEX_TOLERANCE: f64 = 1e-10;

/// A composition: nonnegative values summing to one.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "Vec<f64>", into = "Vec<f64>"))]
pub struct Simplex(pub(crate) Vec<f64>);

impl Simplex {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::NotSimplex { reason: "empty" });
        }
        if values.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::NotSimplex {
                reason: "value outside [0, 1]",
            });
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_TOLERANCE {
            return Err(Error::NotSimplex {
                reason: "values do not sum to 1",
            });
        }
        Ok(Self(values))
    }

    /// The barycentre `(1/k, …, 1/k)`.
    pub fn uniform(k: usize) -> Self {
        Self(alloc::vec![1.0 / k as f64; k])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl TryFrom<Vec<f64>> for Simplex {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Simplex::new(values)
    }
}

impl From<Simplex> for Vec<f64> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

impl TryFrom<CompositionEstimate> for Simplex {
    type Error = Error;

    fn try_from(estimate: CompositionEstimate) -> Result<Self> {
        Simplex::new(estimate.proportions)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum IndexKind {
    Shannon,
    Simpson,
    #[cfg_attr(feature = "serde", serde(rename = "PMA"))]
    Pma,
    Euclidean,
}

impl IndexKind {
    pub const ALL: [IndexKind; 4] = [
        IndexKind::Shannon,
        IndexKind::Simpson,
        IndexKind::Pma,
        IndexKind::Euclidean,
    ];

    /// One-letter symbol used in tables: H, D, I, E.
    pub fn symbol(self) -> &'static str {
        match self {
            IndexKind::Shannon => "H",
            IndexKind::Simpson => "D",
            IndexKind::Pma => "I",
            IndexKind::Euclidean => "E",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            IndexKind::Shannon => "Shannon entropy",
            IndexKind::Simpson => "Simpson diversity",
            IndexKind::Pma => "PMA index",
            IndexKind::Euclidean => "Euclidean similarity",
        }
    }

    /// Whether the index compares an estimate with a reference composition.
    pub fn needs_reference(self) -> bool {
        matches!(self, IndexKind::Pma | IndexKind::Euclidean)
    }

    /// Attainable range for a `k`-category composition.
    pub fn range(self, k: usize) -> (f64, f64) {
        match self {
            IndexKind::Shannon => (0.0, ln(k as f64)),
            IndexKind::Simpson => (1.0 / k as f64, 1.0),
            IndexKind::Pma => (0.0, 1.0),
            IndexKind::Euclidean => (-1.0, 1.0),
        }
    }

    /// Evaluates the index of `estimate`; `reference` is required for the
    /// similarity indices and ignored otherwise.
    pub fn evaluate(self, estimate: &Simplex, reference: &Simplex) -> Result<IndexValue> {
        match self {
            IndexKind::Shannon => Ok(shannon(estimate)),
            IndexKind::Simpson => Ok(simpson(estimate)),
            IndexKind::Pma => pma(estimate, reference),
            IndexKind::Euclidean => euclidean_similarity(estimate, reference),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IndexValue {
    pub index: IndexKind,
    pub value: f64,
}

/// Shannon entropy `−Σ p log p` (natural log, `0 log 0 = 0`).
pub fn shannon(p: &Simplex) -> IndexValue {
    let value = -p
        .values()
        .iter()
        .map(|&v| if v == 0.0 { 0.0 } else { v * ln(v) })
        .sum::<f64>();
    IndexValue {
        index: IndexKind::Shannon,
        value,
    }
}

/// Simpson diversity `Σ p²`.
pub fn simpson(p: &Simplex) -> IndexValue {
    IndexValue {
        index: IndexKind::Simpson,
        value: p.values().iter().map(|v| v * v).sum(),
    }
}

fn same_k(a: &Simplex, b: &Simplex) -> Result<()> {
    if a.k() != b.k() {
        return Err(Error::DimensionMismatch {
            left: a.k(),
            right: b.k(),
        });
    }
    Ok(())
}

/// Percent model affinity `1 − ½ Σ |p̂ − π*|`.
pub fn pma(p_hat: &Simplex, p_star: &Simplex) -> Result<IndexValue> {
    same_k(p_hat, p_star)?;
    let l1: f64 = p_hat
        .values()
        .iter()
        .zip(p_star.values())
        .map(|(a, b)| (a - b).abs())
        .sum();
    Ok(IndexValue {
        index: IndexKind::Pma,
        value: 1.0 - 0.5 * l1,
    })
}

/// Euclidean similarity `1 − Σ (p̂ − π*)²`.
pub fn euclidean_similarity(p_hat: &Simplex, p_star: &Simplex) -> Result<IndexValue> {
    same_k(p_hat, p_star)?;
    let sq: f64 = p_hat
        .values()
        .iter()
        .zip(p_star.values())
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    Ok(IndexValue {
        index: IndexKind::Euclidean,
        value: 1.0 - sq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn s(v: &[f64]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    fn vertex(k: usize) -> Simplex {
        let mut v = vec![0.0; k];
        v[0] = 1.0;
        Simplex::new(v).unwrap()
    }

    #[test]
    fn simplex_validation() {
        assert!(Simplex::new(vec![]).is_err());
        assert!(Simplex::new(vec![0.5, 0.6]).is_err());
        assert!(Simplex::new(vec![1.2, -0.2]).is_err());
        assert!(Simplex::new(vec![0.5, 0.5 + 1e-11]).is_ok());
    }

    #[test]
    fn shannon_examples() {
        let h = shannon(&Simplex::uniform(200)).value;
        assert!((h - ln(200.0)).abs() < 1e-12);
        assert!((h - 5.2983).abs() < 1e-4);
        assert_eq!(shannon(&vertex(5)).value, 0.0);
        assert!((shannon(&s(&[0.5, 0.5])).value - core::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn simpson_examples() {
        assert!((simpson(&Simplex::uniform(200)).value - 0.005).abs() < 1e-15);
        assert_eq!(simpson(&vertex(7)).value, 1.0);
        assert!((simpson(&s(&[0.5, 0.3, 0.2])).value - 0.38).abs() < 1e-15);
    }

    #[test]
    fn similarity_examples() {
        let p = s(&[0.2, 0.3, 0.5]);
        assert_eq!(pma(&p, &p).unwrap().value, 1.0);
        assert_eq!(euclidean_similarity(&p, &p).unwrap().value, 1.0);
        let a = s(&[1.0, 0.0]);
        let b = s(&[0.0, 1.0]);
        assert_eq!(pma(&a, &b).unwrap().value, 0.0);
        assert_eq!(euclidean_similarity(&a, &b).unwrap().value, -1.0);
        let a = s(&[0.6, 0.4]);
        let b = s(&[0.5, 0.5]);
        assert!((pma(&a, &b).unwrap().value - 0.9).abs() < 1e-15);
        assert!((euclidean_similarity(&a, &b).unwrap().value - 0.98).abs() < 1e-15);
    }

    #[test]
    fn dimension_mismatch() {
        let a = Simplex::uniform(3);
        let b = Simplex::uniform(4);
        assert_eq!(
            pma(&a, &b),
            Err(Error::DimensionMismatch { left: 3, right: 4 })
        );
        assert!(euclidean_similarity(&a, &b).is_err());
    }

    fn simplex_strategy(k: core::ops::Range<usize>) -> impl Strategy<Value = Simplex> {
        prop::collection::vec(prop_oneof![1 => Just(0.0), 4 => 0.0f64..10.0], k)
            .prop_filter("non-zero", |w| w.iter().sum::<f64>() > 0.0)
            .prop_map(|w| {
                let t: f64 = w.iter().sum();
                Simplex::new(w.iter().map(|v| v / t).collect()).unwrap()
            })
    }

    fn pair_strategy() -> impl Strategy<Value = (Simplex, Simplex)> {
        (2usize..40).prop_flat_map(|k| (simplex_strategy(k..k + 1), simplex_strategy(k..k + 1)))
    }

    proptest! {
        #[test]
        fn ranges_hold(p in simplex_strategy(2..300)) {
            let k = p.k();
            let h = shannon(&p).value;
            let d = simpson(&p).value;
            let (hl, hu) = IndexKind::Shannon.range(k);
            let (dl, du) = IndexKind::Simpson.range(k);
            prop_assert!(h >= hl - 1e-12 && h <= hu + 1e-12);
            prop_assert!(d >= dl - 1e-12 && d <= du + 1e-12);
        }

        #[test]
        fn permutation_invariance(p in simplex_strategy(2..50), rot in 0usize..50) {
            let mut v = p.values().to_vec();
            let r = rot % v.len();
            v.rotate_left(r);
            let q = Simplex::new(v).unwrap();
            prop_assert!((shannon(&p).value - shannon(&q).value).abs() < 1e-12);
            prop_assert!((simpson(&p).value - simpson(&q).value).abs() < 1e-12);
        }

        #[test]
        fn similarity_symmetric_and_bounded((a, b) in pair_strategy()) {
            let i_ab = pma(&a, &b).unwrap().value;
            let e_ab = euclidean_similarity(&a, &b).unwrap().value;
            prop_assert_eq!(i_ab, pma(&b, &a).unwrap().value);
            prop_assert_eq!(e_ab, euclidean_similarity(&b, &a).unwrap().value);
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&i_ab));
            prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&e_ab));
            // Σ d² ≤ (Σ|d|)·max|d| ≤ Σ|d|, so E ≥ 1 − 2(1 − I)
            prop_assert!(e_ab >= 1.0 - 2.0 * (1.0 - i_ab) - 1e-12);
            if a != b {
                prop_assert!(i_ab < 1.0 && e_ab < 1.0);
            }
        }
    }
}
