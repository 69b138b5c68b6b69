//! Alignment distance against the exhaustive edit-script oracle.

mod common;

use proptest::prelude::*;

use common::*;
use skillvet::cost::CostMatrix;
use skillvet::distance::{banded_distance_at_most, length_lower_bound, weighted_distance};
use skillvet::phoneme::{from_slot, GAP_SLOT};
use skillvet::Phoneme;

fn phonemes(max: usize) -> impl Strategy<Value = Vec<Phoneme>> {
    prop::collection::vec((0..GAP_SLOT).prop_map(|i| from_slot(i).unwrap()), 0..=max)
}

/// Dyadic costs keep sums exact, so equality below is exact.
fn dyadic_matrix() -> impl Strategy<Value = CostMatrix<f64>> {
    any::<u64>().prop_map(|seed| {
        let mut state = seed | 1;
        CostMatrix::from_fn(|_, _| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            ((state % 32) + 1) as f64 / 32.0
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn dp_equals_brute_force(a in phonemes(6), b in phonemes(6), m in dyadic_matrix()) {
        prop_assert_eq!(weighted_distance(&a, &b, &m), brute_force_distance(&a, &b, &m));
    }

    #[test]
    fn banded_agrees_within_bound(a in phonemes(10), b in phonemes(10), bound in 0.0f64..4.0) {
        let m = shipped_matrix();
        let full = weighted_distance(&a, &b, m);
        match banded_distance_at_most(&a, &b, m, bound) {
            Some(d) => {
                prop_assert!(full <= bound);
                prop_assert!((d - full).abs() < 1e-12);
            }
            None => prop_assert!(full > bound),
        }
    }

    #[test]
    fn symmetric_matrix_gives_symmetric_distance(a in phonemes(8), b in phonemes(8)) {
        let m = shipped_matrix();
        prop_assert!((weighted_distance(&a, &b, m) - weighted_distance(&b, &a, m)).abs() < 1e-12);
    }

    #[test]
    fn identity_and_length_bound(a in phonemes(10), b in phonemes(10)) {
        let m = shipped_matrix();
        prop_assert_eq!(weighted_distance(&a, &a, m), 0.0);
        prop_assert!(length_lower_bound(a.len(), b.len(), m) <= weighted_distance(&a, &b, m) + 1e-12);
    }

    #[test]
    fn uniform_matrix_is_bounded_by_lengths(a in phonemes(10), b in phonemes(10)) {
        let m = CostMatrix::<f64>::uniform();
        let d = weighted_distance(&a, &b, &m);
        prop_assert!(d >= a.len().abs_diff(b.len()) as f64);
        prop_assert!(d <= a.len().max(b.len()) as f64);
    }
}
