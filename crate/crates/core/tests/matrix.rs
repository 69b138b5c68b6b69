//! The shipped cost matrix and dictionary-derived properties.

mod common;

use common::*;
use skillvet::cost::CostMatrix;
use skillvet::dict::phonemize_phrase;
use skillvet::distance::weighted_distance;

#[test]
fn shipped_matrix_is_a_dissimilarity() {
    let m = shipped_matrix();
    assert!(m.is_symmetric());
    let slots = all_phonemes().into_iter().map(Some).chain([None]);
    for a in slots.clone() {
        for b in slots.clone() {
            let c = m.cost(a, b);
            assert!((0.0..=1.0).contains(&c), "{a:?} {b:?} {c}");
            if a == b {
                assert_eq!(c, 0.0);
            }
        }
    }
    // Every pair of distinct phonemes costs something.
    assert!(m.min_edit() > 0.0);
}

#[test]
fn tsv_round_trip_preserves_every_cell() {
    let m = shipped_matrix();
    let again = CostMatrix::<f64>::from_tsv(&m.to_tsv("round trip")).unwrap();
    assert_eq!(&again, m);
}

#[test]
fn close_sounding_vowels_are_cheaper_than_distant_consonants() {
    let m = shipped_matrix();
    let p = |s: &str| s.parse::<skillvet::Phoneme>().unwrap();
    assert!(m.substitution(p("AH"), p("IH")) < m.substitution(p("K"), p("IY")));
    assert!(m.substitution(p("S"), p("Z")) < m.substitution(p("S"), p("AA")));
}

#[test]
fn homophones_are_at_distance_zero() {
    let d = cmudict();
    let m = shipped_matrix();
    for (a, b) in [("cat", "kat"), ("two", "too"), ("write", "right"), ("night", "knight")] {
        let pa = phonemize_phrase(a, d).unwrap();
        let pb = phonemize_phrase(b, d).unwrap();
        let best = pa
            .iter()
            .flat_map(|x| pb.iter().map(move |y| weighted_distance(x.phonemes(), y.phonemes(), m)))
            .fold(f64::INFINITY, f64::min);
        assert_eq!(best, 0.0, "{a} / {b}");
    }
}
