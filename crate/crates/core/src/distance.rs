//! Weighted global alignment distance between pronunciations and phrases.
//!
//! Distances are raw summed costs, not length-normalized, so thresholds such
//! as 0 ("sounds identical") and 1 keep their meaning across name lengths.

use crate::cost::CostMatrix;
use crate::dict::{phonemize_phrase, Dictionary};
use crate::error::Result;
use crate::phoneme::{Phoneme, Pronunciation};
use crate::scalar::Scalar;

/// Exact minimum-cost global alignment, `O(|a|·|b|)` time and `O(|b|)` space.
pub fn weighted_distance<T: Scalar>(a: &[Phoneme], b: &[Phoneme], m: &CostMatrix<T>) -> T {
    let mut prev: Vec<T> = Vec::with_capacity(b.len() + 1);
    prev.push(T::zero());
    for &pb in b {
        let last = *prev.last().unwrap();
        prev.push(last + m.insertion(pb));
    }
    let mut cur = vec![T::zero(); b.len() + 1];
    for &pa in a {
        cur[0] = prev[0] + m.deletion(pa);
        for (j, &pb) in b.iter().enumerate() {
            let diag = prev[j] + m.substitution(pa, pb);
            let up = prev[j + 1] + m.deletion(pa);
            let left = cur[j] + m.insertion(pb);
            cur[j + 1] = diag.min_of(up).min_of(left);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Length-difference lower bound on any alignment cost.
pub fn length_lower_bound<T: Scalar>(a: usize, b: usize, m: &CostMatrix<T>) -> T {
    T::from_count(a.abs_diff(b) as u64) * m.min_indel()
}

/// Distance if it is at most `bound`, otherwise `None`.
///
/// Returns early when the length gap alone exceeds the bound, restricts the
/// table to cells whose cheapest completion stays within the bound, and stops
/// once a whole row exceeds it. Agrees exactly with [`weighted_distance`]
/// whenever the true distance is within the bound.
pub fn banded_distance_at_most<T: Scalar>(
    a: &[Phoneme],
    b: &[Phoneme],
    m: &CostMatrix<T>,
    bound: T,
) -> Option<T> {
    let (n, k) = (a.len(), b.len());
    if length_lower_bound(n, k, m) > bound {
        return None;
    }
    let min_indel = m.min_indel();
    // Outside |i - j| <= band every path pays more than `bound` in indels.
    let band = if min_indel > T::zero() {
        let mut w = 0usize;
        while w < n + k {
            let next = T::from_count(w as u64 + 1);
            if next * min_indel > bound {
                break;
            }
            w += 1;
        }
        w
    } else {
        n + k
    };
    let diag_offset = k as isize - n as isize;
    // Lower bound on indels still needed from (i, j) plus those already paid.
    let reachable = |i: usize, j: usize| -> bool {
        let off = j as isize - i as isize;
        let needed = off.unsigned_abs() + (diag_offset - off).unsigned_abs();
        needed <= band
    };

    let mut prev: Vec<Option<T>> = vec![None; k + 1];
    prev[0] = Some(T::zero());
    for j in 1..=k {
        if !reachable(0, j) {
            break;
        }
        prev[j] = prev[j - 1].map(|c| c + m.insertion(b[j - 1]));
    }
    let mut cur: Vec<Option<T>> = vec![None; k + 1];
    for i in 1..=n {
        let pa = a[i - 1];
        let lo = i.saturating_sub(band);
        let hi = (i + band).min(k);
        cur.iter_mut().for_each(|c| *c = None);
        let mut row_min: Option<T> = None;
        for j in lo..=hi {
            if !reachable(i, j) {
                continue;
            }
            let mut best: Option<T> = prev[j].map(|c| c + m.deletion(pa));
            if j > 0 {
                let pb = b[j - 1];
                let diag = prev[j - 1].map(|c| c + m.substitution(pa, pb));
                best = min_opt(diag, best);
                let left = cur[j - 1].map(|c| c + m.insertion(pb));
                best = min_opt(best, left);
            }
            let best = best.filter(|c| *c <= bound);
            cur[j] = best;
            row_min = min_opt(row_min, best);
        }
        row_min?;
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[k].filter(|c| *c <= bound)
}

// Same preference order as `weighted_distance`: diagonal, then up, then left.
fn min_opt<T: Scalar>(x: Option<T>, y: Option<T>) -> Option<T> {
    match (x, y) {
        (Some(x), Some(y)) => Some(x.min_of(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Closest pronunciations of two phrases and their distance.
#[derive(Debug, Clone, PartialEq)]
pub struct PhraseDistance<T> {
    pub cost: T,
    pub left: Pronunciation,
    pub right: Pronunciation,
}

/// Minimum distance over every pronunciation of `a` against every one of `b`.
/// Ties keep the first pair in phonemization order.
pub fn phrase_distance<T: Scalar>(
    a: &str,
    b: &str,
    dict: &Dictionary,
    m: &CostMatrix<T>,
) -> Result<PhraseDistance<T>> {
    let left = phonemize_phrase(a, dict)?;
    let right = phonemize_phrase(b, dict)?;
    Ok(closest_pair(&left, &right, m))
}

/// Minimum over the cross product of two pronunciation sets (both non-empty).
pub fn closest_pair<T: Scalar>(
    left: &[Pronunciation],
    right: &[Pronunciation],
    m: &CostMatrix<T>,
) -> PhraseDistance<T> {
    let mut best: Option<PhraseDistance<T>> = None;
    for l in left {
        for r in right {
            let cost = weighted_distance(l.phonemes(), r.phonemes(), m);
            if best.as_ref().is_none_or(|b| cost < b.cost) {
                best = Some(PhraseDistance {
                    cost,
                    left: l.clone(),
                    right: r.clone(),
                });
            }
        }
    }
    best.expect("pronunciation sets are non-empty")
}

/// Minimum over the cross product if it is within `bound`.
pub fn closest_within<T: Scalar>(
    left: &[Pronunciation],
    right: &[Pronunciation],
    m: &CostMatrix<T>,
    bound: T,
) -> Option<T> {
    let mut best: Option<T> = None;
    for l in left {
        for r in right {
            let limit = best.map_or(bound, |b| b.min_of(bound));
            if let Some(c) = banded_distance_at_most(l.phonemes(), r.phonemes(), m, limit) {
                best = Some(best.map_or(c, |b| b.min_of(c)));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::{accumulate, build_matrix};
    use crate::dict::{parse_dictionary, ParseMode};
    use Phoneme::*;

    fn p(s: &str) -> Vec<Phoneme> {
        s.parse::<Pronunciation>().unwrap().phonemes().to_vec()
    }

    fn toy_matrix() -> CostMatrix<f64> {
        let pairs: Vec<_> = [
            ("T AH M EY T OW", "T AH M AA T OW"),
            ("F AE K T S", "F AE K S"),
            ("W AH N", "W AA N"),
        ]
        .iter()
        .map(|(a, b)| (a.parse().unwrap(), b.parse().unwrap()))
        .collect();
        build_matrix(&accumulate(&pairs).unwrap())
    }

    #[test]
    fn identical_is_zero() {
        let m = toy_matrix();
        let s = p("K AE T F AE K S");
        assert_eq!(weighted_distance(&s, &s, &m), 0.0);
        assert_eq!(banded_distance_at_most(&s, &s, &m, 0.0), Some(0.0));
    }

    #[test]
    fn single_insertion() {
        let m = toy_matrix();
        let d = weighted_distance(&p("K AE T F AE K S"), &p("K AE T F AE K T S"), &m);
        assert_eq!(d, m.insertion(T));
    }

    #[test]
    fn uniform_matrix_is_levenshtein() {
        let m = CostMatrix::<u32>::uniform();
        assert_eq!(weighted_distance(&p("K AE T"), &p("K AA T S"), &m), 2);
        assert_eq!(weighted_distance(&[K], &[], &m), 1);
        assert_eq!(weighted_distance(&[], &[], &m), 0);
    }

    #[test]
    fn length_gap_prunes_without_dp() {
        let m = CostMatrix::<f64>::uniform();
        assert_eq!(banded_distance_at_most(&p("K"), &p("K AE T S"), &m, 2.5), None);
        assert_eq!(banded_distance_at_most(&p("K"), &p("K AE T S"), &m, 3.0), Some(3.0));
    }

    #[test]
    fn phrase_distance_uses_best_variant() {
        let d = parse_dictionary(
            "CAT  K AE1 T\nFAX  F AE1 K S\nFACTS  F AE1 K T S\nFACTS(1)  F AE1 K S\n".as_bytes(),
            ParseMode::Strict,
        )
        .unwrap()
        .dictionary;
        let m = toy_matrix();
        let r = phrase_distance("cat fax", "cat facts", &d, &m).unwrap();
        assert_eq!(r.cost, 0.0);
        assert_eq!(r.right.to_string(), "K AE T F AE K S");
        assert_eq!(phrase_distance("cat fax", "cat fax", &d, &m).unwrap().cost, 0.0);
    }
}
