//! Uniform-cost Needleman-Wunsch alignment with an explicit edit path.

use crate::phoneme::Phoneme;

/// One column of a global alignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlignmentOp {
    Match(Phoneme),
    Substitute(Phoneme, Phoneme),
    /// Phoneme present only in the second sequence.
    Insert(Phoneme),
    /// Phoneme present only in the first sequence.
    Delete(Phoneme),
}

impl AlignmentOp {
    /// The (first, second) sides of the column; `None` is the gap.
    pub fn sides(self) -> (Option<Phoneme>, Option<Phoneme>) {
        match self {
            AlignmentOp::Match(a) => (Some(a), Some(a)),
            AlignmentOp::Substitute(a, b) => (Some(a), Some(b)),
            AlignmentOp::Insert(b) => (None, Some(b)),
            AlignmentOp::Delete(a) => (Some(a), None),
        }
    }

    pub fn cost(self) -> u32 {
        match self {
            AlignmentOp::Match(_) => 0,
            _ => 1,
        }
    }
}

/// Minimum-cost global alignment under unit costs.
///
/// Backtrace ties resolve as match, then substitute, then delete, then
/// insert, so the path is a pure function of the inputs.
pub fn align_uniform(a: &[Phoneme], b: &[Phoneme]) -> Vec<AlignmentOp> {
    let (n, m) = (a.len(), b.len());
    let w = m + 1;
    let mut d = vec![0u32; (n + 1) * w];
    for (j, cell) in d[..w].iter_mut().enumerate() {
        *cell = j as u32;
    }
    for i in 1..=n {
        d[i * w] = i as u32;
        for j in 1..=m {
            let diag = d[(i - 1) * w + j - 1] + u32::from(a[i - 1] != b[j - 1]);
            let up = d[(i - 1) * w + j] + 1;
            let left = d[i * w + j - 1] + 1;
            d[i * w + j] = diag.min(up).min(left);
        }
    }

    let mut ops = Vec::with_capacity(n.max(m));
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        let here = d[i * w + j];
        if i > 0 && j > 0 {
            let diag = d[(i - 1) * w + j - 1];
            if a[i - 1] == b[j - 1] && diag == here {
                ops.push(AlignmentOp::Match(a[i - 1]));
                i -= 1;
                j -= 1;
                continue;
            }
            if a[i - 1] != b[j - 1] && diag + 1 == here {
                ops.push(AlignmentOp::Substitute(a[i - 1], b[j - 1]));
                i -= 1;
                j -= 1;
                continue;
            }
        }
        if i > 0 && d[(i - 1) * w + j] + 1 == here {
            ops.push(AlignmentOp::Delete(a[i - 1]));
            i -= 1;
        } else {
            ops.push(AlignmentOp::Insert(b[j - 1]));
            j -= 1;
        }
    }
    ops.reverse();
    ops
}
