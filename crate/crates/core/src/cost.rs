//! Weighted phoneme edit costs learned from alternative pronunciations.
//!
//! Every pair of alternative pronunciations is aligned once with unit costs.
//! Along each edit path `F` counts phoneme occurrences (the gap included) and
//! `SF` counts directed substitutions, insertions and deletions. The weighted
//! cost of turning `a` into `b` is
//!
//! ```text
//! WC(a, b) = 1 - (SF(a, b) + SF(b, a)) / (F(a) + F(b))
//! ```
//!
//! so operations that often separate two valid pronunciations of the same
//! word are cheap. Pairs never observed cost 1 and matches cost 0.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::align::{align_uniform, AlignmentOp};
use crate::error::{Error, Result};
use crate::phoneme::{from_slot, slot, slot_symbol, Phoneme, Pronunciation, GAP_SLOT, SLOTS};
use crate::scalar::Scalar;

pub const MATRIX_FORMAT_VERSION: &str = "skillvet-cost-matrix v1";

/// Phoneme and operation counts gathered from edit paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTables {
    freq: [u64; SLOTS],
    subst: Vec<u64>,
    pairs: usize,
}

impl Default for FrequencyTables {
    fn default() -> Self {
        FrequencyTables {
            freq: [0; SLOTS],
            subst: vec![0; SLOTS * SLOTS],
            pairs: 0,
        }
    }
}

impl FrequencyTables {
    /// `F(a)`; `None` is the gap.
    pub fn frequency(&self, a: Option<Phoneme>) -> u64 {
        self.freq[slot(a)]
    }

    /// `SF(a, b)`: how often `a` was replaced by `b` (directed).
    pub fn substitutions(&self, a: Option<Phoneme>, b: Option<Phoneme>) -> u64 {
        self.subst[slot(a) * SLOTS + slot(b)]
    }

    /// Number of pronunciation pairs folded in.
    pub fn pairs(&self) -> usize {
        self.pairs
    }

    pub fn has_substitutions(&self) -> bool {
        self.subst.iter().any(|&c| c > 0)
    }

    /// Folds one edit path into the counts.
    pub fn record_path(&mut self, path: &[AlignmentOp]) {
        for op in path {
            let (a, b) = op.sides();
            self.freq[slot(a)] += 1;
            self.freq[slot(b)] += 1;
            if !matches!(op, AlignmentOp::Match(_)) {
                self.subst[slot(a) * SLOTS + slot(b)] += 1;
            }
        }
        self.pairs += 1;
    }

    pub fn merge(mut self, other: &FrequencyTables) -> Self {
        for (x, y) in self.freq.iter_mut().zip(&other.freq) {
            *x += y;
        }
        for (x, y) in self.subst.iter_mut().zip(&other.subst) {
            *x += y;
        }
        self.pairs += other.pairs;
        self
    }
}

/// Aligns each pair (first → second) once and counts the edit paths.
pub fn accumulate(pairs: &[(Pronunciation, Pronunciation)]) -> Result<FrequencyTables> {
    if pairs.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let tables = pairs
        .par_iter()
        .fold(FrequencyTables::default, |mut t, (a, b)| {
            t.record_path(&align_uniform(a.phonemes(), b.phonemes()));
            t
        })
        .reduce(FrequencyTables::default, |a, b| a.merge(&b));
    Ok(tables)
}

/// Symmetric table of weighted edit costs over phonemes and the gap.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix<T> {
    costs: Vec<T>,
    min_indel: T,
    min_edit: T,
}

impl<T: Scalar> CostMatrix<T> {
    /// Unit costs everywhere off the diagonal (plain Levenshtein).
    pub fn uniform() -> Self {
        Self::from_fn(|a, b| if a == b { T::zero() } else { T::one() })
    }

    /// Builds a matrix from a cost function over slots. The diagonal is forced
    /// to zero and every cost is clamped to `[0, 1]`.
    pub fn from_fn(mut f: impl FnMut(Option<Phoneme>, Option<Phoneme>) -> T) -> Self {
        let mut costs = vec![T::zero(); SLOTS * SLOTS];
        for i in 0..SLOTS {
            for j in 0..SLOTS {
                if i != j {
                    costs[i * SLOTS + j] = f(from_slot(i), from_slot(j)).clamp_unit();
                }
            }
        }
        Self::with_costs(costs)
    }

    fn with_costs(costs: Vec<T>) -> Self {
        let mut min_indel = T::one();
        let mut min_edit = T::one();
        for i in 0..GAP_SLOT {
            min_indel = min_indel
                .min_of(costs[i * SLOTS + GAP_SLOT])
                .min_of(costs[GAP_SLOT * SLOTS + i]);
            for j in 0..SLOTS {
                if i != j {
                    min_edit = min_edit.min_of(costs[i * SLOTS + j]);
                }
            }
        }
        min_edit = min_edit.min_of(min_indel);
        CostMatrix {
            costs,
            min_indel,
            min_edit,
        }
    }

    /// `WC(a, b)`; `None` on one side is an insertion or deletion.
    #[inline]
    pub fn cost(&self, a: Option<Phoneme>, b: Option<Phoneme>) -> T {
        self.costs[slot(a) * SLOTS + slot(b)]
    }

    #[inline]
    pub fn substitution(&self, a: Phoneme, b: Phoneme) -> T {
        self.costs[a.index() * SLOTS + b.index()]
    }

    #[inline]
    pub fn insertion(&self, b: Phoneme) -> T {
        self.costs[GAP_SLOT * SLOTS + b.index()]
    }

    #[inline]
    pub fn deletion(&self, a: Phoneme) -> T {
        self.costs[a.index() * SLOTS + GAP_SLOT]
    }

    /// Cheapest insertion or deletion.
    pub fn min_indel(&self) -> T {
        self.min_indel
    }

    /// Cheapest non-match operation of any kind.
    pub fn min_edit(&self) -> T {
        self.min_edit
    }

    pub fn is_symmetric(&self) -> bool {
        (0..SLOTS).all(|i| (0..SLOTS).all(|j| self.costs[i * SLOTS + j] == self.costs[j * SLOTS + i]))
    }

    /// Converts every cell to another scalar type.
    pub fn convert<U: Scalar>(&self) -> Option<CostMatrix<U>> {
        let costs = self
            .costs
            .iter()
            .map(|c| c.to_f64().and_then(U::from_f64))
            .collect::<Option<Vec<_>>>()?;
        Some(CostMatrix::with_costs(costs))
    }

    fn body_tsv(&self) -> String {
        let mut out = String::new();
        let labels: Vec<&str> = (0..SLOTS).map(|i| slot_symbol(from_slot(i))).collect();
        out.push_str("phoneme");
        for l in &labels {
            out.push('\t');
            out.push_str(l);
        }
        out.push('\n');
        for (i, l) in labels.iter().enumerate() {
            out.push_str(l);
            for j in 0..SLOTS {
                let v = self.costs[i * SLOTS + j].to_f64().unwrap_or(f64::NAN);
                write!(out, "\t{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Versioned TSV: three `#` header lines (format, source, checksum of the
    /// table body) followed by a labelled 40×40 table. `-` labels the gap.
    pub fn to_tsv(&self, source: &str) -> String {
        let body = self.body_tsv();
        let checksum = hex(&Sha256::digest(body.as_bytes()));
        let source = source.replace(['\n', '\r'], " ");
        format!("# {MATRIX_FORMAT_VERSION}\n# source: {source}\n# sha256: {checksum}\n{body}")
    }

    pub fn from_tsv(text: &str) -> Result<Self> {
        let bad = |m: String| Error::Matrix(m);
        let mut lines = text.split_inclusive('\n');
        let version = lines.next().unwrap_or_default().trim_end();
        if version != format!("# {MATRIX_FORMAT_VERSION}") {
            return Err(bad(format!("unsupported header `{version}`")));
        }
        let _source = lines.next();
        let checksum_line = lines.next().unwrap_or_default().trim_end();
        let expected = checksum_line
            .strip_prefix("# sha256: ")
            .ok_or_else(|| bad("missing checksum line".into()))?;
        let body: String = lines.collect();
        let actual = hex(&Sha256::digest(body.as_bytes()));
        if actual != expected {
            return Err(bad(format!("checksum mismatch: header {expected}, body {actual}")));
        }

        let mut rows = body.lines();
        let header: Vec<&str> = rows.next().unwrap_or_default().split('\t').skip(1).collect();
        let mut index = Vec::with_capacity(SLOTS);
        for label in &header {
            index.push(label_slot(label).ok_or_else(|| bad(format!("unknown label `{label}`")))?);
        }
        if index.len() != SLOTS {
            return Err(bad(format!("expected {SLOTS} columns, got {}", index.len())));
        }
        let mut costs = vec![T::zero(); SLOTS * SLOTS];
        let mut seen = [false; SLOTS];
        for row in rows.filter(|r| !r.is_empty()) {
            let mut cells = row.split('\t');
            let label = cells.next().unwrap_or_default();
            let i = label_slot(label).ok_or_else(|| bad(format!("unknown row `{label}`")))?;
            seen[i] = true;
            for (k, cell) in cells.enumerate() {
                let j = *index.get(k).ok_or_else(|| bad(format!("row `{label}` too long")))?;
                let v: f64 = cell
                    .parse()
                    .map_err(|_| bad(format!("bad cell `{cell}` in row `{label}`")))?;
                if !(0.0..=1.0).contains(&v) {
                    return Err(bad(format!("cost {v} outside [0,1] in row `{label}`")));
                }
                costs[i * SLOTS + j] =
                    T::from_f64(v).ok_or_else(|| bad(format!("cell `{cell}` not representable")))?;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(bad("missing rows".into()));
        }
        Ok(Self::with_costs(costs))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_tsv(&text)
    }
}

fn label_slot(label: &str) -> Option<usize> {
    if label == "-" {
        Some(GAP_SLOT)
    } else {
        Phoneme::from_symbol(label).map(Phoneme::index)
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::with_capacity(bytes.len() * 2), |mut s, b| {
        write!(s, "{b:02x}").unwrap();
        s
    })
}

/// Applies the weighted-cost formula to every slot pair.
///
/// Pairs with no observed operation in either direction cost 1; the diagonal
/// is 0 and the result is clamped to `[0, 1]`.
pub fn build_matrix<T: Scalar>(tables: &FrequencyTables) -> CostMatrix<T> {
    CostMatrix::from_fn(|a, b| {
        let shared = tables.substitutions(a, b) + tables.substitutions(b, a);
        let total = tables.frequency(a) + tables.frequency(b);
        if shared == 0 || total == 0 {
            T::one()
        } else {
            T::one() - T::from_count(shared) / T::from_count(total)
        }
    })
}
