//! Competitive invocation name (CIN) scan over a skill catalog.
//!
//! Every unordered pair of skills gets at most one relation, checked in this
//! order:
//!
//! 1. `same-spelling`: normalized invocation names are equal;
//! 2. `phonetic`: the phrase distance is within the threshold;
//! 3. `paraphrase`: one name sounds within the threshold of a trigger-phrase
//!    paraphrase of the other. Reported only on the longer, attacker-side
//!    name.
//!
//! Symmetric relations are reported on both skills. Pruning never changes
//! the result: phonetic checks run the banded distance, and paraphrase
//! checks first require the target's pronunciation to occur, within the
//! threshold, as a substring of the candidate's, which is a lower bound on
//! its distance to any prefix+target+suffix form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::SkillRecord;
use crate::cost::CostMatrix;
use crate::dict::{phonemize_phrase, Dictionary};
use crate::distance::closest_within;
use crate::error::Error;
use crate::paraphrase::{paraphrase_forms, VariantConfig};
use crate::phoneme::{Phoneme, Pronunciation};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    SameSpelling,
    Phonetic,
    Paraphrase,
}

/// One skill's competitive name: `competitor_id` can capture invocations
/// meant for `skill_id`, or for paraphrase findings, `skill_id` extends
/// `competitor_id`'s name with trigger words.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CinFinding {
    pub skill_id: String,
    pub competitor_id: String,
    pub relation: Relation,
    pub cost: f64,
}

/// Skills with at least one CIN under some relation filter, and how many.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ColumnStats {
    pub skills: usize,
    /// `skills` as a fraction of scanned skills.
    pub share: f64,
    /// Mean CINs per affected skill.
    pub avg: f64,
    pub max: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExcludedSkill {
    pub id: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub threshold: f64,
    pub skills: usize,
    pub scanned: usize,
    pub unique_invocation_names: usize,
    pub excluded: Vec<ExcludedSkill>,
    /// Any relation.
    pub all: ColumnStats,
    pub excluding_same_spelling: ColumnStats,
    pub by_paraphrase: ColumnStats,
    pub by_relation: BTreeMap<Relation, ColumnStats>,
    pub findings: Vec<CinFinding>,
}

impl ScanReport {
    pub fn is_partial(&self) -> bool {
        !self.excluded.is_empty()
    }

    pub fn has_findings(&self) -> bool {
        !self.findings.is_empty()
    }

    /// Plain-text summary table.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "threshold {}  skills {}  scanned {}  unique names {}  excluded {}",
            self.threshold,
            self.skills,
            self.scanned,
            self.unique_invocation_names,
            self.excluded.len()
        )
        .unwrap();
        writeln!(out, "{:<26} {:>14} {:>8} {:>6}", "column", "count", "avg", "max").unwrap();
        let rows = [
            ("has CIN", &self.all),
            ("excluding same spelling", &self.excluding_same_spelling),
            ("by paraphrasing", &self.by_paraphrase),
        ];
        for (label, c) in rows {
            writeln!(
                out,
                "{:<26} {:>6} ({:>4.1}%) {:>8.2} {:>6}",
                label,
                c.skills,
                c.share * 100.0,
                c.avg,
                c.max
            )
            .unwrap();
        }
        out
    }
}

struct Prepared {
    index: usize,
    name: String,
    prons: Vec<Pronunciation>,
    forms: Vec<Vec<Pronunciation>>,
}

/// Scans all skill pairs.
///
/// Skills whose names cannot be phonemized are logged and listed in
/// `excluded`; the rest are scanned.
pub fn scan<T: Scalar>(
    catalog: &[SkillRecord],
    dict: &Dictionary,
    m: &CostMatrix<T>,
    cfg: &VariantConfig,
    threshold: T,
) -> ScanReport {
    let prepared: Vec<Result<Prepared, ExcludedSkill>> = catalog
        .par_iter()
        .enumerate()
        .map(|(index, rec)| prepare(index, rec, dict, cfg))
        .collect();
    let mut excluded = Vec::new();
    let mut skills = Vec::new();
    for p in prepared {
        match p {
            Ok(p) => skills.push(p),
            Err(e) => {
                log::warn!("skill `{}` excluded from scan: {}", e.id, e.error);
                excluded.push(e);
            }
        }
    }

    let mut raw: Vec<(usize, usize, Relation, T)> = (0..skills.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut local = Vec::new();
            for j in i + 1..skills.len() {
                relate(&skills[i], &skills[j], m, threshold, &mut local);
            }
            local
        })
        .collect();
    raw.sort_by(|a, b| {
        (&catalog[a.0].id, &catalog[a.1].id).cmp(&(&catalog[b.0].id, &catalog[b.1].id))
    });
    let findings: Vec<CinFinding> = raw
        .into_iter()
        .map(|(s, c, relation, cost)| CinFinding {
            skill_id: catalog[s].id.clone(),
            competitor_id: catalog[c].id.clone(),
            relation,
            cost: cost.to_f64().unwrap_or(f64::NAN),
        })
        .collect();

    let scanned = skills.len();
    let column = |keep: &dyn Fn(Relation) -> bool| column_stats(&findings, scanned, keep);
    let mut by_relation = BTreeMap::new();
    for r in [Relation::SameSpelling, Relation::Phonetic, Relation::Paraphrase] {
        by_relation.insert(r, column(&|x| x == r));
    }
    let mut names: Vec<&str> = skills.iter().map(|s| s.name.as_str()).collect();
    names.sort_unstable();
    names.dedup();

    ScanReport {
        threshold: threshold.to_f64().unwrap_or(f64::NAN),
        skills: catalog.len(),
        scanned,
        unique_invocation_names: names.len(),
        excluded,
        all: column(&|_| true),
        excluding_same_spelling: column(&|r| r != Relation::SameSpelling),
        by_paraphrase: column(&|r| r == Relation::Paraphrase),
        by_relation,
        findings,
    }
}

fn prepare(
    index: usize,
    rec: &SkillRecord,
    dict: &Dictionary,
    cfg: &VariantConfig,
) -> Result<Prepared, ExcludedSkill> {
    let fail = |e: Error| ExcludedSkill {
        id: rec.id.clone(),
        error: e.to_string(),
    };
    let name = rec.normalized_name();
    let prons = phonemize_phrase(&name, dict).map_err(fail)?;
    let forms = paraphrase_forms(&name, cfg)
        .iter()
        .map(|f| phonemize_phrase(f, dict))
        .collect::<Result<Vec<_>, _>>()
        .map_err(fail)?;
    Ok(Prepared {
        index,
        name,
        prons,
        forms,
    })
}

fn relate<T: Scalar>(
    a: &Prepared,
    b: &Prepared,
    m: &CostMatrix<T>,
    threshold: T,
    out: &mut Vec<(usize, usize, Relation, T)>,
) {
    if a.name == b.name {
        out.push((a.index, b.index, Relation::SameSpelling, T::zero()));
        out.push((b.index, a.index, Relation::SameSpelling, T::zero()));
        return;
    }
    if let Some(c) = closest_within(&a.prons, &b.prons, m, threshold) {
        out.push((a.index, b.index, Relation::Phonetic, c));
        out.push((b.index, a.index, Relation::Phonetic, c));
        return;
    }
    if let Some(c) = paraphrase_within(a, b, m, threshold) {
        out.push((a.index, b.index, Relation::Paraphrase, c));
    }
    if let Some(c) = paraphrase_within(b, a, m, threshold) {
        out.push((b.index, a.index, Relation::Paraphrase, c));
    }
}

fn paraphrase_within<T: Scalar>(
    candidate: &Prepared,
    target: &Prepared,
    m: &CostMatrix<T>,
    bound: T,
) -> Option<T> {
    let plausible = candidate.prons.iter().any(|c| {
        target
            .prons
            .iter()
            .any(|t| substring_within(t.phonemes(), c.phonemes(), m, bound))
    });
    if !plausible {
        return None;
    }
    let mut best: Option<T> = None;
    for form in &target.forms {
        let limit = best.map_or(bound, |b| b.min_of(bound));
        if let Some(c) = closest_within(&candidate.prons, form, m, limit) {
            best = Some(best.map_or(c, |b| b.min_of(c)));
        }
    }
    best
}

/// Whether some contiguous piece of `text` aligns with all of `pattern` at
/// cost within `bound`.
pub fn substring_within<T: Scalar>(
    pattern: &[Phoneme],
    text: &[Phoneme],
    m: &CostMatrix<T>,
    bound: T,
) -> bool {
    let mut prev = vec![T::zero(); text.len() + 1];
    let mut cur = vec![T::zero(); text.len() + 1];
    for &p in pattern {
        cur[0] = prev[0] + m.insertion(p);
        let mut row_min = cur[0];
        for (j, &t) in text.iter().enumerate() {
            let diag = prev[j] + m.substitution(t, p);
            let up = prev[j + 1] + m.insertion(p);
            let left = cur[j] + m.deletion(t);
            cur[j + 1] = diag.min_of(up).min_of(left);
            row_min = row_min.min_of(cur[j + 1]);
        }
        if row_min > bound {
            return false;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev.iter().any(|&c| c <= bound)
}

fn column_stats(findings: &[CinFinding], scanned: usize, keep: &dyn Fn(Relation) -> bool) -> ColumnStats {
    let mut per_skill: BTreeMap<&str, usize> = BTreeMap::new();
    for f in findings.iter().filter(|f| keep(f.relation)) {
        *per_skill.entry(f.skill_id.as_str()).or_default() += 1;
    }
    let skills = per_skill.len();
    let total: usize = per_skill.values().sum();
    ColumnStats {
        skills,
        share: if scanned == 0 { 0.0 } else { skills as f64 / scanned as f64 },
        avg: if skills == 0 { 0.0 } else { total as f64 / skills as f64 },
        max: per_skill.values().copied().max().unwrap_or(0),
    }
}
