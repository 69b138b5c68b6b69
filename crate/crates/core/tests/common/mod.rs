//! Fixtures and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;

use skillvet::catalog::SkillRecord;
use skillvet::cost::CostMatrix;
use skillvet::dict::{phonemize_phrase, Dictionary, ParseMode};
use skillvet::distance::weighted_distance;
use skillvet::paraphrase::{paraphrase_forms, VariantConfig};
use skillvet::phoneme::{from_slot, GAP_SLOT};
use skillvet::scan::Relation;
use skillvet::{Phoneme, Pronunciation, Scalar};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

pub fn cmudict() -> &'static Dictionary {
    static D: OnceLock<Dictionary> = OnceLock::new();
    D.get_or_init(|| Dictionary::load(data("cmudict.dict"), ParseMode::Lenient).unwrap().dictionary)
}

pub fn shipped_matrix() -> &'static CostMatrix<f64> {
    static M: OnceLock<CostMatrix<f64>> = OnceLock::new();
    M.get_or_init(|| CostMatrix::load(data("cost-matrix.tsv")).unwrap())
}

pub fn all_phonemes() -> Vec<Phoneme> {
    (0..GAP_SLOT).map(|i| from_slot(i).unwrap()).collect()
}

pub fn random_phonemes(rng: &mut impl Rng, len: usize) -> Vec<Phoneme> {
    let all = all_phonemes();
    (0..len).map(|_| *all.choose(rng).unwrap()).collect()
}

/// Minimum over every edit script, enumerated without memoization: each
/// script is a sequence of match/substitute, delete and insert steps.
pub fn brute_force_distance<T: Scalar>(a: &[Phoneme], b: &[Phoneme], m: &CostMatrix<T>) -> T {
    match (a.split_first(), b.split_first()) {
        (None, None) => T::zero(),
        (Some((&x, ra)), None) => m.deletion(x) + brute_force_distance(ra, b, m),
        (None, Some((&y, rb))) => m.insertion(y) + brute_force_distance(a, rb, m),
        (Some((&x, ra)), Some((&y, rb))) => {
            let sub = m.substitution(x, y) + brute_force_distance(ra, rb, m);
            let del = m.deletion(x) + brute_force_distance(ra, b, m);
            let ins = m.insertion(y) + brute_force_distance(a, rb, m);
            sub.min_of(del).min_of(ins)
        }
    }
}

/// Lowercase token not found in any real dictionary.
pub fn synthetic_word(rng: &mut impl Rng) -> String {
    const LETTERS: &[u8] = b"bcdfghjklmnpqrstvwxz";
    let mut w = String::from("q");
    for _ in 0..7 {
        w.push(LETTERS[rng.gen_range(0..LETTERS.len())] as char);
    }
    w
}

/// Real dictionary entries for every word the default paraphrase
/// configuration can emit.
pub fn trigger_word_dictionary() -> Dictionary {
    let cfg = VariantConfig::default();
    let words: Vec<String> = cfg
        .prefixes()
        .iter()
        .chain(cfg.suffixes())
        .flat_map(|p| p.split(' ').map(str::to_string).collect::<Vec<_>>())
        .collect();
    let mut d = cmudict().restricted_to(words.iter().map(String::as_str));
    for w in &words {
        if !d.contains(w) {
            // Misspellings such as "plese" have no entry; pin the letter-to-sound output.
            for p in d.word_pronunciations(w).unwrap().into_owned() {
                d.insert(w, p);
            }
        }
    }
    d
}

pub fn pron(p: &[Phoneme]) -> Pronunciation {
    Pronunciation::new(p.to_vec()).unwrap()
}

/// `(skill_id, competitor_id, relation, cost)`, sorted.
pub type Finding = (String, String, Relation, f64);

/// Every pair, full-table distances, no pruning and no parallelism.
pub fn exhaustive_scan(
    catalog: &[SkillRecord],
    dict: &Dictionary,
    m: &CostMatrix<f64>,
    cfg: &VariantConfig,
    threshold: f64,
) -> Vec<Finding> {
    struct Entry<'a> {
        id: &'a str,
        name: String,
        prons: Vec<Pronunciation>,
        forms: Vec<Vec<Pronunciation>>,
    }
    let entries: Vec<Entry> = catalog
        .iter()
        .filter_map(|r| {
            let name = r.normalized_name();
            let prons = phonemize_phrase(&name, dict).ok()?;
            let forms = paraphrase_forms(&name, cfg)
                .iter()
                .map(|f| phonemize_phrase(f, dict))
                .collect::<Result<Vec<_>, _>>()
                .ok()?;
            Some(Entry { id: &r.id, name, prons, forms })
        })
        .collect();
    let min_over = |left: &[Pronunciation], right: &[Pronunciation]| {
        let mut best = f64::INFINITY;
        for l in left {
            for r in right {
                best = best.min(weighted_distance(l.phonemes(), r.phonemes(), m));
            }
        }
        best
    };
    let paraphrase = |cand: &Entry, target: &Entry| {
        target
            .forms
            .iter()
            .map(|f| min_over(&cand.prons, f))
            .fold(f64::INFINITY, f64::min)
    };
    let mut out = Vec::new();
    for (i, a) in entries.iter().enumerate() {
        for b in &entries[i + 1..] {
            if a.name == b.name {
                out.push((a.id.to_string(), b.id.to_string(), Relation::SameSpelling, 0.0));
                out.push((b.id.to_string(), a.id.to_string(), Relation::SameSpelling, 0.0));
                continue;
            }
            let d = min_over(&a.prons, &b.prons);
            if d <= threshold {
                out.push((a.id.to_string(), b.id.to_string(), Relation::Phonetic, d));
                out.push((b.id.to_string(), a.id.to_string(), Relation::Phonetic, d));
                continue;
            }
            let ab = paraphrase(a, b);
            if ab <= threshold {
                out.push((a.id.to_string(), b.id.to_string(), Relation::Paraphrase, ab));
            }
            let ba = paraphrase(b, a);
            if ba <= threshold {
                out.push((b.id.to_string(), a.id.to_string(), Relation::Paraphrase, ba));
            }
        }
    }
    out.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
    out
}

pub fn findings_of(report: &skillvet::scan::ScanReport) -> Vec<Finding> {
    let mut v: Vec<Finding> = report
        .findings
        .iter()
        .map(|f| (f.skill_id.clone(), f.competitor_id.clone(), f.relation, f.cost))
        .collect();
    v.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
    v
}

/// Same ids and relations; costs agree to rounding.
pub fn same_findings(a: &[Finding], b: &[Finding]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| {
            x.0 == y.0 && x.1 == y.1 && x.2 == y.2 && (x.3 - y.3).abs() <= 1e-9
        })
}

/// Catalog of real dictionary words, one to three per name, some wrapped in
/// trigger phrases so every relation occurs.
pub fn word_catalog(rng: &mut impl Rng, size: usize, max_letters: usize) -> Vec<SkillRecord> {
    let mut words: Vec<&str> = cmudict()
        .iter()
        .map(|(w, _)| w)
        .filter(|w| (3..=max_letters).contains(&w.len()) && w.bytes().all(|c| c.is_ascii_lowercase()))
        .collect();
    words.sort_unstable();
    let wrappers = ["my", "the", "please", "app"];
    let mut names: Vec<String> = Vec::with_capacity(size);
    while names.len() < size {
        let roll = rng.gen_range(0..10);
        let name = if roll == 0 && !names.is_empty() {
            let base = names.choose(rng).unwrap().clone();
            let w = wrappers.choose(rng).unwrap();
            if *w == "my" || *w == "the" { format!("{w} {base}") } else { format!("{base} {w}") }
        } else {
            let n = [1, 2, 2, 3][rng.gen_range(0..4)];
            (0..n).map(|_| *words.choose(rng).unwrap()).collect::<Vec<_>>().join(" ")
        };
        names.push(name);
    }
    names
        .into_iter()
        .enumerate()
        .map(|(i, n)| SkillRecord::new(format!("skill-{i:05}"), n))
        .collect()
}
