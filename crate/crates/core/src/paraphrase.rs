//! Invocation-name variants an attacker could register.
//!
//! Two families: trigger-phrase paraphrases ("my", "the", "please", ...)
//! wrapped around the name, and single-word substitutions by words that
//! sound alike ("capital one" → "capital won").

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cost::CostMatrix;
use crate::dict::{phonemize_phrase, Dictionary};
use crate::distance::closest_within;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::text;

pub const DEFAULT_PREFIXES: [&str; 11] = [
    "my", "the", "some", "a", "me a", "me the", "tell me a", "play some", "open the", "start my",
    "mai",
];
pub const DEFAULT_SUFFIXES: [&str; 6] = ["please", "app", "skill", "for me", "plese", "to"];

/// Trigger-phrase words placed before and after an invocation name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawVariantConfig")]
pub struct VariantConfig {
    prefixes: Vec<String>,
    suffixes: Vec<String>,
}

#[derive(Deserialize)]
struct RawVariantConfig {
    #[serde(default = "default_prefixes")]
    prefixes: Vec<String>,
    #[serde(default = "default_suffixes")]
    suffixes: Vec<String>,
}

fn default_prefixes() -> Vec<String> {
    DEFAULT_PREFIXES.iter().map(|s| s.to_string()).collect()
}

fn default_suffixes() -> Vec<String> {
    DEFAULT_SUFFIXES.iter().map(|s| s.to_string()).collect()
}

impl TryFrom<RawVariantConfig> for VariantConfig {
    type Error = Error;

    fn try_from(raw: RawVariantConfig) -> Result<Self> {
        VariantConfig::new(raw.prefixes, raw.suffixes)
    }
}

impl Default for VariantConfig {
    fn default() -> Self {
        VariantConfig {
            prefixes: default_prefixes(),
            suffixes: default_suffixes(),
        }
    }
}

impl VariantConfig {
    /// Normalizes every entry; an entry that normalizes to nothing is an error.
    pub fn new<S: AsRef<str>>(
        prefixes: impl IntoIterator<Item = S>,
        suffixes: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let clean = |items: Vec<S>| -> Result<Vec<String>> {
            items
                .into_iter()
                .map(|s| {
                    let n = text::normalize(s.as_ref());
                    if n.is_empty() {
                        Err(Error::Config(format!(
                            "empty prefix/suffix entry `{}`",
                            s.as_ref()
                        )))
                    } else {
                        Ok(n)
                    }
                })
                .collect()
        };
        Ok(VariantConfig {
            prefixes: clean(prefixes.into_iter().collect())?,
            suffixes: clean(suffixes.into_iter().collect())?,
        })
    }

    pub fn empty() -> Self {
        VariantConfig {
            prefixes: Vec::new(),
            suffixes: Vec::new(),
        }
    }

    pub fn prefixes(&self) -> &[String] {
        &self.prefixes
    }

    pub fn suffixes(&self) -> &[String] {
        &self.suffixes
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantKind {
    Prefix,
    Suffix,
    Both,
    Homophone,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variant {
    pub text: String,
    pub kind: VariantKind,
    pub source: String,
}

/// Prefix, suffix and prefix+suffix forms of `name`, in that order, each in
/// configuration order. Duplicates and the bare name itself are dropped.
pub fn generate_variants(name: &str, cfg: &VariantConfig) -> Vec<Variant> {
    let base = text::normalize(name);
    let mut seen = BTreeSet::new();
    seen.insert(base.clone());
    let mut out = Vec::new();
    let mut push = |text: String, kind: VariantKind| {
        if seen.insert(text.clone()) {
            out.push(Variant {
                text,
                kind,
                source: base.clone(),
            });
        }
    };
    for p in &cfg.prefixes {
        push(format!("{p} {base}"), VariantKind::Prefix);
    }
    for s in &cfg.suffixes {
        push(format!("{base} {s}"), VariantKind::Suffix);
    }
    for p in &cfg.prefixes {
        for s in &cfg.suffixes {
            push(format!("{p} {base} {s}"), VariantKind::Both);
        }
    }
    out
}

/// Texts a squatter's name may sound like to hijack `target`: every
/// generated variant plus the forms left when the user's trigger phrase
/// swallows the leading words of a multi-word prefix ("tell" + "me a dog
/// fact" targets "dog fact" through the prefix "tell me a").
pub fn paraphrase_forms(target: &str, cfg: &VariantConfig) -> Vec<String> {
    let base = text::normalize(target);
    let mut seen: BTreeSet<String> = BTreeSet::new();
    seen.insert(base.clone());
    let mut forms: Vec<String> = generate_variants(target, cfg)
        .into_iter()
        .map(|v| v.text)
        .inspect(|t| {
            seen.insert(t.clone());
        })
        .collect();
    for p in &cfg.prefixes {
        let words: Vec<&str> = p.split(' ').collect();
        for start in 1..words.len() {
            let tail = words[start..].join(" ");
            let mut add = |t: String| {
                if seen.insert(t.clone()) {
                    forms.push(t);
                }
            };
            add(format!("{tail} {base}"));
            for s in &cfg.suffixes {
                add(format!("{tail} {base} {s}"));
            }
        }
    }
    forms
}

/// Whether `candidate` sounds within `bound` of some paraphrase form of `target`.
pub fn paraphrase_match<T: Scalar>(
    candidate: &str,
    target: &str,
    cfg: &VariantConfig,
    dict: &Dictionary,
    m: &CostMatrix<T>,
    bound: T,
) -> Result<bool> {
    Ok(paraphrase_cost(candidate, target, cfg, dict, m, bound)?.is_some())
}

/// Smallest distance from `candidate` to a paraphrase form of `target`, if
/// within `bound`. A candidate spelled exactly like the target is not a
/// paraphrase of it.
pub fn paraphrase_cost<T: Scalar>(
    candidate: &str,
    target: &str,
    cfg: &VariantConfig,
    dict: &Dictionary,
    m: &CostMatrix<T>,
    bound: T,
) -> Result<Option<T>> {
    if text::normalize(candidate) == text::normalize(target) {
        return Ok(None);
    }
    let cand = phonemize_phrase(candidate, dict)?;
    let mut best: Option<T> = None;
    for form in paraphrase_forms(target, cfg) {
        let prons = phonemize_phrase(&form, dict)?;
        let limit = best.map_or(bound, |b| b.min_of(bound));
        if let Some(c) = closest_within(&cand, &prons, m, limit) {
            best = Some(best.map_or(c, |b| b.min_of(c)));
        }
    }
    Ok(best)
}

/// Single-word substitutions of `name` by lexicon words that sound within
/// `bound` of the replaced word. Identical spellings are skipped; output is
/// ordered by word position, then candidate word.
pub fn homophone_variants<T: Scalar, S: AsRef<str>>(
    name: &str,
    lexicon: &[S],
    dict: &Dictionary,
    m: &CostMatrix<T>,
    bound: T,
) -> Result<Vec<Variant>> {
    let words = text::words(name);
    if words.is_empty() {
        return Err(Error::EmptyPhrase(name.to_string()));
    }
    let base = words.join(" ");
    let candidates: BTreeSet<String> = lexicon
        .iter()
        .flat_map(|w| text::words(w.as_ref()))
        .collect();
    let mut out = Vec::new();
    for (pos, word) in words.iter().enumerate() {
        let own = dict.word_pronunciations(word)?;
        for cand in &candidates {
            if cand == word {
                continue;
            }
            let Ok(theirs) = dict.word_pronunciations(cand) else {
                continue;
            };
            if closest_within(&own, &theirs, m, bound).is_some() {
                let mut replaced = words.clone();
                replaced[pos] = cand.clone();
                out.push(Variant {
                    text: replaced.join(" "),
                    kind: VariantKind::Homophone,
                    source: base.clone(),
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dict::{parse_dictionary, ParseMode};

    fn texts(v: &[Variant]) -> Vec<&str> {
        v.iter().map(|v| v.text.as_str()).collect()
    }

    fn dict(text: &str) -> Dictionary {
        parse_dictionary(text.as_bytes(), ParseMode::Strict)
            .unwrap()
            .dictionary
    }

    #[test]
    fn default_config_counts() {
        let cfg = VariantConfig::default();
        assert_eq!(cfg.prefixes().len(), 11);
        assert_eq!(cfg.suffixes().len(), 6);
    }

    #[test]
    fn variants_cover_known_squats() {
        let cfg = VariantConfig::default();
        let v = generate_variants("Sleep Sounds", &cfg);
        assert_eq!(v.len(), 11 + 6 + 66);
        assert!(texts(&v).contains(&"sleep sounds please"));
        assert!(texts(&generate_variants("cat facts", &cfg)).contains(&"my cat facts"));
        assert_eq!(v[0].kind, VariantKind::Prefix);
        assert_eq!(v[11].kind, VariantKind::Suffix);
        assert_eq!(v[17].kind, VariantKind::Both);
        assert!(v.iter().all(|x| x.source == "sleep sounds"));
    }

    #[test]
    fn empty_config_gives_nothing() {
        assert!(generate_variants("cat facts", &VariantConfig::empty()).is_empty());
    }

    #[test]
    fn duplicates_collapse() {
        let cfg = VariantConfig::new(["my", "My "], ["please"]).unwrap();
        let v = generate_variants("x", &cfg);
        assert_eq!(texts(&v), vec!["my x", "x please", "my x please"]);
    }

    #[test]
    fn config_rejects_blank_entries() {
        assert!(VariantConfig::new(["  "], ["please"]).is_err());
    }

    #[test]
    fn config_deserializes_with_defaults() {
        let cfg: VariantConfig = serde_json::from_str(r#"{"suffixes": ["Please"]}"#).unwrap();
        assert_eq!(cfg.prefixes().len(), 11);
        assert_eq!(cfg.suffixes(), ["please"]);
        assert!(serde_json::from_str::<VariantConfig>(r#"{"prefixes": [""]}"#).is_err());
    }

    #[test]
    fn absorbed_prefix_forms() {
        let cfg = VariantConfig::new(["tell me a"], Vec::<&str>::new()).unwrap();
        let forms = paraphrase_forms("dog fact", &cfg);
        assert_eq!(forms, vec!["tell me a dog fact", "me a dog fact", "a dog fact"]);
    }

    #[test]
    fn homophones_at_zero() {
        let d = dict("CAPITAL  K AE1 P IH0 T AH0 L\nONE  W AH1 N\nWON  W AH1 N\nWON(1)  W AA1 N\nTON  T AH1 N\n");
        let m = CostMatrix::<f64>::uniform();
        let lex = ["won", "ton", "capital", "one"];
        let zero = homophone_variants("capital one", &lex, &d, &m, 0.0).unwrap();
        assert_eq!(texts(&zero), vec!["capital won"]);
        let one = homophone_variants("capital one", &lex, &d, &m, 1.0).unwrap();
        assert_eq!(texts(&one), vec!["capital ton", "capital won"]);
        assert!(zero.iter().all(|v| one.contains(v)));
    }

    #[test]
    fn homophones_none_found() {
        let d = dict("CAT  K AE1 T\nDOG  D AO1 G\n");
        let m = CostMatrix::<f64>::uniform();
        assert!(homophone_variants("cat", &["dog"], &d, &m, 0.0)
            .unwrap()
            .is_empty());
    }
}
