//! Skill response checking: silence and system-utterance mimicry.

use serde::{Deserialize, Serialize};

use crate::embed::{cosine_relevance, EmbeddingProvider, SentenceVector};
use crate::error::{Error, Result};
use crate::paraphrase::{generate_variants, VariantConfig};
use crate::text;

use super::Blacklist;

/// Default mimicry threshold.
pub const DEFAULT_SRC_THRESHOLD: f64 = 0.8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SrcVerdict {
    Clean { max_sr: f64 },
    Silent,
    Mimicry { max_sr: f64, entry: String },
}

impl SrcVerdict {
    pub fn is_flagged(&self) -> bool {
        !matches!(self, SrcVerdict::Clean { .. })
    }
}

/// Text left after removing markup tags such as `<audio src="..."/>`.
pub fn spoken_text(response: &str) -> String {
    let mut out = String::with_capacity(response.len());
    let mut depth = 0usize;
    for c in response.chars() {
        match c {
            '<' => depth += 1,
            '>' if depth > 0 => depth -= 1,
            _ if depth == 0 => out.push(c),
            _ => {}
        }
    }
    out
}

/// Empty, whitespace, or markup with nothing spoken.
pub fn is_silent(response: &str) -> bool {
    spoken_text(response).trim().is_empty()
}

fn check_threshold(threshold: f64) -> Result<()> {
    if threshold > 0.0 && threshold <= 1.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("SRC threshold {threshold} outside (0, 1]")))
    }
}

/// Blacklist with pre-embedded entries.
pub struct ResponseChecker<'p, P: ?Sized> {
    provider: &'p P,
    entries: Vec<(String, SentenceVector<f64>)>,
    threshold: f64,
}

impl<'p, P: EmbeddingProvider<f64> + ?Sized> ResponseChecker<'p, P> {
    pub fn new(blacklist: &Blacklist, provider: &'p P, threshold: f64) -> Result<Self> {
        check_threshold(threshold)?;
        let entries = blacklist
            .spoken()
            .map(|e| (e.to_string(), provider.embed(e)))
            .collect();
        Ok(ResponseChecker {
            provider,
            entries,
            threshold,
        })
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// Highest SR of `response` against the spoken blacklist entries.
    pub fn max_relevance(&self, response: &str) -> (f64, Option<&str>) {
        let v = self.provider.embed(&spoken_text(response));
        self.max_relevance_of(&v)
    }

    pub fn max_relevance_of(&self, v: &SentenceVector<f64>) -> (f64, Option<&str>) {
        let mut best = (0.0, None);
        for (entry, e) in &self.entries {
            let sr = cosine_relevance(v, e);
            if sr > best.0 {
                best = (sr, Some(entry.as_str()));
            }
        }
        best
    }

    pub fn check(&self, response: &str) -> SrcVerdict {
        if is_silent(response) {
            return SrcVerdict::Silent;
        }
        let (max_sr, entry) = self.max_relevance(response);
        match entry {
            Some(entry) if max_sr > self.threshold => SrcVerdict::Mimicry {
                max_sr,
                entry: entry.to_string(),
            },
            _ => SrcVerdict::Clean { max_sr },
        }
    }
}

/// One-shot response check.
pub fn src_check<P: EmbeddingProvider<f64> + ?Sized>(
    response: &str,
    blacklist: &Blacklist,
    provider: &P,
    threshold: f64,
) -> Result<SrcVerdict> {
    Ok(ResponseChecker::new(blacklist, provider, threshold)?.check(response))
}

/// Rewrites used to imitate a blacklisted response without repeating it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResponseParaphraseConfig {
    #[serde(flatten)]
    pub variants: VariantConfig,
    /// Word replacements applied one at a time.
    #[serde(default)]
    pub synonyms: Vec<(String, String)>,
}

/// (original, paraphrase) pairs for every spoken blacklist entry: framing
/// words from `cfg.variants` and single synonym swaps.
pub fn paraphrase_blacklist(
    blacklist: &Blacklist,
    cfg: &ResponseParaphraseConfig,
) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for entry in blacklist.spoken() {
        for v in generate_variants(entry, &cfg.variants) {
            out.push((entry.to_string(), v.text));
        }
        let words = text::words(entry);
        for (from, to) in &cfg.synonyms {
            for (i, w) in words.iter().enumerate() {
                if w == from {
                    let mut swapped = words.clone();
                    swapped[i] = to.clone();
                    out.push((entry.to_string(), swapped.join(" ")));
                }
            }
        }
    }
    out
}

/// Separation between legitimate responses and blacklist paraphrases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    /// Highest SR of any legitimate response against the blacklist.
    pub legit_max: f64,
    pub legit_worst: String,
    /// Lowest blacklist SR of any paraphrase, scored as the checker would
    /// score it as a response (max over all entries).
    pub paraphrase_min: f64,
    pub paraphrase_worst: String,
}

impl Calibration {
    pub fn separates(&self) -> bool {
        self.legit_max < self.paraphrase_min
    }

    /// Midpoint of the gap.
    pub fn suggested_threshold(&self) -> f64 {
        (self.legit_max + self.paraphrase_min) / 2.0
    }

    /// Errors unless `threshold` lies in `[legit_max, paraphrase_min)`.
    ///
    /// A response is flagged when its SR strictly exceeds the threshold, so
    /// a threshold equal to `legit_max` still passes every legitimate response.
    pub fn validate(&self, threshold: f64) -> Result<()> {
        if !self.separates() {
            return Err(Error::Config(format!(
                "provider cannot separate responses: legitimate max SR {:.4} (`{}`) >= paraphrase min SR {:.4} (`{}`)",
                self.legit_max, self.legit_worst, self.paraphrase_min, self.paraphrase_worst
            )));
        }
        if threshold < self.legit_max || threshold >= self.paraphrase_min {
            return Err(Error::Config(format!(
                "SRC threshold {threshold} outside calibrated gap [{:.4}, {:.4})",
                self.legit_max, self.paraphrase_min
            )));
        }
        Ok(())
    }
}

pub fn calibrate<P: EmbeddingProvider<f64> + ?Sized, S: AsRef<str>>(
    legitimate: &[S],
    blacklist: &Blacklist,
    paraphrases: &[(String, String)],
    provider: &P,
) -> Result<Calibration> {
    if legitimate.is_empty() || paraphrases.is_empty() {
        return Err(Error::Config("calibration needs legitimate responses and paraphrases".into()));
    }
    // The threshold only needs to be valid for the embedding, not in (0, 1].
    let checker = ResponseChecker {
        provider,
        entries: blacklist
            .spoken()
            .map(|e| (e.to_string(), provider.embed(e)))
            .collect(),
        threshold: 1.0,
    };
    let mut legit_max = f64::NEG_INFINITY;
    let mut legit_worst = String::new();
    for r in legitimate {
        let (sr, _) = checker.max_relevance(r.as_ref());
        if sr > legit_max {
            legit_max = sr;
            legit_worst = r.as_ref().to_string();
        }
    }
    let mut paraphrase_min = f64::INFINITY;
    let mut paraphrase_worst = String::new();
    for (_, para) in paraphrases {
        let (sr, _) = checker.max_relevance(para);
        if sr < paraphrase_min {
            paraphrase_min = sr;
            paraphrase_worst = para.clone();
        }
    }
    Ok(Calibration {
        legit_max,
        legit_worst,
        paraphrase_min,
        paraphrase_worst,
    })
}
