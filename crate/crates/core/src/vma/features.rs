//! Sentence-relevance features of a user utterance.
//!
//! | index | feature |
//! |-------|---------|
//! | 0 | max SR against system commands |
//! | 1 | mean SR against system commands |
//! | 2 | 1 if a catalog invocation name occurs in the utterance |
//! | 3 | SR against the skill's preceding response (0 if none) |
//! | 4..9 | five highest SRs against description sentences, descending, zero-padded |
//! | 9 | mean SR against description sentences |

use serde::{Deserialize, Serialize};

use crate::catalog::SkillRecord;
use crate::embed::{cosine_relevance, EmbeddingProvider, SentenceVector};
use crate::text;

use super::{catalog_names, SystemCommandList};

pub const FEATURE_COUNT: usize = 10;
/// Description sentences kept as individual features.
pub const TOP_K: usize = 5;

pub const FEATURE_NAMES: [&str; FEATURE_COUNT] = [
    "syscmd_max_sr",
    "syscmd_avg_sr",
    "invocation_name",
    "prior_response_sr",
    "desc_top1_sr",
    "desc_top2_sr",
    "desc_top3_sr",
    "desc_top4_sr",
    "desc_top5_sr",
    "desc_avg_sr",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector(pub [f64; FEATURE_COUNT]);

impl FeatureVector {
    pub fn values(&self) -> &[f64; FEATURE_COUNT] {
        &self.0
    }

    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }

    /// SR fields within `[0, 1]`, indicator in `{0, 1}`, top-k descending.
    pub fn is_well_formed(&self) -> bool {
        let v = &self.0;
        let unit = v.iter().all(|x| (0.0..=1.0).contains(x));
        let indicator = v[2] == 0.0 || v[2] == 1.0;
        let sorted = v[4..4 + TOP_K].windows(2).all(|w| w[0] >= w[1]);
        unit && indicator && sorted
    }
}

/// Pre-embedded system commands and catalog names.
pub struct FeatureExtractor<'p, P: ?Sized> {
    provider: &'p P,
    commands: Vec<SentenceVector<f64>>,
    names: Vec<Vec<String>>,
}

impl<'p, P: EmbeddingProvider<f64> + ?Sized> FeatureExtractor<'p, P> {
    pub fn new(provider: &'p P, syscmds: &SystemCommandList, catalog: &[SkillRecord]) -> Self {
        FeatureExtractor {
            provider,
            commands: syscmds.entries().iter().map(|c| provider.embed(c)).collect(),
            names: catalog_names(catalog),
        }
    }

    pub fn provider(&self) -> &'p P {
        self.provider
    }

    /// Whether any catalog invocation name occurs as whole words in `utterance`.
    pub fn mentions_invocation_name(&self, utterance: &str) -> bool {
        let words = text::words(utterance);
        self.names.iter().any(|n| text::contains_words(&words, n))
    }

    pub fn extract(
        &self,
        utterance: &str,
        prior_response: Option<&str>,
        skill: &SkillRecord,
    ) -> FeatureVector {
        let description: Vec<SentenceVector<f64>> =
            skill.description.iter().map(|s| self.provider.embed(s)).collect();
        let prior = prior_response.map(|r| self.provider.embed(r));
        let u = self.provider.embed(utterance);
        self.extract_embedded(&u, utterance, prior.as_ref(), &description)
    }

    /// Same as [`extract`](Self::extract) with embeddings already computed.
    pub fn extract_embedded(
        &self,
        utterance_vec: &SentenceVector<f64>,
        utterance: &str,
        prior: Option<&SentenceVector<f64>>,
        description: &[SentenceVector<f64>],
    ) -> FeatureVector {
        let mut f = [0.0; FEATURE_COUNT];

        let (max, sum) = self.commands.iter().fold((0.0f64, 0.0), |(m, s), c| {
            let sr = cosine_relevance(utterance_vec, c);
            (m.max(sr), s + sr)
        });
        f[0] = max;
        f[1] = if self.commands.is_empty() { 0.0 } else { (sum / self.commands.len() as f64).min(1.0) };
        f[2] = if self.mentions_invocation_name(utterance) { 1.0 } else { 0.0 };
        f[3] = prior.map_or(0.0, |p| cosine_relevance(utterance_vec, p));

        let mut desc: Vec<f64> = description
            .iter()
            .map(|d| cosine_relevance(utterance_vec, d))
            .collect();
        desc.sort_by(|a, b| b.total_cmp(a));
        for (slot, sr) in f[4..4 + TOP_K].iter_mut().zip(&desc) {
            *slot = *sr;
        }
        f[9] = if desc.is_empty() {
            0.0
        } else {
            (desc.iter().sum::<f64>() / desc.len() as f64).min(1.0)
        };
        FeatureVector(f)
    }
}

/// One-shot feature extraction.
pub fn extract_features<P: EmbeddingProvider<f64> + ?Sized>(
    utterance: &str,
    prior_response: Option<&str>,
    skill: &SkillRecord,
    syscmds: &SystemCommandList,
    catalog: &[SkillRecord],
    provider: &P,
) -> FeatureVector {
    FeatureExtractor::new(provider, syscmds, catalog).extract(utterance, prior_response, skill)
}
