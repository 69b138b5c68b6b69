//! Sentence embeddings and sentence relevance (SR).
//!
//! SR is the absolute cosine similarity of two sentence vectors. Any
//! [`EmbeddingProvider`] can back it; the built-in [`HashedBagOfWords`]
//! hashes stemmed unigrams and bigrams into a fixed number of bins.

use std::collections::BTreeMap;

use crate::scalar::FloatScalar;

/// Fixed-dimension sentence vector, stored sparsely with its norm cached.
#[derive(Debug, Clone, PartialEq)]
pub struct SentenceVector<T> {
    dimension: usize,
    /// Non-zero bins, sorted by index.
    entries: Vec<(u32, T)>,
    norm: T,
}

impl<T: FloatScalar> SentenceVector<T> {
    pub fn zeros(dimension: usize) -> Self {
        SentenceVector {
            dimension,
            entries: Vec::new(),
            norm: T::zero(),
        }
    }

    /// Builds a vector from (bin, weight) pairs; repeated bins add up.
    pub fn from_bins(dimension: usize, bins: impl IntoIterator<Item = (usize, T)>) -> Self {
        let mut acc: BTreeMap<u32, T> = BTreeMap::new();
        for (i, w) in bins {
            assert!(i < dimension, "bin {i} outside dimension {dimension}");
            let e = acc.entry(i as u32).or_insert_with(T::zero);
            *e = *e + w;
        }
        let entries: Vec<(u32, T)> = acc.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        let norm = entries.iter().fold(T::zero(), |s, &(_, w)| s + w * w).sqrt();
        SentenceVector {
            dimension,
            entries,
            norm,
        }
    }

    pub fn from_dense(values: &[T]) -> Self {
        Self::from_bins(values.len(), values.iter().copied().enumerate())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn norm(&self) -> T {
        self.norm
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nonzero_bins(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|&(i, _)| i as usize)
    }

    pub fn get(&self, bin: usize) -> T {
        self.entries
            .binary_search_by_key(&(bin as u32), |&(i, _)| i)
            .map_or(T::zero(), |k| self.entries[k].1)
    }

    pub fn to_dense(&self) -> Vec<T> {
        let mut v = vec![T::zero(); self.dimension];
        for &(i, w) in &self.entries {
            v[i as usize] = w;
        }
        v
    }

    pub fn scaled(&self, c: T) -> Self {
        Self::from_bins(
            self.dimension,
            self.entries.iter().map(|&(i, w)| (i as usize, w * c)),
        )
    }

    pub fn dot(&self, other: &Self) -> T {
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        let mut sum = T::zero();
        while let (Some(&&(i, x)), Some(&&(j, y))) = (a.peek(), b.peek()) {
            match i.cmp(&j) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => {
                    sum = sum + x * y;
                    a.next();
                    b.next();
                }
            }
        }
        sum
    }
}

/// `|cos(a, b)|`, defined as 0 when either vector is zero.
pub fn cosine_relevance<T: FloatScalar>(a: &SentenceVector<T>, b: &SentenceVector<T>) -> T {
    if a.norm.is_zero() || b.norm.is_zero() {
        return T::zero();
    }
    (a.dot(b) / (a.norm * b.norm)).abs().min(T::one())
}

/// Maps text to a sentence vector. Implementations must be deterministic and
/// return the zero vector for empty text.
pub trait EmbeddingProvider<T: FloatScalar = f64>: Send + Sync {
    fn dimension(&self) -> usize;
    fn embed(&self, text: &str) -> SentenceVector<T>;
}

/// SR of two texts under `provider`.
pub fn sentence_relevance<T: FloatScalar, P: EmbeddingProvider<T> + ?Sized>(
    a: &str,
    b: &str,
    provider: &P,
) -> T {
    cosine_relevance(&provider.embed(a), &provider.embed(b))
}

pub const DEFAULT_DIMENSION: usize = 4096;
/// Hash seed of the v1 feature layout; changing it invalidates trained models.
pub const HASH_SEED_V1: u64 = 0x5eed_0001;

const STOP_WORDS: &[&str] = &[
    "a", "an", "the", "and", "or", "but", "so", "of", "to", "in", "on", "at", "by", "for", "with",
    "from", "as", "is", "are", "was", "were", "be", "been", "am", "it", "its", "this", "that",
    "these", "those", "i", "me", "my", "we", "our", "you", "your", "he", "she", "they", "them",
    "s", "t", "d", "ll", "re", "ve", "m", "do", "does", "did", "just", "um", "uh", "oh", "ok",
    "okay", "very", "really", "there", "here", "please", "what", "which", "who", "whom", "when",
    "where", "why", "how",
];

/// Hashed bag of stemmed unigrams and bigrams.
///
/// Lowercases, splits on non-alphanumerics, drops stop words, strips common
/// suffixes, then hashes each unigram and each adjacent bigram into
/// `dimension` bins with weight `1 + ln(tf)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HashedBagOfWords {
    dimension: usize,
    seed: u64,
}

impl Default for HashedBagOfWords {
    fn default() -> Self {
        HashedBagOfWords {
            dimension: DEFAULT_DIMENSION,
            seed: HASH_SEED_V1,
        }
    }
}

impl HashedBagOfWords {
    pub fn new(dimension: usize, seed: u64) -> Self {
        assert!(dimension > 0, "dimension must be positive");
        HashedBagOfWords { dimension, seed }
    }

    /// Stemmed content tokens of a sentence, in order.
    pub fn tokens(&self, text: &str) -> Vec<String> {
        text.split(|c: char| !c.is_alphanumeric())
            .filter(|t| !t.is_empty())
            .map(str::to_lowercase)
            .filter(|t| !STOP_WORDS.contains(&t.as_str()))
            .map(|t| stem(&t))
            .collect()
    }

    /// Bin a feature string hashes to.
    pub fn bin(&self, feature: &str) -> usize {
        (fnv1a(self.seed, feature.as_bytes()) % self.dimension as u64) as usize
    }

    /// Unigram (`u:`) and bigram (`b:`) feature strings with their counts.
    pub fn features(&self, text: &str) -> BTreeMap<String, u32> {
        let tokens = self.tokens(text);
        let mut tf: BTreeMap<String, u32> = BTreeMap::new();
        for t in &tokens {
            *tf.entry(format!("u:{t}")).or_default() += 1;
        }
        for w in tokens.windows(2) {
            *tf.entry(format!("b:{} {}", w[0], w[1])).or_default() += 1;
        }
        tf
    }
}

impl<T: FloatScalar> EmbeddingProvider<T> for HashedBagOfWords {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn embed(&self, text: &str) -> SentenceVector<T> {
        let bins = self.features(text).into_iter().map(|(f, n)| {
            let w = 1.0 + f64::from(n).ln();
            (self.bin(&f), T::from_f64(w).expect("weight representable"))
        });
        SentenceVector::from_bins(self.dimension, bins)
    }
}

fn fnv1a(seed: u64, bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64 ^ seed;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Crude suffix stripping; keeps at least three characters of stem.
///
/// `-es` is only removed after a sibilant (`boxes`, `watches`); elsewhere
/// just the `-s` goes, so `tales` and `tale` share a stem.
pub fn stem(word: &str) -> String {
    const RULES: &[(&str, &str)] = &[
        ("ies", "y"),
        ("sses", "ss"),
        ("ing", ""),
        ("ed", ""),
        ("ly", ""),
        ("es", ""),
        ("s", ""),
    ];
    const SIBILANTS: &[&str] = &["s", "x", "z", "ch", "sh"];
    for (suffix, repl) in RULES {
        if let Some(root) = word.strip_suffix(suffix) {
            if root.chars().count() < 3 {
                continue;
            }
            match *suffix {
                "es" if !SIBILANTS.iter().any(|s| root.ends_with(s)) => continue,
                "s" if root.ends_with('s') => continue,
                _ => return format!("{root}{repl}"),
            }
        }
    }
    word.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sr(a: &str, b: &str) -> f64 {
        sentence_relevance::<f64, _>(a, b, &HashedBagOfWords::default())
    }

    #[test]
    fn deterministic() {
        let p = HashedBagOfWords::default();
        let a: SentenceVector<f64> = p.embed("Which sleep sound would you like today?");
        let b: SentenceVector<f64> = p.embed("Which sleep sound would you like today?");
        assert_eq!(a, b);
        assert_eq!(p.bin("u:sleep"), HashedBagOfWords::default().bin("u:sleep"));
    }

    #[test]
    fn empty_is_zero() {
        let v: SentenceVector<f64> = HashedBagOfWords::default().embed("");
        assert!(v.is_zero());
        assert_eq!(v.norm(), 0.0);
        assert_eq!(v.dimension(), DEFAULT_DIMENSION);
        assert_eq!(sr("", "hello world"), 0.0);
    }

    #[test]
    fn word_order_only_changes_bigrams() {
        let p = HashedBagOfWords::default();
        let a = p.features("open sleep sounds");
        let b = p.features("sounds sleep open");
        let uni = |m: &BTreeMap<String, u32>| {
            m.iter()
                .filter(|(k, _)| k.starts_with("u:"))
                .map(|(k, v)| (k.clone(), *v))
                .collect::<Vec<_>>()
        };
        let bi = |m: &BTreeMap<String, u32>| {
            m.keys().filter(|k| k.starts_with("b:")).cloned().collect::<Vec<_>>()
        };
        assert_eq!(uni(&a), uni(&b));
        assert_ne!(bi(&a), bi(&b));
        let va: SentenceVector<f64> = p.embed("open sleep sounds");
        let vb: SentenceVector<f64> = p.embed("sounds sleep open");
        for f in uni(&a) {
            assert_eq!(va.get(p.bin(&f.0)), vb.get(p.bin(&f.0)));
        }
        assert_ne!(va, vb);
    }

    #[test]
    fn relevance_identity_and_symmetry() {
        let s = "What is the week's forecast?";
        assert!((sr(s, s) - 1.0).abs() < 1e-12);
        let t = "Which sleep sound would you like today?";
        assert_eq!(sr(s, t), sr(t, s));
    }

    #[test]
    fn disjoint_vocabulary_is_orthogonal() {
        let p = HashedBagOfWords::default();
        let a = "thunder rain";
        let b = "quote music";
        let bins_a: Vec<usize> = p.features(a).keys().map(|f| p.bin(f)).collect();
        let bins_b: Vec<usize> = p.features(b).keys().map(|f| p.bin(f)).collect();
        assert!(bins_a.iter().all(|x| !bins_b.contains(x)), "toy vocabulary collides");
        assert_eq!(sr(a, b), 0.0);
    }

    #[test]
    fn scale_invariance() {
        let p = HashedBagOfWords::default();
        let a: SentenceVector<f64> = p.embed("play thunderstorm sounds");
        let b: SentenceVector<f64> = p.embed("play some rain sounds");
        let base = cosine_relevance(&a, &b);
        for c in [0.5, 3.0, 1e6] {
            assert!((cosine_relevance(&a.scaled(c), &b) - base).abs() < 1e-12);
        }
        let neg = a.scaled(-2.0);
        assert!((cosine_relevance(&neg, &b) - base).abs() < 1e-12);
    }

    #[test]
    fn f32_provider_agrees() {
        let p = HashedBagOfWords::default();
        let x = sentence_relevance::<f32, _>("tell me a cat fact", "cat facts please", &p);
        let y = sr("tell me a cat fact", "cat facts please");
        assert!((f64::from(x) - y).abs() < 1e-6);
    }

    #[test]
    fn stemming() {
        assert_eq!(stem("sounds"), "sound");
        assert_eq!(stem("stories"), "story");
        assert_eq!(stem("playing"), "play");
        assert_eq!(stem("glass"), "glass");
        assert_eq!(stem("is"), "is");
        assert_eq!(stem("tales"), stem("tale"));
        assert_eq!(stem("boxes"), "box");
        assert_eq!(stem("watches"), "watch");
    }

    #[test]
    fn dense_round_trip() {
        let v = SentenceVector::from_dense(&[0.0, 3.0, 0.0, 4.0]);
        assert_eq!(v.norm(), 5.0);
        assert_eq!(v.to_dense(), vec![0.0, 3.0, 0.0, 4.0]);
        assert_eq!(v.nonzero_bins().collect::<Vec<_>>(), vec![1, 3]);
    }
}
