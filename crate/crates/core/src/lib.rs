//! Vetting toolkit for voice-assistant skill markets.
//!
//! Two halves:
//!
//! * **Squatting**: invocation names are phonemized with a CMU-format
//!   pronouncing dictionary, compared with a weighted phoneme edit distance
//!   whose costs are learned from alternative pronunciations, and scanned
//!   pairwise (plus prefix/suffix paraphrases) for competitive names.
//! * **Masquerading**: conversation transcripts are checked turn by turn.
//!   Skill responses resembling system utterances or silence are flagged, and
//!   user utterances are classified as context switches by a random forest
//!   over sentence-relevance features.
//!
//! Cost and distance math is generic over [`Scalar`]; the aliases below fix
//! the `f64` instantiation used by the scanner and the command-line tool.

pub mod align;
pub mod catalog;
pub mod cost;
pub mod dict;
pub mod distance;
pub mod embed;
pub mod error;
pub mod g2p;
pub mod paraphrase;
pub mod phoneme;
pub mod scalar;
pub mod scan;
pub mod text;
pub mod vma;

pub use error::{Error, Result};
pub use phoneme::{Phoneme, Pronunciation};
pub use scalar::{FloatScalar, Scalar};

/// Cost matrix over `f64`, the default precision.
pub type CostMatrix = cost::CostMatrix<f64>;
/// Phrase distance over `f64`.
pub type PhraseDistance = distance::PhraseDistance<f64>;
/// Sparse sentence embedding over `f64`.
pub type SentenceVector = embed::SentenceVector<f64>;
