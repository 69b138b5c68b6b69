use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: unknown phoneme symbol `{symbol}`")]
    UnknownPhoneme { line: usize, symbol: String },

    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("`{0}` has no pronounceable characters")]
    Unpronounceable(String),

    #[error("phrase `{0}` is empty after normalization")]
    EmptyPhrase(String),

    #[error("empty pronunciation")]
    EmptyPronunciation,

    #[error("alternative-pronunciation corpus is empty")]
    EmptyCorpus,

    #[error("duplicate skill id `{0}`")]
    DuplicateId(String),

    #[error("invalid cost matrix: {0}")]
    Matrix(String),

    #[error("invalid model: {0}")]
    Model(String),

    #[error("invalid training data: {0}")]
    Training(String),

    #[error("invalid transcript `{session}`: {message}")]
    Transcript { session: String, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
