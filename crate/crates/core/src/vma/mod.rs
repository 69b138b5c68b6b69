//! Voice-masquerading detection over conversation transcripts.
//!
//! * [`src_check`](response::src_check) flags skill responses that are silent
//!   or that resemble system utterances on a blacklist.
//! * The user-intention classifier turns each user utterance into a
//!   [`FeatureVector`](features::FeatureVector) and asks a random
//!   [`Forest`](forest::Forest) whether it is a context switch.
//! * [`Detector`](detector::Detector) runs both over every turn and raises an
//!   alarm whenever either fires.

pub mod detector;
pub mod eval;
pub mod features;
pub mod forest;
pub mod response;

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::catalog::SkillRecord;
use crate::error::{Error, Result};
use crate::text;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    User,
    Skill,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConversationTurn {
    pub role: Role,
    #[serde(default)]
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<f64>,
}

impl ConversationTurn {
    pub fn user(text: impl Into<String>) -> Self {
        ConversationTurn {
            role: Role::User,
            text: text.into(),
            timestamp: None,
        }
    }

    pub fn skill(text: impl Into<String>) -> Self {
        ConversationTurn {
            role: Role::Skill,
            text: text.into(),
            timestamp: None,
        }
    }
}

/// One user–skill session.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub session_id: String,
    pub skill: SkillRecord,
    pub turns: Vec<ConversationTurn>,
}

impl Transcript {
    /// Turns must alternate between roles, user turns must carry text and
    /// timestamps, where present, must not decrease.
    pub fn validate(&self) -> Result<()> {
        let bad = |message: String| Error::Transcript {
            session: self.session_id.clone(),
            message,
        };
        let mut last_time: Option<f64> = None;
        for (i, turn) in self.turns.iter().enumerate() {
            if i > 0 && self.turns[i - 1].role == turn.role {
                return Err(bad(format!("turns {} and {i} have the same role", i - 1)));
            }
            if turn.role == Role::User && turn.text.trim().is_empty() {
                return Err(bad(format!("user turn {i} is empty")));
            }
            if let Some(t) = turn.timestamp {
                if !t.is_finite() {
                    return Err(bad(format!("turn {i} has a non-finite timestamp")));
                }
                if last_time.is_some_and(|prev| t < prev) {
                    return Err(bad(format!("timestamp of turn {i} goes backwards")));
                }
                last_time = Some(t);
            }
        }
        Ok(())
    }
}

/// Whether the user utterance is addressed to the system or another skill.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Label {
    NoSwitch,
    Switch,
}

impl Label {
    pub fn index(self) -> usize {
        self as usize
    }
}

/// Marker for the silent entry in blacklist files.
pub const SILENCE_MARKER: &str = "<silence>";

/// System utterances a skill must not imitate, plus silence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blacklist {
    entries: Vec<String>,
}

impl Blacklist {
    /// The silent entry is always present, whether listed or not.
    pub fn new<S: Into<String>>(entries: impl IntoIterator<Item = S>) -> Self {
        let mut out: Vec<String> = Vec::new();
        for e in entries {
            let e: String = e.into();
            let e = if e.trim() == SILENCE_MARKER { String::new() } else { e.trim().to_string() };
            if !out.contains(&e) {
                out.push(e);
            }
        }
        if !out.iter().any(String::is_empty) {
            out.push(String::new());
        }
        Blacklist { entries: out }
    }

    /// Spoken entries, without the silent one.
    pub fn spoken(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(String::as_str).filter(|e| !e.is_empty())
    }

    pub fn entries(&self) -> &[String] {
        &self.entries
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(Blacklist::new(read_list(path.as_ref())?))
    }
}

/// Template slot expanded with every catalog invocation name.
pub const NAME_SLOT: &str = "<name>";

/// Commands addressed to the assistant itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemCommandList {
    entries: Vec<String>,
}

impl SystemCommandList {
    /// Expands `<name>` templates against `names`. Errors if nothing remains.
    pub fn new<S: AsRef<str>, N: AsRef<str>>(templates: &[S], names: &[N]) -> Result<Self> {
        let mut entries = Vec::new();
        for t in templates {
            let t = t.as_ref().trim();
            if t.is_empty() {
                continue;
            }
            if t.contains(NAME_SLOT) {
                entries.extend(names.iter().map(|n| t.replace(NAME_SLOT, n.as_ref())));
            } else {
                entries.push(t.to_string());
            }
        }
        if entries.is_empty() {
            return Err(Error::Config("system command list is empty".into()));
        }
        Ok(SystemCommandList { entries })
    }

    pub fn entries(&self) -> &[String] {
        &self.entries
    }

    pub fn load<N: AsRef<str>>(path: impl AsRef<Path>, names: &[N]) -> Result<Self> {
        Self::new(&read_list(path.as_ref())?, names)
    }
}

/// Non-empty, non-`#` lines of a text file.
fn read_list(path: &Path) -> Result<Vec<String>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = line.trim();
        if !line.is_empty() && !line.starts_with('#') {
            out.push(line.to_string());
        }
    }
    Ok(out)
}

/// One labelled user utterance for training the intention classifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledUtterance {
    pub utterance: String,
    #[serde(default)]
    pub prior_response: Option<String>,
    pub skill_id: String,
    pub label: Label,
}

/// Reads JSON Lines into `T`, reporting the offending line on failure.
pub fn read_jsonl<T: serde::de::DeserializeOwned>(path: impl AsRef<Path>) -> Result<Vec<T>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| Error::Malformed {
            line: i + 1,
            message: format!("{}: {e}", path.display()),
        })?);
    }
    Ok(out)
}

/// Normalized invocation names of a catalog, deduplicated, as word lists.
pub fn catalog_names(catalog: &[SkillRecord]) -> Vec<Vec<String>> {
    let mut names: Vec<Vec<String>> = catalog
        .iter()
        .map(|s| text::words(&s.invocation_name))
        .filter(|w| !w.is_empty())
        .collect();
    names.sort();
    names.dedup();
    names
}
