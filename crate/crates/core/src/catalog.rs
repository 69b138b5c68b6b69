//! Skill catalog records and JSONL ingestion.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text;

/// Market metadata for one skill.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkillRecord {
    pub id: String,
    #[serde(default)]
    pub display_name: String,
    pub invocation_name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub author: Option<String>,
    #[serde(
        default,
        deserialize_with = "sentences",
        skip_serializing_if = "Vec::is_empty"
    )]
    pub description: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<String>,
}

impl SkillRecord {
    pub fn new(id: impl Into<String>, invocation_name: impl Into<String>) -> Self {
        let invocation_name = invocation_name.into();
        SkillRecord {
            id: id.into(),
            display_name: invocation_name.clone(),
            invocation_name,
            author: None,
            description: Vec::new(),
            category: None,
        }
    }

    pub fn with_description<S: Into<String>>(mut self, sentences: impl IntoIterator<Item = S>) -> Self {
        self.description = sentences.into_iter().map(Into::into).collect();
        self
    }

    pub fn normalized_name(&self) -> String {
        text::normalize(&self.invocation_name)
    }
}

/// Description given either as a list of sentences or as one paragraph.
fn sentences<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<String>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Desc {
        One(String),
        Many(Vec<String>),
    }
    Ok(match Option::<Desc>::deserialize(d)? {
        None => Vec::new(),
        Some(Desc::Many(v)) => v,
        Some(Desc::One(s)) => split_sentences(&s),
    })
}

/// Splits prose on sentence-final punctuation.
pub fn split_sentences(s: &str) -> Vec<String> {
    s.split_inclusive(['.', '!', '?'])
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(str::to_string)
        .collect()
}

/// Parses a JSONL catalog. Blank lines are ignored; ids must be unique and
/// invocation names non-empty after normalization.
pub fn parse_catalog<R: BufRead>(source: R) -> Result<Vec<SkillRecord>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::Malformed {
            line: lineno,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: SkillRecord = serde_json::from_str(&line).map_err(|e| Error::Malformed {
            line: lineno,
            message: e.to_string(),
        })?;
        if rec.id.trim().is_empty() {
            return Err(Error::Malformed {
                line: lineno,
                message: "empty skill id".into(),
            });
        }
        if rec.normalized_name().is_empty() {
            return Err(Error::Malformed {
                line: lineno,
                message: format!("skill `{}` has an empty invocation_name", rec.id),
            });
        }
        if !seen.insert(rec.id.clone()) {
            return Err(Error::DuplicateId(rec.id));
        }
        out.push(rec);
    }
    Ok(out)
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Vec<SkillRecord>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_catalog(BufReader::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_valid_lines() {
        let text = r#"{"id":"a","display_name":"Cat Facts","invocation_name":"cat facts"}
{"id":"b","invocation_name":"dog fact","description":"Daily dog facts. Fun for kids!"}

{"id":"c","invocation_name":"sleep sounds","description":["Relax.","Sleep well."],"category":"health"}
"#;
        let cat = parse_catalog(text.as_bytes()).unwrap();
        assert_eq!(cat.len(), 3);
        assert_eq!(cat[1].description, vec!["Daily dog facts.", "Fun for kids!"]);
        assert_eq!(cat[2].category.as_deref(), Some("health"));
    }

    #[test]
    fn duplicate_id_is_named() {
        let text = "{\"id\":\"x\",\"invocation_name\":\"a\"}\n{\"id\":\"x\",\"invocation_name\":\"b\"}\n";
        match parse_catalog(text.as_bytes()) {
            Err(Error::DuplicateId(id)) => assert_eq!(id, "x"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_invocation_name() {
        let err = parse_catalog("{\"id\":\"x\"}\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 1, .. }));
        let err = parse_catalog("{\"id\":\"x\",\"invocation_name\":\" !\"}\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 1, .. }));
    }

    #[test]
    fn malformed_json_reports_line() {
        let text = "{\"id\":\"a\",\"invocation_name\":\"a\"}\n{oops\n";
        assert!(matches!(
            parse_catalog(text.as_bytes()),
            Err(Error::Malformed { line: 2, .. })
        ));
    }
}
