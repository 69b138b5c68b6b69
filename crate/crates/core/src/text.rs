//! Text normalization shared by phonemization, the scanner and the detector.

/// Lowercases, replaces punctuation with spaces and splits on whitespace.
///
/// Apostrophes inside a word survive ("what's") so that contractions still
/// hit the pronouncing dictionary; leading and trailing ones are dropped.
pub fn words(text: &str) -> Vec<String> {
    let mut cleaned = String::with_capacity(text.len());
    for c in text.chars() {
        if c.is_alphanumeric() || c == '\'' || c == '\u{2019}' {
            let c = if c == '\u{2019}' { '\'' } else { c };
            cleaned.extend(c.to_lowercase());
        } else {
            cleaned.push(' ');
        }
    }
    cleaned
        .split_whitespace()
        .map(|w| w.trim_matches('\''))
        .filter(|w| !w.is_empty())
        .map(str::to_string)
        .collect()
}

/// Normalized form of an invocation name: lowercase, no punctuation, single spaces.
pub fn normalize(text: &str) -> String {
    words(text).join(" ")
}

/// Whether `needle` occurs as a contiguous run of whole words in `haystack`.
pub fn contains_words<S: AsRef<str>>(haystack: &[S], needle: &[S]) -> bool {
    if needle.is_empty() || needle.len() > haystack.len() {
        return false;
    }
    haystack
        .windows(needle.len())
        .any(|w| w.iter().zip(needle).all(|(a, b)| a.as_ref() == b.as_ref()))
}
