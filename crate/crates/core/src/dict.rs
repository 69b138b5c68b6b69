//! CMU-format pronouncing dictionary and phrase phonemization.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::g2p::g2p_fallback;
use crate::phoneme::{Phoneme, Pronunciation};
use crate::text;

/// Upper bound on the pronunciations produced for one phrase.
pub const PHRASE_PRONUNCIATION_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    /// Abort on the first malformed line.
    Strict,
    /// Skip malformed lines and log them.
    #[default]
    Lenient,
}

/// Word → alternative pronunciations, lookups case-insensitive.
///
/// Immutable once built; alternatives keep their first-seen order and stress
/// digits are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Dictionary {
    entries: BTreeMap<String, Vec<Pronunciation>>,
}

/// Result of [`parse_dictionary`].
#[derive(Debug)]
pub struct ParsedDictionary {
    pub dictionary: Dictionary,
    /// Number of accepted entry lines.
    pub accepted: usize,
    /// Line errors skipped in lenient mode.
    pub skipped: Vec<Error>,
}

impl Dictionary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a pronunciation; duplicates are ignored.
    pub fn insert(&mut self, word: &str, pron: Pronunciation) {
        let alts = self.entries.entry(word.to_lowercase()).or_default();
        if !alts.contains(&pron) {
            alts.push(pron);
        }
    }

    pub fn get(&self, word: &str) -> Option<&[Pronunciation]> {
        match self.entries.get(word) {
            Some(v) => Some(v.as_slice()),
            None => self.entries.get(&word.to_lowercase()).map(Vec::as_slice),
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.get(word).is_some()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[Pronunciation])> {
        self.entries.iter().map(|(w, p)| (w.as_str(), p.as_slice()))
    }

    /// Keeps only the given words (used to build small fixtures).
    pub fn restricted_to<'a>(&self, words: impl IntoIterator<Item = &'a str>) -> Dictionary {
        let mut out = Dictionary::new();
        for w in words {
            if let Some(alts) = self.get(w) {
                for p in alts {
                    out.insert(w, p.clone());
                }
            }
        }
        out
    }

    /// Pairs of alternative pronunciations: the first listed pronunciation of
    /// each multi-pronunciation headword paired with every later one.
    pub fn variant_pairs(&self) -> Vec<(Pronunciation, Pronunciation)> {
        let mut pairs = Vec::new();
        for alts in self.entries.values() {
            if let Some((first, rest)) = alts.split_first() {
                pairs.extend(rest.iter().map(|p| (first.clone(), p.clone())));
            }
        }
        pairs
    }

    /// Pronunciations of one already-normalized word, falling back to
    /// letter-to-sound rules for unknown words.
    pub fn word_pronunciations(&self, word: &str) -> Result<Cow<'_, [Pronunciation]>> {
        match self.get(word) {
            Some(alts) => Ok(Cow::Borrowed(alts)),
            None => Ok(Cow::Owned(vec![g2p_fallback(word)?])),
        }
    }

    /// Writes the dictionary back out in CMU format.
    pub fn write_to<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (word, alts) in &self.entries {
            for (i, p) in alts.iter().enumerate() {
                if i == 0 {
                    writeln!(out, "{}  {}", word.to_uppercase(), p)?;
                } else {
                    writeln!(out, "{}({})  {}", word.to_uppercase(), i, p)?;
                }
            }
        }
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>, mode: ParseMode) -> Result<ParsedDictionary> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        parse_dictionary(BufReader::new(file), mode)
    }
}

fn strip_variant_marker(head: &str) -> &str {
    if let Some(open) = head.rfind('(') {
        let inner = &head[open + 1..];
        if let Some(digits) = inner.strip_suffix(')') {
            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) && open > 0 {
                return &head[..open];
            }
        }
    }
    head
}

fn parse_line(line: &str, lineno: usize) -> Result<Option<(String, Pronunciation)>> {
    let line = line.trim();
    if line.is_empty() || line.starts_with(";;;") {
        return Ok(None);
    }
    // cmudict.dict carries trailing "# ..." annotations.
    let line = match line.find(" #") {
        Some(i) => line[..i].trim_end(),
        None => line,
    };
    let mut tokens = line.split_whitespace();
    let head = tokens.next().unwrap_or_default();
    let word = strip_variant_marker(head).to_lowercase();
    let mut phonemes = Vec::new();
    for tok in tokens {
        match Phoneme::parse_token(tok) {
            Some(p) => phonemes.push(p),
            None => {
                return Err(Error::UnknownPhoneme {
                    line: lineno,
                    symbol: tok.to_string(),
                })
            }
        }
    }
    if phonemes.is_empty() {
        return Err(Error::Malformed {
            line: lineno,
            message: format!("headword `{head}` has no phonemes"),
        });
    }
    Ok(Some((word, Pronunciation::new(phonemes)?)))
}

/// Parses CMU-dict text: `HEADWORD[(n)]  PH1 PH2 ...` per line, `;;;` comments.
///
/// Variant markers collapse into the headword's alternative set and stress
/// digits are dropped.
pub fn parse_dictionary<R: BufRead>(source: R, mode: ParseMode) -> Result<ParsedDictionary> {
    let mut dictionary = Dictionary::new();
    let mut accepted = 0;
    let mut skipped = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::Malformed {
            line: lineno,
            message: e.to_string(),
        })?;
        match parse_line(&line, lineno) {
            Ok(Some((word, pron))) => {
                dictionary.insert(&word, pron);
                accepted += 1;
            }
            Ok(None) => {}
            Err(e) if mode == ParseMode::Lenient => {
                log::warn!("skipping dictionary {e}");
                skipped.push(e);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ParsedDictionary {
        dictionary,
        accepted,
        skipped,
    })
}

/// All pronunciations of a phrase: the cross product of its words'
/// alternatives, concatenated without boundary markers.
///
/// Words are taken left to right; once the running product would exceed
/// [`PHRASE_PRONUNCIATION_CAP`] only the first alternatives of later words
/// are kept.
pub fn phonemize_phrase(phrase: &str, dict: &Dictionary) -> Result<Vec<Pronunciation>> {
    let words = text::words(phrase);
    if words.is_empty() {
        return Err(Error::EmptyPhrase(phrase.to_string()));
    }
    let mut acc: Vec<Pronunciation> = Vec::new();
    for word in &words {
        let alts = dict.word_pronunciations(word)?;
        if acc.is_empty() {
            acc = alts.iter().take(PHRASE_PRONUNCIATION_CAP).cloned().collect();
            continue;
        }
        let keep = (PHRASE_PRONUNCIATION_CAP / acc.len()).clamp(1, alts.len());
        let mut next = Vec::with_capacity(acc.len() * keep);
        for prefix in &acc {
            for alt in &alts[..keep] {
                let joined = prefix.concat(alt);
                if !next.contains(&joined) {
                    next.push(joined);
                }
            }
        }
        acc = next;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Dictionary {
        parse_dictionary(text.as_bytes(), ParseMode::Strict)
            .unwrap()
            .dictionary
    }

    fn pron(s: &str) -> Pronunciation {
        s.parse().unwrap()
    }

    #[test]
    fn single_entry() {
        let d = parse("CAT  K AE1 T\n");
        assert_eq!(d.get("cat").unwrap(), &[pron("K AE T")]);
        assert_eq!(d.get("CAT").unwrap(), &[pron("K AE T")]);
    }

    #[test]
    fn variants_merge() {
        let parsed = parse_dictionary(
            ";;; comment\nFACTS  F AE1 K T S\nFACTS(1)  F AE1 K S\n".as_bytes(),
            ParseMode::Strict,
        )
        .unwrap();
        assert_eq!(parsed.accepted, 2);
        assert_eq!(parsed.dictionary.len(), 1);
        assert_eq!(parsed.dictionary.get("facts").unwrap().len(), 2);
    }

    #[test]
    fn cmudict_dict_style_lines() {
        let d = parse("aalborg AO1 L B AO0 R G # place, danish\nwon(2) W AA1 N\n");
        assert_eq!(d.get("aalborg").unwrap(), &[pron("AO L B AO R G")]);
        assert_eq!(d.get("won").unwrap(), &[pron("W AA N")]);
    }

    #[test]
    fn strict_mode_names_bad_symbol() {
        let err = parse_dictionary("CAT  K XX T\n".as_bytes(), ParseMode::Strict).unwrap_err();
        match err {
            Error::UnknownPhoneme { line, symbol } => {
                assert_eq!(line, 1);
                assert_eq!(symbol, "XX");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn lenient_mode_skips_bad_lines() {
        let parsed =
            parse_dictionary("CAT  K XX T\nDOG  D AO1 G\nEMPTY\n".as_bytes(), ParseMode::Lenient)
                .unwrap();
        assert_eq!(parsed.accepted, 1);
        assert_eq!(parsed.skipped.len(), 2);
        assert!(parsed.dictionary.contains("dog"));
    }

    #[test]
    fn phrase_concatenation() {
        let d = parse("CAT  K AE T\nFAX  F AE K S\n");
        assert_eq!(
            phonemize_phrase("cat fax", &d).unwrap(),
            vec![pron("K AE T F AE K S")]
        );
    }

    #[test]
    fn phrase_cross_product() {
        let d = parse("CAT  K AE T\nFACTS  F AE K T S\nFACTS(1)  F AE K S\n");
        let got = phonemize_phrase("Cat Facts!", &d).unwrap();
        assert_eq!(got, vec![pron("K AE T F AE K T S"), pron("K AE T F AE K S")]);
    }

    #[test]
    fn oov_words_use_fallback() {
        let d = parse("SOUNDS  S AW N D Z\n");
        let got = phonemize_phrase("xqz sounds", &d).unwrap();
        assert_eq!(got.len(), 1);
        let tail = pron("S AW N D Z");
        assert!(got[0].phonemes().ends_with(tail.phonemes()));
        assert!(got[0].len() > tail.len());
    }

    #[test]
    fn empty_phrase_is_error() {
        let d = Dictionary::new();
        assert!(matches!(
            phonemize_phrase(" ?! ", &d),
            Err(Error::EmptyPhrase(_))
        ));
    }

    #[test]
    fn cross_product_is_capped() {
        let mut text = String::new();
        for w in ["aa", "bb", "cc"] {
            for (i, v) in ["AA", "AE", "AH", "AO", "AW", "AY"].iter().enumerate() {
                if i == 0 {
                    text.push_str(&format!("{w}  {v}\n"));
                } else {
                    text.push_str(&format!("{w}({i})  {v}\n"));
                }
            }
        }
        let d = parse(&text);
        // 6 * 6 = 36 fits, a third word may add only one more factor of 1.
        let got = phonemize_phrase("aa bb cc", &d).unwrap();
        assert_eq!(got.len(), 36);
        assert!(got.len() <= PHRASE_PRONUNCIATION_CAP);
        assert_eq!(phonemize_phrase("aa bb", &d).unwrap().len(), 36);
    }

    #[test]
    fn round_trip_is_fixed_point() {
        let d = parse("FACTS  F AE1 K T S\nFACTS(2)  F AE1 K S\nCAT  K AE1 T\n");
        let mut buf = Vec::new();
        d.write_to(&mut buf).unwrap();
        let again = parse(std::str::from_utf8(&buf).unwrap());
        assert_eq!(d, again);
        let mut buf2 = Vec::new();
        again.write_to(&mut buf2).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn variant_pairs_anchor_on_first() {
        let d = parse("TOMATO  T AH0 M EY1 T OW2\nTOMATO(2)  T AH0 M AA1 T OW2\nCAT  K AE T\n");
        let pairs = d.variant_pairs();
        assert_eq!(pairs, vec![(pron("T AH M EY T OW"), pron("T AH M AA T OW"))]);
    }
}
