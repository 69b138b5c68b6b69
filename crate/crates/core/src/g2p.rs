//! Rule-based letter-to-sound fallback for words missing from the dictionary.
//!
//! Longest-match over a fixed grapheme table, then single-letter defaults.
//! The output is crude but stable, which is what squatting comparisons need
//! for out-of-vocabulary name words: the same spelling always maps to the
//! same phonemes.

use crate::error::{Error, Result};
use crate::phoneme::{Phoneme, Pronunciation};

use Phoneme::*;

/// Multi-letter graphemes, longest first.
const GRAPHEMES: &[(&str, &[Phoneme])] = &[
    ("tch", &[CH]),
    ("igh", &[AY]),
    ("sch", &[S, K]),
    ("dge", &[JH]),
    ("sh", &[SH]),
    ("ch", &[CH]),
    ("th", &[TH]),
    ("ph", &[F]),
    ("ck", &[K]),
    ("ng", &[NG]),
    ("qu", &[K, W]),
    ("wh", &[W]),
    ("wr", &[R]),
    ("kn", &[N]),
    ("gh", &[G]),
    ("ee", &[IY]),
    ("ea", &[IY]),
    ("ie", &[IY]),
    ("oo", &[UW]),
    ("ou", &[AW]),
    ("ow", &[OW]),
    ("oa", &[OW]),
    ("oi", &[OY]),
    ("oy", &[OY]),
    ("ai", &[EY]),
    ("ay", &[EY]),
    ("au", &[AO]),
    ("aw", &[AO]),
    ("ew", &[UW]),
    ("er", &[ER]),
    ("ir", &[ER]),
    ("ur", &[ER]),
    ("ar", &[AA, R]),
    ("or", &[AO, R]),
    ("bb", &[B]),
    ("dd", &[D]),
    ("ff", &[F]),
    ("gg", &[G]),
    ("ll", &[L]),
    ("mm", &[M]),
    ("nn", &[N]),
    ("pp", &[P]),
    ("rr", &[R]),
    ("ss", &[S]),
    ("tt", &[T]),
    ("zz", &[Z]),
];

fn letter(c: char, at_end: bool) -> &'static [Phoneme] {
    match c {
        'a' => &[AE],
        'b' => &[B],
        'c' => &[K],
        'd' => &[D],
        'e' => &[EH],
        'f' => &[F],
        'g' => &[G],
        'h' => &[HH],
        'i' => &[IH],
        'j' => &[JH],
        'k' => &[K],
        'l' => &[L],
        'm' => &[M],
        'n' => &[N],
        'o' => &[AA],
        'p' => &[P],
        'q' => &[K],
        'r' => &[R],
        's' => &[S],
        't' => &[T],
        'u' => &[AH],
        'v' => &[V],
        'w' => &[W],
        'x' => &[K, S],
        'y' if at_end => &[IY],
        'y' => &[Y],
        'z' => &[Z],
        _ => &[],
    }
}

fn is_vowel_letter(c: u8) -> bool {
    matches!(c, b'a' | b'e' | b'i' | b'o' | b'u' | b'y')
}

/// Letter-to-sound conversion of a single word.
///
/// Non-ASCII-alphabetic characters are ignored; a word left with nothing
/// pronounceable is an error.
pub fn g2p_fallback(word: &str) -> Result<Pronunciation> {
    let letters: Vec<u8> = word
        .chars()
        .filter(char::is_ascii_alphabetic)
        .map(|c| c.to_ascii_lowercase() as u8)
        .collect();
    if letters.is_empty() {
        return Err(Error::Unpronounceable(word.to_string()));
    }

    // Silent final e after a consonant ("cake"), but not in tiny words ("be").
    let mut end = letters.len();
    if end > 2 && letters[end - 1] == b'e' && !is_vowel_letter(letters[end - 2]) {
        end -= 1;
    }
    let letters = &letters[..end];

    let mut out = Vec::with_capacity(letters.len());
    let mut i = 0;
    'outer: while i < letters.len() {
        let rest = &letters[i..];
        for (graph, phones) in GRAPHEMES {
            if rest.starts_with(graph.as_bytes()) {
                out.extend_from_slice(phones);
                i += graph.len();
                continue 'outer;
            }
        }
        out.extend_from_slice(letter(rest[0] as char, i + 1 == letters.len() && i > 0));
        i += 1;
    }

    Pronunciation::new(out).map_err(|_| Error::Unpronounceable(word.to_string()))
}
