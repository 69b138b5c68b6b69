//! ARPABET phoneme inventory and pronunciations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

macro_rules! phonemes {
    ($($name:ident => $class:ident),* $(,)?) => {
        /// One of the 39 stress-free ARPABET symbols.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        #[repr(u8)]
        pub enum Phoneme {
            $($name),*
        }

        impl Phoneme {
            pub const ALL: [Phoneme; 39] = [$(Phoneme::$name),*];

            pub fn symbol(self) -> &'static str {
                match self {
                    $(Phoneme::$name => stringify!($name)),*
                }
            }

            pub fn class(self) -> PhonemeClass {
                match self {
                    $(Phoneme::$name => PhonemeClass::$class),*
                }
            }

            /// Parses a bare symbol (no stress digit).
            pub fn from_symbol(s: &str) -> Option<Phoneme> {
                match s {
                    $(stringify!($name) => Some(Phoneme::$name),)*
                    _ => None,
                }
            }
        }
    };
}

phonemes! {
    AA => Vowel, AE => Vowel, AH => Vowel, AO => Vowel, AW => Vowel,
    AY => Vowel, EH => Vowel, ER => Vowel, EY => Vowel, IH => Vowel,
    IY => Vowel, OW => Vowel, OY => Vowel, UH => Vowel, UW => Vowel,
    B => Consonant, CH => Consonant, D => Consonant, DH => Consonant,
    F => Consonant, G => Consonant, HH => Consonant, JH => Consonant,
    K => Consonant, L => Consonant, M => Consonant, N => Consonant,
    NG => Consonant, P => Consonant, R => Consonant, S => Consonant,
    SH => Consonant, T => Consonant, TH => Consonant, V => Consonant,
    W => Consonant, Y => Consonant, Z => Consonant, ZH => Consonant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhonemeClass {
    Vowel,
    Consonant,
}

/// Number of cost-table slots: every phoneme plus the gap.
pub const SLOTS: usize = 40;
/// Slot index used for the gap ("none") side of an insertion or deletion.
pub const GAP_SLOT: usize = 39;

impl Phoneme {
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_vowel(self) -> bool {
        self.class() == PhonemeClass::Vowel
    }

    /// Parses a dictionary token, dropping a trailing stress digit.
    pub fn parse_token(token: &str) -> Option<Phoneme> {
        let bare = token.trim_end_matches(['0', '1', '2']);
        Phoneme::from_symbol(bare)
    }
}

/// Slot index of an optional phoneme; `None` maps to [`GAP_SLOT`].
#[inline]
pub fn slot(p: Option<Phoneme>) -> usize {
    p.map_or(GAP_SLOT, Phoneme::index)
}

/// Inverse of [`slot`].
pub fn from_slot(i: usize) -> Option<Phoneme> {
    Phoneme::ALL.get(i).copied()
}

/// Symbol for an optional phoneme, `-` for the gap.
pub fn slot_symbol(p: Option<Phoneme>) -> &'static str {
    p.map_or("-", Phoneme::symbol)
}

impl fmt::Display for Phoneme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Phoneme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Phoneme::parse_token(s).ok_or_else(|| Error::UnknownPhoneme {
            line: 0,
            symbol: s.to_string(),
        })
    }
}

/// Non-empty phoneme sequence for a word or a whole phrase.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pronunciation(Vec<Phoneme>);

impl Pronunciation {
    pub fn new(phonemes: Vec<Phoneme>) -> Result<Self> {
        if phonemes.is_empty() {
            return Err(Error::EmptyPronunciation);
        }
        Ok(Pronunciation(phonemes))
    }

    pub fn phonemes(&self) -> &[Phoneme] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Concatenation without a boundary marker.
    pub fn concat(&self, other: &Pronunciation) -> Pronunciation {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Pronunciation(v)
    }
}

impl AsRef<[Phoneme]> for Pronunciation {
    fn as_ref(&self) -> &[Phoneme] {
        &self.0
    }
}

impl fmt::Display for Pronunciation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(p.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for Pronunciation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let phonemes = s
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        Pronunciation::new(phonemes)
    }
}

impl Serialize for Pronunciation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Pronunciation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
