//! Shared domain vocabulary: polarity labels, word classes, granularity.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Binary sentiment label of a sentence or document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
        })
    }
}

impl FromStr for Polarity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "positive" => Ok(Polarity::Positive),
            "negative" => Ok(Polarity::Negative),
            other => Err(format!("unknown polarity `{other}`")),
        }
    }
}

/// WordNet word class carried by lexicon entries and mapped POS tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WordClass {
    Adjective,
    Adverb,
    Verb,
    Noun,
}

impl WordClass {
    /// Block order of the feature layout: adjective, adverb, verb, noun.
    pub const FEATURE_ORDER: [WordClass; 4] = [
        WordClass::Adjective,
        WordClass::Adverb,
        WordClass::Verb,
        WordClass::Noun,
    ];

    /// Single-letter tag used by the SentiWordNet distribution.
    pub fn letter(self) -> char {
        match self {
            WordClass::Adjective => 'a',
            WordClass::Adverb => 'r',
            WordClass::Verb => 'v',
            WordClass::Noun => 'n',
        }
    }

    /// Parse a SentiWordNet POS letter. `s` (adjective satellite) folds
    /// into `a`.
    pub fn from_letter(c: char) -> Option<WordClass> {
        match c {
            'a' | 's' => Some(WordClass::Adjective),
            'r' => Some(WordClass::Adverb),
            'v' => Some(WordClass::Verb),
            'n' => Some(WordClass::Noun),
            _ => None,
        }
    }

    /// Index of this class within [`WordClass::FEATURE_ORDER`].
    pub fn block_index(self) -> usize {
        match self {
            WordClass::Adjective => 0,
            WordClass::Adverb => 1,
            WordClass::Verb => 2,
            WordClass::Noun => 3,
        }
    }
}

impl fmt::Display for WordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Granularity of a feature vector or dataset row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Sentence,
    Document,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Sentence => "sentence",
            Level::Document => "document",
        })
    }
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sentence" => Ok(Level::Sentence),
            "document" => Ok(Level::Document),
            other => Err(format!("unknown level `{other}`")),
        }
    }
}
