//! SentiWordNet 3.0 parsing and aggregated polarity lookups.
//!
//! The distribution file is tab-separated with six fields per data line
//! (`POS  ID  PosScore  NegScore  SynsetTerms  Gloss`) and `#` comment
//! lines. Every `lemma#rank` token in `SynsetTerms` contributes one sense
//! record under its lowercased lemma and word class; a lookup aggregates
//! the sense list into one positive and one negative score.

use std::collections::HashMap;
use std::fmt;
use std::io::BufRead;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;
use crate::types::WordClass;

/// Score sum tolerance: `pos + neg` may exceed 1 by at most this much.
pub const SCORE_SUM_TOLERANCE: f64 = 1e-9;

/// Reason a lexicon line was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Wrong number of tab-separated fields.
    FieldCount { found: usize },
    /// POS field is not one of `a n v r` (or `s`).
    InvalidPos { found: String },
    /// Synset id is not a non-negative integer.
    InvalidId { found: String },
    /// A score field does not parse as a number.
    InvalidScore { field: &'static str, found: String },
    /// A score lies outside `[0, 1]`.
    ScoreOutOfRange { field: &'static str, value: f64 },
    /// `pos + neg` exceeds 1 beyond tolerance.
    ScoreSumExceedsOne { sum: f64 },
    /// A `lemma#rank` token is malformed or has rank < 1.
    InvalidTerm { token: String },
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::FieldCount { found } => {
                write!(f, "expected 6 tab-separated fields, found {found}")
            }
            ParseErrorKind::InvalidPos { found } => write!(f, "invalid POS tag `{found}`"),
            ParseErrorKind::InvalidId { found } => write!(f, "invalid synset id `{found}`"),
            ParseErrorKind::InvalidScore { field, found } => {
                write!(f, "non-numeric {field} `{found}`")
            }
            ParseErrorKind::ScoreOutOfRange { field, value } => {
                write!(f, "{field} {value} outside [0, 1]")
            }
            ParseErrorKind::ScoreSumExceedsOne { sum } => {
                write!(f, "pos + neg = {sum} exceeds 1")
            }
            ParseErrorKind::InvalidTerm { token } => write!(f, "malformed term token `{token}`"),
        }
    }
}

/// Lexicon ingestion failure.
#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },
    #[error("i/o error reading lexicon: {0}")]
    Io(#[from] std::io::Error),
}

impl LexiconError {
    /// Line number of a parse error, if this is one.
    pub fn line(&self) -> Option<usize> {
        match self {
            LexiconError::Parse { line, .. } => Some(*line),
            LexiconError::Io(_) => None,
        }
    }
}

/// One parsed synset line.
#[derive(Debug, Clone, PartialEq)]
pub struct SynsetEntry<F: Scalar = f64> {
    pub pos: WordClass,
    pub synset_id: u64,
    pub pos_score: F,
    pub neg_score: F,
    /// `(lemma, sense_rank)` pairs; lemmas lowercased, ranks ≥ 1.
    pub terms: Vec<(String, u32)>,
}

impl<F: Scalar> SynsetEntry<F> {
    /// Objectivity implied by the two polarity scores.
    pub fn objectivity(&self) -> F {
        F::one() - self.pos_score - self.neg_score
    }
}

/// One sense record under a `(lemma, pos)` key.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SenseScore<F: Scalar = f64> {
    pub rank: u32,
    pub positive: F,
    pub negative: F,
}

/// How a sense list collapses into a single score pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AggregationMode {
    /// Convex combination with weights `(1/rank) / Σ(1/rank)`.
    RankWeighted,
    /// Lowest-rank sense only.
    FirstSense,
    /// Unweighted mean over senses.
    Uniform,
}

impl Default for AggregationMode {
    fn default() -> Self {
        AggregationMode::RankWeighted
    }
}

impl fmt::Display for AggregationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AggregationMode::RankWeighted => "rank-weighted",
            AggregationMode::FirstSense => "first-sense",
            AggregationMode::Uniform => "uniform",
        })
    }
}

impl std::str::FromStr for AggregationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rank-weighted" => Ok(AggregationMode::RankWeighted),
            "first-sense" => Ok(AggregationMode::FirstSense),
            "uniform" => Ok(AggregationMode::Uniform),
            other => Err(format!("unknown aggregation mode `{other}`")),
        }
    }
}

/// Aggregated polarity scores for one lookup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WordSentiment<F: Scalar = f64> {
    pub positive: F,
    pub negative: F,
    pub found: bool,
}

impl<F: Scalar> WordSentiment<F> {
    /// The miss value: zeros, not found.
    pub fn absent() -> Self {
        WordSentiment {
            positive: F::zero(),
            negative: F::zero(),
            found: false,
        }
    }
}

/// Immutable `(lemma, pos) → senses` index over a parsed lexicon.
#[derive(Debug, Clone)]
pub struct LexiconIndex<F: Scalar = f64> {
    senses: HashMap<(String, WordClass), Vec<SenseScore<F>>>,
    mode: AggregationMode,
    entry_count: usize,
    duplicate_count: usize,
}

impl<F: Scalar> Default for LexiconIndex<F> {
    fn default() -> Self {
        LexiconIndex {
            senses: HashMap::new(),
            mode: AggregationMode::default(),
            entry_count: 0,
            duplicate_count: 0,
        }
    }
}

impl<F: Scalar> LexiconIndex<F> {
    /// Build an index directly from sense records (fixtures, tests).
    /// Duplicate `(lemma, pos, rank)` records keep the first occurrence.
    pub fn from_records<I>(records: I, mode: AggregationMode) -> Self
    where
        I: IntoIterator<Item = (String, WordClass, SenseScore<F>)>,
    {
        let mut index = LexiconIndex {
            mode,
            ..LexiconIndex::default()
        };
        for (lemma, pos, sense) in records {
            index.insert(lemma.to_lowercase(), pos, sense);
        }
        index.finish();
        index
    }

    fn insert(&mut self, lemma: String, pos: WordClass, sense: SenseScore<F>) {
        self.senses.entry((lemma, pos)).or_default().push(sense);
    }

    fn add_entry(&mut self, entry: &SynsetEntry<F>) {
        self.entry_count += 1;
        for (lemma, rank) in &entry.terms {
            self.insert(
                lemma.clone(),
                entry.pos,
                SenseScore {
                    rank: *rank,
                    positive: entry.pos_score,
                    negative: entry.neg_score,
                },
            );
        }
    }

    /// Sort each sense list by rank and drop later duplicates (first wins).
    fn finish(&mut self) {
        for list in self.senses.values_mut() {
            // stable sort keeps first occurrence first within equal ranks
            list.sort_by_key(|s| s.rank);
            let before = list.len();
            list.dedup_by_key(|s| s.rank);
            self.duplicate_count += before - list.len();
        }
    }

    /// Number of synset entries (data lines) ingested.
    pub fn entry_count(&self) -> usize {
        self.entry_count
    }

    /// Number of distinct `(lemma, pos)` keys.
    pub fn key_count(&self) -> usize {
        self.senses.len()
    }

    /// Duplicate `(lemma, pos, rank)` records dropped during construction.
    pub fn duplicate_count(&self) -> usize {
        self.duplicate_count
    }

    /// Active sense aggregation mode.
    pub fn mode(&self) -> AggregationMode {
        self.mode
    }

    /// Same index with a different aggregation mode.
    pub fn with_mode(mut self, mode: AggregationMode) -> Self {
        self.mode = mode;
        self
    }

    /// Sense list for a key, sorted ascending by rank.
    pub fn senses(&self, lemma: &str, pos: WordClass) -> Option<&[SenseScore<F>]> {
        let key = (lemma.to_lowercase(), pos);
        self.senses.get(&key).map(Vec::as_slice)
    }

    /// Every `(lemma, pos, rank, positive, negative)` record, sorted.
    pub fn sense_records(&self) -> Vec<(String, WordClass, u32, F, F)> {
        let mut out: Vec<_> = self
            .senses
            .iter()
            .flat_map(|((lemma, pos), list)| {
                list.iter()
                    .map(move |s| (lemma.clone(), *pos, s.rank, s.positive, s.negative))
            })
            .collect();
        out.sort_by(|a, b| (&a.0, a.1, a.2).cmp(&(&b.0, b.1, b.2)));
        out
    }

    /// Aggregated scores for `(lemma, pos)`. Absence is a value, not an
    /// error; lemmas are lowercased internally.
    pub fn lookup(&self, lemma: &str, pos: WordClass) -> WordSentiment<F> {
        let senses = if lemma.chars().any(char::is_uppercase) {
            self.senses.get(&(lemma.to_lowercase(), pos))
        } else {
            // avoid the allocation on the common lowercase path
            self.senses.get(&(lemma.to_string(), pos))
        };
        let Some(senses) = senses else {
            return WordSentiment::absent();
        };
        debug_assert!(!senses.is_empty());
        let (pos_score, neg_score) = match self.mode {
            AggregationMode::FirstSense => {
                let first = &senses[0];
                (first.positive, first.negative)
            }
            AggregationMode::RankWeighted => {
                let mut total = F::zero();
                let mut p = F::zero();
                let mut n = F::zero();
                for s in senses {
                    let w = F::one() / F::from_u32(s.rank).expect("rank fits scalar");
                    total += w;
                    p += w * s.positive;
                    n += w * s.negative;
                }
                (p / total, n / total)
            }
            AggregationMode::Uniform => {
                let count = F::from_usize(senses.len()).expect("len fits scalar");
                let p: F = senses.iter().map(|s| s.positive).sum();
                let n: F = senses.iter().map(|s| s.negative).sum();
                (p / count, n / count)
            }
        };
        WordSentiment {
            positive: pos_score,
            negative: neg_score,
            found: true,
        }
    }
}

/// Parse one data line (1-based `line_no`); `Ok(None)` for comments and
/// blank lines.
fn parse_line<F: Scalar>(
    line: &str,
    line_no: usize,
) -> Result<Option<SynsetEntry<F>>, LexiconError> {
    let trimmed = line.trim_end_matches(['\r', '\n']);
    if trimmed.trim().is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let err = |kind| LexiconError::Parse { line: line_no, kind };

    let fields: Vec<&str> = trimmed.split('\t').collect();
    if fields.len() != 6 {
        return Err(err(ParseErrorKind::FieldCount {
            found: fields.len(),
        }));
    }

    let pos_field = fields[0].trim();
    let mut chars = pos_field.chars();
    let pos = match (chars.next().and_then(WordClass::from_letter), chars.next()) {
        (Some(pos), None) => pos,
        _ => {
            return Err(err(ParseErrorKind::InvalidPos {
                found: pos_field.to_string(),
            }))
        }
    };

    let synset_id: u64 = fields[1].trim().parse().map_err(|_| {
        err(ParseErrorKind::InvalidId {
            found: fields[1].trim().to_string(),
        })
    })?;

    let score = |field: &'static str, raw: &str| -> Result<f64, LexiconError> {
        let value: f64 = raw.trim().parse().map_err(|_| {
            LexiconError::Parse {
                line: line_no,
                kind: ParseErrorKind::InvalidScore {
                    field,
                    found: raw.trim().to_string(),
                },
            }
        })?;
        if !(0.0..=1.0).contains(&value) {
            return Err(LexiconError::Parse {
                line: line_no,
                kind: ParseErrorKind::ScoreOutOfRange { field, value },
            });
        }
        Ok(value)
    };
    let pos_score = score("PosScore", fields[2])?;
    let neg_score = score("NegScore", fields[3])?;
    if pos_score + neg_score > 1.0 + SCORE_SUM_TOLERANCE {
        return Err(err(ParseErrorKind::ScoreSumExceedsOne {
            sum: pos_score + neg_score,
        }));
    }

    let mut terms = Vec::new();
    for token in fields[4].split_whitespace() {
        let (lemma, rank) = token.rsplit_once('#').ok_or_else(|| LexiconError::Parse {
            line: line_no,
            kind: ParseErrorKind::InvalidTerm {
                token: token.to_string(),
            },
        })?;
        let rank: u32 = rank.parse().map_err(|_| LexiconError::Parse {
            line: line_no,
            kind: ParseErrorKind::InvalidTerm {
                token: token.to_string(),
            },
        })?;
        if lemma.is_empty() || rank < 1 {
            return Err(err(ParseErrorKind::InvalidTerm {
                token: token.to_string(),
            }));
        }
        terms.push((lemma.to_lowercase(), rank));
    }

    Ok(Some(SynsetEntry {
        pos,
        synset_id,
        pos_score: F::from_f64_lossy(pos_score),
        neg_score: F::from_f64_lossy(neg_score),
        terms,
    }))
}

/// Parse a SentiWordNet stream, failing on the first malformed line.
/// Empty input yields an empty index.
pub fn parse_lexicon<F: Scalar, R: BufRead>(reader: R) -> Result<LexiconIndex<F>, LexiconError> {
    let mut index = LexiconIndex::default();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if let Some(entry) = parse_line::<F>(&line, i + 1)? {
            index.add_entry(&entry);
        }
    }
    index.finish();
    Ok(index)
}

/// Lenient scan for `lexicon validate`: keeps well-formed lines, collects
/// one error per malformed line.
pub fn scan_lexicon<F: Scalar, R: BufRead>(
    reader: R,
) -> Result<(LexiconIndex<F>, Vec<LexiconError>), std::io::Error> {
    let mut index = LexiconIndex::default();
    let mut violations = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        match parse_line::<F>(&line, i + 1) {
            Ok(Some(entry)) => index.add_entry(&entry),
            Ok(None) => {}
            Err(e) => violations.push(e),
        }
    }
    index.finish();
    Ok((index, violations))
}
