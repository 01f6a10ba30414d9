//! Review-corpus ingestion, POS-tag plumbing, and stratified folding.
//!
//! The interchange format is JSON lines: one document record per line with
//! `id`, `domain`, `label`, and `sentences`, each sentence carrying a
//! `label` plus either explicit `tokens` ( `[surface, ptb_tag]` pairs ) or
//! raw `text` routed through the fallback tagger. Neutral sentences and
//! documents are dropped with counted warnings; only positive and negative
//! content is retained.

use std::collections::HashSet;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::types::{Polarity, WordClass};

/// Product domains of the cross-domain corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Books,
    Dvds,
    Electronics,
    Music,
    Videogames,
}

impl Domain {
    pub const ALL: [Domain; 5] = [
        Domain::Books,
        Domain::Dvds,
        Domain::Electronics,
        Domain::Music,
        Domain::Videogames,
    ];
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Books => "books",
            Domain::Dvds => "dvds",
            Domain::Electronics => "electronics",
            Domain::Music => "music",
            Domain::Videogames => "videogames",
        })
    }
}

impl FromStr for Domain {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "books" => Ok(Domain::Books),
            "dvds" => Ok(Domain::Dvds),
            "electronics" => Ok(Domain::Electronics),
            "music" => Ok(Domain::Music),
            "videogames" => Ok(Domain::Videogames),
            other => Err(format!("unknown domain `{other}`")),
        }
    }
}

/// A surface token with its Penn Treebank tag and derived word class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedToken {
    pub surface: String,
    pub ptb_tag: String,
    /// `map_tag(ptb_tag)`; `None` for non-content tags.
    pub wn_pos: Option<WordClass>,
}

impl TaggedToken {
    pub fn new(surface: impl Into<String>, ptb_tag: impl Into<String>) -> Self {
        let ptb_tag = ptb_tag.into();
        let wn_pos = map_tag(&ptb_tag);
        TaggedToken {
            surface: surface.into(),
            ptb_tag,
            wn_pos,
        }
    }
}

/// A labeled, tagged sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub tokens: Vec<TaggedToken>,
    pub label: Polarity,
}

/// A labeled, domain-tagged review.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReviewDocument {
    pub id: String,
    pub domain: Domain,
    pub label: Polarity,
    pub sentences: Vec<Sentence>,
}

/// An immutable collection of review documents with distinct ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    documents: Vec<ReviewDocument>,
}

impl Corpus {
    /// Wrap documents, enforcing id uniqueness.
    pub fn new(documents: Vec<ReviewDocument>) -> Result<Self, CorpusError> {
        let mut seen = HashSet::new();
        for doc in &documents {
            if !seen.insert(doc.id.clone()) {
                return Err(CorpusError::DuplicateId {
                    id: doc.id.clone(),
                });
            }
        }
        Ok(Corpus { documents })
    }

    pub fn documents(&self) -> &[ReviewDocument] {
        &self.documents
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    /// Document and sentence counts by domain and polarity.
    pub fn stats(&self) -> CorpusStats {
        let mut stats = CorpusStats::default();
        for doc in &self.documents {
            let d = Domain::ALL.iter().position(|x| *x == doc.domain).unwrap();
            let p = (doc.label == Polarity::Negative) as usize;
            stats.documents[p][d] += 1;
            for sentence in &doc.sentences {
                let sp = (sentence.label == Polarity::Negative) as usize;
                stats.sentences[sp][d] += 1;
            }
        }
        stats
    }
}

/// Counts indexed `[polarity][domain]`: polarity 0 = positive, 1 = negative;
/// domains in [`Domain::ALL`] order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusStats {
    pub documents: [[usize; 5]; 2],
    pub sentences: [[usize; 5]; 2],
}

impl CorpusStats {
    pub fn document_total(&self, polarity: Polarity) -> usize {
        self.documents[(polarity == Polarity::Negative) as usize]
            .iter()
            .sum()
    }

    pub fn sentence_total(&self, polarity: Polarity) -> usize {
        self.sentences[(polarity == Polarity::Negative) as usize]
            .iter()
            .sum()
    }
}

/// Counted warnings from one `load_corpus` run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadStats {
    /// Documents excluded for a `neutral` label.
    pub neutral_documents: usize,
    /// Sentences excluded for a `neutral` label.
    pub neutral_sentences: usize,
    /// Non-neutral documents dropped because every sentence was neutral.
    pub emptied_documents: usize,
    /// Sentences tagged by the fallback tagger (no explicit tokens).
    pub fallback_tagged_sentences: usize,
}

/// A loaded corpus together with its warning counts.
#[derive(Debug, Clone)]
pub struct LoadOutcome {
    pub corpus: Corpus,
    pub stats: LoadStats,
}

/// Corpus ingestion or folding failure.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("record {record}: invalid JSON: {message}")]
    Json { record: usize, message: String },
    #[error("record {record} ({id}): unknown domain `{value}`")]
    UnknownDomain {
        record: usize,
        id: String,
        value: String,
    },
    #[error("record {record} ({id}): unknown label `{value}` in field {field}")]
    UnknownLabel {
        record: usize,
        id: String,
        field: String,
        value: String,
    },
    #[error("duplicate document id `{id}`")]
    DuplicateId { id: String },
    #[error("record {record} ({id}): sentence {index} is empty")]
    EmptySentence {
        record: usize,
        id: String,
        index: usize,
    },
    #[error("record {record} ({id}): field `sentences` is empty")]
    NoSentences { record: usize, id: String },
    #[error("k must be at least 2, got {k}")]
    InvalidFoldCount { k: usize },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Serialize, Deserialize)]
struct DocumentRecord {
    id: String,
    domain: String,
    label: String,
    sentences: Vec<SentenceRecord>,
}

#[derive(Serialize, Deserialize)]
struct SentenceRecord {
    label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    text: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tokens: Option<Vec<(String, String)>>,
}

fn parse_label(
    raw: &str,
    record: usize,
    id: &str,
    field: &str,
) -> Result<Option<Polarity>, CorpusError> {
    match raw {
        "positive" => Ok(Some(Polarity::Positive)),
        "negative" => Ok(Some(Polarity::Negative)),
        "neutral" => Ok(None),
        other => Err(CorpusError::UnknownLabel {
            record,
            id: id.to_string(),
            field: field.to_string(),
            value: other.to_string(),
        }),
    }
}

/// Load the JSON-lines corpus format. Neutral sentences and documents are
/// dropped with counted warnings; untokenized sentences go through
/// [`fallback_tag`].
pub fn load_corpus<R: BufRead>(reader: R) -> Result<LoadOutcome, CorpusError> {
    let mut documents = Vec::new();
    let mut stats = LoadStats::default();
    let mut seen = HashSet::new();

    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let record_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let record: DocumentRecord =
            serde_json::from_str(&line).map_err(|e| CorpusError::Json {
                record: record_no,
                message: e.to_string(),
            })?;
        if !seen.insert(record.id.clone()) {
            return Err(CorpusError::DuplicateId { id: record.id });
        }
        let domain: Domain =
            record
                .domain
                .parse()
                .map_err(|_| CorpusError::UnknownDomain {
                    record: record_no,
                    id: record.id.clone(),
                    value: record.domain.clone(),
                })?;
        let label = match parse_label(&record.label, record_no, &record.id, "label")? {
            Some(label) => label,
            None => {
                stats.neutral_documents += 1;
                continue;
            }
        };
        if record.sentences.is_empty() {
            return Err(CorpusError::NoSentences {
                record: record_no,
                id: record.id,
            });
        }

        let mut sentences = Vec::new();
        for (s_idx, sentence) in record.sentences.iter().enumerate() {
            let s_label =
                match parse_label(&sentence.label, record_no, &record.id, "sentences.label")? {
                    Some(label) => label,
                    None => {
                        stats.neutral_sentences += 1;
                        continue;
                    }
                };
            let tokens = match (&sentence.tokens, &sentence.text) {
                (Some(tokens), _) if !tokens.is_empty() => tokens
                    .iter()
                    .map(|(surface, tag)| TaggedToken::new(surface.clone(), tag.clone()))
                    .collect(),
                (None, Some(text)) if !text.trim().is_empty() => {
                    stats.fallback_tagged_sentences += 1;
                    fallback_tag(text)
                }
                _ => {
                    return Err(CorpusError::EmptySentence {
                        record: record_no,
                        id: record.id,
                        index: s_idx,
                    })
                }
            };
            if tokens.is_empty() {
                return Err(CorpusError::EmptySentence {
                    record: record_no,
                    id: record.id,
                    index: s_idx,
                });
            }
            sentences.push(Sentence {
                tokens,
                label: s_label,
            });
        }
        if sentences.is_empty() {
            // every sentence was neutral: nothing left to classify
            stats.emptied_documents += 1;
            continue;
        }
        documents.push(ReviewDocument {
            id: record.id,
            domain,
            label,
            sentences,
        });
    }
    Ok(LoadOutcome {
        corpus: Corpus { documents },
        stats,
    })
}

/// Write a corpus back out in the JSON-lines format with explicit tokens.
pub fn save_corpus<W: Write>(corpus: &Corpus, mut writer: W) -> Result<(), CorpusError> {
    for doc in corpus.documents() {
        let record = DocumentRecord {
            id: doc.id.clone(),
            domain: doc.domain.to_string(),
            label: doc.label.to_string(),
            sentences: doc
                .sentences
                .iter()
                .map(|s| SentenceRecord {
                    label: s.label.to_string(),
                    text: None,
                    tokens: Some(
                        s.tokens
                            .iter()
                            .map(|t| (t.surface.clone(), t.ptb_tag.clone()))
                            .collect(),
                    ),
                })
                .collect(),
        };
        let json = serde_json::to_string(&record).expect("corpus record serializes");
        writeln!(writer, "{json}")?;
    }
    Ok(())
}

/// Penn Treebank tag → WordNet word class. Total and pure; non-content
/// tags map to `None`.
pub fn map_tag(ptb_tag: &str) -> Option<WordClass> {
    match ptb_tag {
        "JJ" | "JJR" | "JJS" => Some(WordClass::Adjective),
        "NN" | "NNS" | "NNP" | "NNPS" => Some(WordClass::Noun),
        "VB" | "VBD" | "VBG" | "VBN" | "VBP" | "VBZ" => Some(WordClass::Verb),
        "RB" | "RBR" | "RBS" => Some(WordClass::Adverb),
        _ => None,
    }
}

/// Closed-class words the fallback tagger knows outright.
fn closed_class_tag(word: &str) -> Option<&'static str> {
    let tag = match word {
        "the" | "a" | "an" | "this" | "that" | "these" | "those" | "no" | "every" | "each"
        | "some" | "any" => "DT",
        "and" | "or" | "but" | "nor" | "yet" => "CC",
        "in" | "on" | "at" | "of" | "to" | "for" | "with" | "by" | "from" | "as" | "about"
        | "into" | "over" | "after" | "before" | "if" | "because" | "while" | "than" => "IN",
        "i" | "you" | "he" | "she" | "it" | "we" | "they" | "me" | "him" | "her" | "us"
        | "them" => "PRP",
        "my" | "your" | "his" | "its" | "our" | "their" => "PRP$",
        "is" | "has" | "does" => "VBZ",
        "am" | "are" | "have" | "do" => "VBP",
        "was" | "were" | "had" | "did" => "VBD",
        "be" => "VB",
        "been" => "VBN",
        "being" => "VBG",
        "will" | "would" | "can" | "could" | "may" | "might" | "must" | "shall" | "should" => {
            "MD"
        }
        "not" | "n't" | "very" | "too" | "so" | "never" | "also" | "just" => "RB",
        _ => return None,
    };
    Some(tag)
}

/// Deterministic rule-based tagger for untokenized input: closed-class
/// list, then suffix rules, default `NN`. Deliberately crude; a stand-in
/// for externally tagged text, not a competitor to it.
pub fn fallback_tag(sentence_text: &str) -> Vec<TaggedToken> {
    let mut tokens = Vec::new();
    let mut word = String::new();
    let mut flush = |word: &mut String, tokens: &mut Vec<TaggedToken>| {
        if word.is_empty() {
            return;
        }
        let lower = word.to_lowercase();
        let tag = closed_class_tag(&lower).unwrap_or_else(|| suffix_tag(&lower));
        tokens.push(TaggedToken::new(std::mem::take(word), tag));
    };
    for c in sentence_text.chars() {
        if c.is_alphanumeric() || c == '\'' {
            word.push(c);
        } else {
            flush(&mut word, &mut tokens);
            if !c.is_whitespace() {
                // punctuation becomes its own token, tagged as itself
                tokens.push(TaggedToken::new(c.to_string(), c.to_string()));
            }
        }
    }
    flush(&mut word, &mut tokens);
    tokens
}

fn suffix_tag(lower: &str) -> &'static str {
    let long_enough = |suffix: &str| lower.len() >= suffix.len() + 2;
    if lower.ends_with("ly") && long_enough("ly") {
        "RB"
    } else if lower.ends_with("ing") && long_enough("ing") {
        "VBG"
    } else if lower.ends_with("ed") && long_enough("ed") {
        "VBD"
    } else if (lower.ends_with("ous") && long_enough("ous"))
        || (lower.ends_with("ful") && long_enough("ful"))
        || (lower.ends_with("able") && long_enough("able"))
        || (lower.ends_with("ive") && long_enough("ive"))
    {
        "JJ"
    } else {
        "NN"
    }
}

/// A fold partition of a corpus keyed by document id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldAssignment {
    k: usize,
    assignment: std::collections::BTreeMap<String, usize>,
}

impl FoldAssignment {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn fold_of(&self, id: &str) -> Option<usize> {
        self.assignment.get(id).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.assignment.iter().map(|(id, f)| (id.as_str(), *f))
    }

    /// Document count per fold.
    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.k];
        for (_, fold) in self.iter() {
            sizes[fold] += 1;
        }
        sizes
    }
}

/// Deal documents into `k` folds, stratified by label: each stratum is
/// shuffled with the seeded generator and dealt round-robin, so per-class
/// fold sizes differ by at most one. Deterministic for fixed inputs.
pub fn stratified_folds(
    corpus: &Corpus,
    k: usize,
    seed: u64,
) -> Result<FoldAssignment, CorpusError> {
    if k < 2 {
        return Err(CorpusError::InvalidFoldCount { k });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = std::collections::BTreeMap::new();
    for label in [Polarity::Positive, Polarity::Negative] {
        let mut ids: Vec<&str> = corpus
            .documents()
            .iter()
            .filter(|d| d.label == label)
            .map(|d| d.id.as_str())
            .collect();
        ids.shuffle(&mut rng);
        for (i, id) in ids.into_iter().enumerate() {
            assignment.insert(id.to_string(), i % k);
        }
    }
    Ok(FoldAssignment { k, assignment })
}
