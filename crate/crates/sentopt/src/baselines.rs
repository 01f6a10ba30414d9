//! Lexicon-only classifiers: term counting, sum-on-review, and
//! average-on-review, each thresholded on a per-document statistic.
//!
//! Ties always go positive: a document is predicted positive exactly when
//! its decision statistic is at or above the threshold.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, ReviewDocument, Sentence};
use crate::features::{ratio, token_polarity};
use crate::lexicon::LexiconIndex;
use crate::scalar::Scalar;
use crate::types::Polarity;

/// Outcome of one baseline classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineDecision<F: Scalar = f64> {
    pub predicted: Polarity,
    pub pos_total: F,
    pub neg_total: F,
}

/// Which baseline rule to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaselineRule {
    TermCount,
    SumOnReview,
    AverageOnReview,
}

impl fmt::Display for BaselineRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaselineRule::TermCount => "term-count",
            BaselineRule::SumOnReview => "sum",
            BaselineRule::AverageOnReview => "average",
        })
    }
}

impl FromStr for BaselineRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "term-count" => Ok(BaselineRule::TermCount),
            "sum" => Ok(BaselineRule::SumOnReview),
            "average" => Ok(BaselineRule::AverageOnReview),
            other => Err(format!("unknown baseline rule `{other}`")),
        }
    }
}

fn decide<F: Scalar>(pos_total: F, neg_total: F, threshold: F) -> BaselineDecision<F> {
    let predicted = if pos_total - neg_total >= threshold {
        Polarity::Positive
    } else {
        Polarity::Negative
    };
    BaselineDecision {
        predicted,
        pos_total,
        neg_total,
    }
}

/// Count positive and negative terms over all sentences; the class with
/// the higher count wins (ties positive).
pub fn term_count_classify<F: Scalar>(
    doc: &ReviewDocument,
    index: &LexiconIndex<F>,
) -> BaselineDecision<F> {
    term_count_with_threshold(doc, index, F::zero())
}

fn term_count_with_threshold<F: Scalar>(
    doc: &ReviewDocument,
    index: &LexiconIndex<F>,
    threshold: F,
) -> BaselineDecision<F> {
    let mut pos = 0usize;
    let mut neg = 0usize;
    for sentence in &doc.sentences {
        for token in &sentence.tokens {
            let Some(wn_pos) = token.wn_pos else { continue };
            match token_polarity(&index.lookup(&token.surface, wn_pos)) {
                Some(Polarity::Positive) => pos += 1,
                Some(Polarity::Negative) => neg += 1,
                None => {}
            }
        }
    }
    let count = |n: usize| F::from_usize(n).expect("count fits scalar");
    decide(count(pos), count(neg), threshold)
}

/// Per-sentence summed scores, accumulated in sentence order so the totals
/// match the document feature vector bit for bit.
fn sentence_score_sums<F: Scalar>(sentence: &Sentence, index: &LexiconIndex<F>) -> (F, F, usize) {
    let mut pos = F::zero();
    let mut neg = F::zero();
    let mut found = 0usize;
    for token in &sentence.tokens {
        let Some(wn_pos) = token.wn_pos else { continue };
        let sentiment = index.lookup(&token.surface, wn_pos);
        if sentiment.found {
            pos += sentiment.positive;
            neg += sentiment.negative;
            found += 1;
        }
    }
    (pos, neg, found)
}

/// Sum all positive and all negative scores over the review; positive when
/// the difference is at or above the threshold.
pub fn sum_on_review<F: Scalar>(
    doc: &ReviewDocument,
    index: &LexiconIndex<F>,
    threshold: F,
) -> BaselineDecision<F> {
    let mut pos = F::zero();
    let mut neg = F::zero();
    for sentence in &doc.sentences {
        let (p, n, _) = sentence_score_sums(sentence, index);
        pos += p;
        neg += n;
    }
    decide(pos, neg, threshold)
}

/// Average the per-sentence normalized score difference over the review;
/// a sentence with no found terms contributes 0.
pub fn average_on_review<F: Scalar>(
    doc: &ReviewDocument,
    index: &LexiconIndex<F>,
    threshold: F,
) -> BaselineDecision<F> {
    let mut pos_mean = F::zero();
    let mut neg_mean = F::zero();
    for sentence in &doc.sentences {
        let (p, n, found) = sentence_score_sums(sentence, index);
        if found > 0 {
            let f = F::from_usize(found).expect("count fits scalar");
            pos_mean += p / f;
            neg_mean += n / f;
        }
    }
    let count = F::from_usize(doc.sentences.len()).expect("count fits scalar");
    decide(pos_mean / count, neg_mean / count, threshold)
}

/// Run one rule at one threshold.
pub fn classify_with<F: Scalar>(
    rule: BaselineRule,
    doc: &ReviewDocument,
    index: &LexiconIndex<F>,
    threshold: F,
) -> BaselineDecision<F> {
    match rule {
        BaselineRule::TermCount => term_count_with_threshold(doc, index, threshold),
        BaselineRule::SumOnReview => sum_on_review(doc, index, threshold),
        BaselineRule::AverageOnReview => average_on_review(doc, index, threshold),
    }
}

/// Whole-corpus accuracy of a rule at each threshold. These rules learn
/// nothing, so there is no folding.
pub fn threshold_sweep<F: Scalar>(
    corpus: &Corpus,
    index: &LexiconIndex<F>,
    rule: BaselineRule,
    thresholds: &[F],
) -> Vec<(F, f64)> {
    thresholds
        .iter()
        .map(|&threshold| {
            let correct = corpus
                .documents()
                .iter()
                .filter(|doc| classify_with(rule, doc, index, threshold).predicted == doc.label)
                .count();
            (threshold, correct as f64 / corpus.len() as f64)
        })
        .collect()
}

/// `ratio` re-export point used by callers comparing rule statistics; the
/// convention matches the feature layout's.
pub fn statistic_ratio<F: Scalar>(a: F, b: F) -> F {
    ratio(a, b)
}
