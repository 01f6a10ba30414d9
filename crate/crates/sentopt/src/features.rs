//! The 32-slot feature vector: extraction, aggregation, weighting,
//! standardization.
//!
//! Layout (POS block order: adjective, adverb, verb, noun):
//!
//! | slots  | content                                                        |
//! |--------|----------------------------------------------------------------|
//! | 0–15   | per POS: pos score sum, neg score sum, pos terms, neg terms    |
//! | 16–23  | per POS: pos score sum / found, neg score sum / found          |
//! | 24–27  | overall: pos score sum, neg score sum, pos terms, neg terms    |
//! | 28–29  | overall: pos score sum / found, neg score sum / found          |
//! | 30     | pos score sum : neg score sum ratio                            |
//! | 31     | pos terms : neg terms ratio                                    |
//!
//! A found token counts as positive when its positive score strictly
//! exceeds its negative score, as negative in the opposite case, and as
//! neither on ties; `found` counts every hit regardless of polarity.
//! Ratios use a total convention: `a/b` when `b > 0`, otherwise `a`.
//! Document vectors are the slotwise sums of their sentence vectors.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{Corpus, Sentence};
use crate::lexicon::{LexiconIndex, WordSentiment};
use crate::scalar::Scalar;
use crate::types::{Level, Polarity, WordClass};

/// Fixed dimensionality of the feature space.
pub const FEATURE_COUNT: usize = 32;

/// Column names in slot order, used by the CSV emitter.
pub const SLOT_NAMES: [&str; FEATURE_COUNT] = [
    "adj_pos_score_sum",
    "adj_neg_score_sum",
    "adj_pos_terms",
    "adj_neg_terms",
    "adv_pos_score_sum",
    "adv_neg_score_sum",
    "adv_pos_terms",
    "adv_neg_terms",
    "verb_pos_score_sum",
    "verb_neg_score_sum",
    "verb_pos_terms",
    "verb_neg_terms",
    "noun_pos_score_sum",
    "noun_neg_score_sum",
    "noun_pos_terms",
    "noun_neg_terms",
    "adj_pos_score_ratio",
    "adj_neg_score_ratio",
    "adv_pos_score_ratio",
    "adv_neg_score_ratio",
    "verb_pos_score_ratio",
    "verb_neg_score_ratio",
    "noun_pos_score_ratio",
    "noun_neg_score_ratio",
    "all_pos_score_sum",
    "all_neg_score_sum",
    "all_pos_terms",
    "all_neg_terms",
    "all_pos_score_ratio",
    "all_neg_score_ratio",
    "pos_to_neg_score_ratio",
    "pos_to_neg_term_ratio",
];

/// Feature computation failure.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FeatureError {
    #[error("a document needs at least one sentence vector")]
    EmptyDocument,
    #[error("standardization needs at least 2 training vectors, got {found}")]
    TooFewVectors { found: usize },
}

/// A fixed 32-slot feature vector at sentence or document granularity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector<F: Scalar = f64> {
    values: [F; FEATURE_COUNT],
    level: Level,
}

impl<F: Scalar> FeatureVector<F> {
    pub fn new(values: [F; FEATURE_COUNT], level: Level) -> Self {
        FeatureVector { values, level }
    }

    pub fn zeros(level: Level) -> Self {
        FeatureVector {
            values: [F::zero(); FEATURE_COUNT],
            level,
        }
    }

    pub fn values(&self) -> &[F; FEATURE_COUNT] {
        &self.values
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn get(&self, slot: usize) -> F {
        self.values[slot]
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

/// Per-feature multipliers searched by the evolutionary strategy; every
/// weight lies in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightVector<F: Scalar = f64> {
    weights: [F; FEATURE_COUNT],
}

impl<F: Scalar> WeightVector<F> {
    /// The identity weighting.
    pub fn ones() -> Self {
        WeightVector {
            weights: [F::one(); FEATURE_COUNT],
        }
    }

    /// Wrap raw weights, rejecting values outside `[0, 1]`.
    pub fn new(weights: [F; FEATURE_COUNT]) -> Result<Self, String> {
        for (i, w) in weights.iter().enumerate() {
            if !(*w >= F::zero() && *w <= F::one()) {
                return Err(format!("weight {i} = {w} outside [0, 1]"));
            }
        }
        Ok(WeightVector { weights })
    }

    /// Wrap raw weights, clamping each into `[0, 1]`.
    pub fn clamped(mut weights: [F; FEATURE_COUNT]) -> Self {
        for w in &mut weights {
            *w = w.max(F::zero()).min(F::one());
        }
        WeightVector { weights }
    }

    pub fn weights(&self) -> &[F; FEATURE_COUNT] {
        &self.weights
    }

    pub fn get(&self, slot: usize) -> F {
        self.weights[slot]
    }
}

impl<F: Scalar> Default for WeightVector<F> {
    fn default() -> Self {
        WeightVector::ones()
    }
}

/// Total ratio convention: `a / b` when `b > 0`, else `a` (which is `0`
/// when both are `0`). Never produces an infinity for finite inputs.
pub fn ratio<F: Scalar>(a: F, b: F) -> F {
    if b > F::zero() {
        a / b
    } else {
        a
    }
}

/// Polarity of one looked-up token: positive when its positive score
/// strictly exceeds its negative score, negative in the opposite case,
/// `None` on a miss or a tie.
pub fn token_polarity<F: Scalar>(sentiment: &WordSentiment<F>) -> Option<Polarity> {
    if !sentiment.found {
        return None;
    }
    if sentiment.positive > sentiment.negative {
        Some(Polarity::Positive)
    } else if sentiment.negative > sentiment.positive {
        Some(Polarity::Negative)
    } else {
        None
    }
}

/// Running sums and counts for one POS block.
#[derive(Debug, Clone, Copy, PartialEq)]
struct BlockTally<F: Scalar> {
    pos_sum: F,
    neg_sum: F,
    pos_count: usize,
    neg_count: usize,
    found: usize,
}

impl<F: Scalar> Default for BlockTally<F> {
    fn default() -> Self {
        BlockTally {
            pos_sum: F::zero(),
            neg_sum: F::zero(),
            pos_count: 0,
            neg_count: 0,
            found: 0,
        }
    }
}

impl<F: Scalar> BlockTally<F> {
    fn absorb(&mut self, sentiment: &WordSentiment<F>) {
        self.found += 1;
        self.pos_sum += sentiment.positive;
        self.neg_sum += sentiment.negative;
        match token_polarity(sentiment) {
            Some(Polarity::Positive) => self.pos_count += 1,
            Some(Polarity::Negative) => self.neg_count += 1,
            None => {}
        }
    }

    fn merge(&mut self, other: &BlockTally<F>) {
        self.pos_sum += other.pos_sum;
        self.neg_sum += other.neg_sum;
        self.pos_count += other.pos_count;
        self.neg_count += other.neg_count;
        self.found += other.found;
    }
}

/// Per-POS tallies for one sentence (or, merged, one document).
#[derive(Debug, Clone, PartialEq)]
pub struct SentimentTally<F: Scalar = f64> {
    blocks: [BlockTally<F>; 4],
}

impl<F: Scalar> Default for SentimentTally<F> {
    fn default() -> Self {
        SentimentTally {
            blocks: [BlockTally::default(); 4],
        }
    }
}

impl<F: Scalar> SentimentTally<F> {
    /// Look up every content token of a sentence.
    pub fn of_sentence(sentence: &Sentence, index: &LexiconIndex<F>) -> Self {
        let mut tally = SentimentTally::default();
        for token in &sentence.tokens {
            let Some(pos) = token.wn_pos else { continue };
            let sentiment = index.lookup(&token.surface, pos);
            if sentiment.found {
                tally.blocks[pos.block_index()].absorb(&sentiment);
            }
        }
        tally
    }

    pub fn merge(&mut self, other: &SentimentTally<F>) {
        for (mine, theirs) in self.blocks.iter_mut().zip(&other.blocks) {
            mine.merge(theirs);
        }
    }

    /// Total found-token count across the four POS blocks.
    pub fn found_total(&self) -> usize {
        self.blocks.iter().map(|b| b.found).sum()
    }

    /// Summed positive and negative scores across blocks, in block order.
    pub fn score_totals(&self) -> (F, F) {
        let mut pos = F::zero();
        let mut neg = F::zero();
        for block in &self.blocks {
            pos += block.pos_sum;
            neg += block.neg_sum;
        }
        (pos, neg)
    }

    /// Assemble the 32-slot layout from these tallies.
    fn to_vector(&self, level: Level) -> FeatureVector<F> {
        let count = |n: usize| F::from_usize(n).expect("count fits scalar");
        let mut v = [F::zero(); FEATURE_COUNT];
        for (b, block) in self.blocks.iter().enumerate() {
            v[4 * b] = block.pos_sum;
            v[4 * b + 1] = block.neg_sum;
            v[4 * b + 2] = count(block.pos_count);
            v[4 * b + 3] = count(block.neg_count);
            v[16 + 2 * b] = ratio(block.pos_sum, count(block.found));
            v[16 + 2 * b + 1] = ratio(block.neg_sum, count(block.found));
        }
        let (pos_all, neg_all) = self.score_totals();
        let pos_terms_all: usize = self.blocks.iter().map(|b| b.pos_count).sum();
        let neg_terms_all: usize = self.blocks.iter().map(|b| b.neg_count).sum();
        let found_all = count(self.found_total());
        v[24] = pos_all;
        v[25] = neg_all;
        v[26] = count(pos_terms_all);
        v[27] = count(neg_terms_all);
        v[28] = ratio(pos_all, found_all);
        v[29] = ratio(neg_all, found_all);
        v[30] = ratio(pos_all, neg_all);
        v[31] = ratio(count(pos_terms_all), count(neg_terms_all));
        FeatureVector { values: v, level }
    }
}

/// Extract the sentence-level feature vector.
pub fn sentence_features<F: Scalar>(
    sentence: &Sentence,
    index: &LexiconIndex<F>,
) -> FeatureVector<F> {
    SentimentTally::of_sentence(sentence, index).to_vector(Level::Sentence)
}

/// Sum sentence vectors into a document vector. Ratio slots are summed
/// like every other slot.
pub fn document_features<F: Scalar>(
    sentence_vectors: &[FeatureVector<F>],
) -> Result<FeatureVector<F>, FeatureError> {
    if sentence_vectors.is_empty() {
        return Err(FeatureError::EmptyDocument);
    }
    debug_assert!(sentence_vectors.iter().all(|v| v.level == Level::Sentence));
    let mut values = [F::zero(); FEATURE_COUNT];
    for vector in sentence_vectors {
        for (acc, v) in values.iter_mut().zip(&vector.values) {
            *acc += *v;
        }
    }
    Ok(FeatureVector {
        values,
        level: Level::Document,
    })
}

/// How document-level ratio slots are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DocRatioMode {
    /// Sum sentence ratio slots along with everything else (default).
    SummedRatios,
    /// Recompute ratio slots from document-level sums and counts.
    RecomputedRatios,
}

impl Default for DocRatioMode {
    fn default() -> Self {
        DocRatioMode::SummedRatios
    }
}

/// Document vector straight from sentences, honoring the ratio mode.
pub fn document_features_of<F: Scalar>(
    sentences: &[Sentence],
    index: &LexiconIndex<F>,
    mode: DocRatioMode,
) -> Result<FeatureVector<F>, FeatureError> {
    if sentences.is_empty() {
        return Err(FeatureError::EmptyDocument);
    }
    match mode {
        DocRatioMode::SummedRatios => {
            let vectors: Vec<FeatureVector<F>> = sentences
                .iter()
                .map(|s| sentence_features(s, index))
                .collect();
            document_features(&vectors)
        }
        DocRatioMode::RecomputedRatios => {
            let mut tally = SentimentTally::default();
            for sentence in sentences {
                tally.merge(&SentimentTally::of_sentence(sentence, index));
            }
            Ok(tally.to_vector(Level::Document))
        }
    }
}

/// Slotwise product; level preserved.
pub fn apply_weights<F: Scalar>(v: &FeatureVector<F>, w: &WeightVector<F>) -> FeatureVector<F> {
    let mut values = v.values;
    for (value, weight) in values.iter_mut().zip(&w.weights) {
        *value = *value * *weight;
    }
    FeatureVector {
        values,
        level: v.level,
    }
}

/// Per-slot mean and population standard deviation of a training set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardizationParams<F: Scalar = f64> {
    pub mean: [F; FEATURE_COUNT],
    pub std_dev: [F; FEATURE_COUNT],
}

/// Fit z-score parameters on training vectors (population deviation).
pub fn standardize_fit<F: Scalar>(
    training: &[FeatureVector<F>],
) -> Result<StandardizationParams<F>, FeatureError> {
    if training.len() < 2 {
        return Err(FeatureError::TooFewVectors {
            found: training.len(),
        });
    }
    let n = F::from_usize(training.len()).expect("len fits scalar");
    let mut mean = [F::zero(); FEATURE_COUNT];
    for v in training {
        for (m, x) in mean.iter_mut().zip(&v.values) {
            *m += *x;
        }
    }
    for m in &mut mean {
        *m = *m / n;
    }
    let mut variance = [F::zero(); FEATURE_COUNT];
    for v in training {
        for ((var, x), m) in variance.iter_mut().zip(&v.values).zip(&mean) {
            let d = *x - *m;
            *var += d * d;
        }
    }
    let mut std_dev = [F::zero(); FEATURE_COUNT];
    for (s, var) in std_dev.iter_mut().zip(&variance) {
        *s = (*var / n).sqrt();
    }
    Ok(StandardizationParams { mean, std_dev })
}

/// Apply fitted z-score parameters; zero-deviation slots map to 0.
pub fn standardize_apply<F: Scalar>(
    params: &StandardizationParams<F>,
    v: &FeatureVector<F>,
) -> FeatureVector<F> {
    let mut values = [F::zero(); FEATURE_COUNT];
    for i in 0..FEATURE_COUNT {
        if params.std_dev[i] > F::zero() {
            values[i] = (v.values[i] - params.mean[i]) / params.std_dev[i];
        }
    }
    FeatureVector {
        values,
        level: v.level,
    }
}

/// One featurized instance: id, label, vector.
pub type FeatureRow<F> = (String, Polarity, FeatureVector<F>);

/// Featurize a whole corpus at the requested granularity. Sentence-level
/// ids are `docid#s<ordinal>`.
pub fn featurize_corpus<F: Scalar>(
    corpus: &Corpus,
    index: &LexiconIndex<F>,
    level: Level,
    mode: DocRatioMode,
) -> Vec<FeatureRow<F>> {
    let mut rows = Vec::new();
    for doc in corpus.documents() {
        match level {
            Level::Sentence => {
                for (i, sentence) in doc.sentences.iter().enumerate() {
                    rows.push((
                        format!("{}#s{}", doc.id, i),
                        sentence.label,
                        sentence_features(sentence, index),
                    ));
                }
            }
            Level::Document => {
                let vector = document_features_of(&doc.sentences, index, mode)
                    .expect("documents have at least one sentence");
                rows.push((doc.id.clone(), doc.label, vector));
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::TaggedToken;
    use crate::lexicon::{AggregationMode, SenseScore};
    use proptest::prelude::*;

    fn fixture_index() -> LexiconIndex {
        LexiconIndex::from_records(
            [
                (
                    "good".to_string(),
                    WordClass::Adjective,
                    SenseScore {
                        rank: 1,
                        positive: 0.75,
                        negative: 0.0,
                    },
                ),
                (
                    "bad".to_string(),
                    WordClass::Adjective,
                    SenseScore {
                        rank: 1,
                        positive: 0.0,
                        negative: 0.625,
                    },
                ),
                (
                    "love".to_string(),
                    WordClass::Verb,
                    SenseScore {
                        rank: 1,
                        positive: 0.5,
                        negative: 0.0,
                    },
                ),
            ],
            AggregationMode::RankWeighted,
        )
    }

    fn sentence(tokens: &[(&str, &str)], label: Polarity) -> Sentence {
        Sentence {
            tokens: tokens
                .iter()
                .map(|(s, t)| TaggedToken::new(*s, *t))
                .collect(),
            label,
        }
    }

    #[test]
    fn worked_adjective_example() {
        let s = sentence(
            &[("good", "JJ"), ("good", "JJ"), ("bad", "JJ")],
            Polarity::Positive,
        );
        let v = sentence_features(&s, &fixture_index());
        assert_eq!(v.level(), Level::Sentence);
        // adjective block
        assert_eq!(&v.values()[0..4], &[1.5, 0.625, 2.0, 1.0]);
        // adjective ratios
        assert!((v.get(16) - 0.5).abs() < 1e-12);
        assert!((v.get(17) - 0.625 / 3.0).abs() < 1e-12);
        // overall block and ratios
        assert_eq!(&v.values()[24..28], &[1.5, 0.625, 2.0, 1.0]);
        assert!((v.get(28) - 0.5).abs() < 1e-12);
        assert!((v.get(29) - 0.625 / 3.0).abs() < 1e-12);
        assert!((v.get(30) - 2.4).abs() < 1e-12);
        assert_eq!(v.get(31), 2.0);
        // untouched blocks stay zero
        assert!(v.values()[4..16].iter().all(|x| *x == 0.0));
    }

    #[test]
    fn no_hits_gives_zero_vector() {
        let s = sentence(&[("the", "DT"), ("table", "NN")], Polarity::Negative);
        let v = sentence_features(&s, &fixture_index());
        assert_eq!(v, FeatureVector::zeros(Level::Sentence));
    }

    #[test]
    fn single_verb_denominator_zero_convention() {
        let s = sentence(&[("love", "VB")], Polarity::Positive);
        let v = sentence_features(&s, &fixture_index());
        assert_eq!(&v.values()[8..12], &[0.5, 0.0, 1.0, 0.0]);
        assert_eq!(&v.values()[20..22], &[0.5, 0.0]);
        assert_eq!(&v.values()[24..28], &[0.5, 0.0, 1.0, 0.0]);
        assert_eq!(v.get(28), 0.5);
        assert_eq!(v.get(29), 0.0);
        // ratio(a, 0) with a > 0 -> a
        assert_eq!(v.get(30), 0.5);
        assert_eq!(v.get(31), 1.0);
    }

    #[test]
    fn tie_scores_count_found_but_no_polarity() {
        let index = LexiconIndex::from_records(
            [(
                "meh".to_string(),
                WordClass::Adjective,
                SenseScore {
                    rank: 1,
                    positive: 0.25,
                    negative: 0.25,
                },
            )],
            AggregationMode::RankWeighted,
        );
        let s = sentence(&[("meh", "JJ")], Polarity::Negative);
        let v = sentence_features(&s, &index);
        assert_eq!(&v.values()[0..4], &[0.25, 0.25, 0.0, 0.0]);
        // found = 1 so the ratio divides
        assert_eq!(v.get(16), 0.25);
    }

    #[test]
    fn document_sum_and_singleton() {
        let s1 = sentence(&[("good", "JJ")], Polarity::Positive);
        let s2 = sentence(&[("bad", "JJ")], Polarity::Negative);
        let v1 = sentence_features(&s1, &fixture_index());
        let v2 = sentence_features(&s2, &fixture_index());

        let single = document_features(&[v1]).unwrap();
        assert_eq!(single.values(), v1.values());
        assert_eq!(single.level(), Level::Document);

        let both = document_features(&[v1, v2]).unwrap();
        for i in 0..FEATURE_COUNT {
            assert_eq!(both.get(i), v1.get(i) + v2.get(i));
        }

        assert_eq!(
            document_features::<f64>(&[]),
            Err(FeatureError::EmptyDocument)
        );
    }

    #[test]
    fn document_sum_matches_bruteforce_on_three_sentences() {
        let index = fixture_index();
        let sentences = [
            sentence(&[("good", "JJ"), ("love", "VB")], Polarity::Positive),
            sentence(&[("bad", "JJ")], Polarity::Negative),
            sentence(&[("good", "JJ"), ("bad", "JJ"), ("bad", "JJ")], Polarity::Negative),
        ];
        let vectors: Vec<_> = sentences
            .iter()
            .map(|s| sentence_features(s, &index))
            .collect();
        let doc = document_features(&vectors).unwrap();
        for slot in 0..FEATURE_COUNT {
            let expected: f64 = vectors.iter().map(|v| v.get(slot)).sum();
            assert!((doc.get(slot) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn recomputed_doc_ratios_use_document_totals() {
        let index = fixture_index();
        let sentences = vec![
            sentence(&[("good", "JJ")], Polarity::Positive),
            sentence(&[("bad", "JJ")], Polarity::Negative),
        ];
        let summed = document_features_of(&sentences, &index, DocRatioMode::SummedRatios).unwrap();
        let recomputed =
            document_features_of(&sentences, &index, DocRatioMode::RecomputedRatios).unwrap();
        // sums and counts agree either way
        assert_eq!(&summed.values()[0..16], &recomputed.values()[0..16]);
        assert_eq!(&summed.values()[24..28], &recomputed.values()[24..28]);
        // summed: 0.75/1 + 0/1 = 0.75; recomputed: 0.75/2
        assert_eq!(summed.get(16), 0.75);
        assert_eq!(recomputed.get(16), 0.375);
    }

    #[test]
    fn apply_weights_identity_and_annihilator() {
        let s = sentence(&[("good", "JJ"), ("bad", "JJ")], Polarity::Positive);
        let v = sentence_features(&s, &fixture_index());
        assert_eq!(apply_weights(&v, &WeightVector::ones()), v);
        let zeros = WeightVector::new([0.0; FEATURE_COUNT]).unwrap();
        assert_eq!(
            apply_weights(&v, &zeros),
            FeatureVector::zeros(Level::Sentence)
        );
        let halves = WeightVector::new([0.5; FEATURE_COUNT]).unwrap();
        let halved = apply_weights(&v, &halves);
        for i in 0..FEATURE_COUNT {
            assert_eq!(halved.get(i), v.get(i) * 0.5);
        }
    }

    #[test]
    fn weight_vector_rejects_out_of_range() {
        let mut w = [0.5; FEATURE_COUNT];
        w[3] = 1.5;
        assert!(WeightVector::new(w).is_err());
        assert_eq!(WeightVector::clamped(w).get(3), 1.0);
        w[3] = -0.1;
        assert_eq!(WeightVector::clamped(w).get(3), 0.0);
    }

    #[test]
    fn standardize_two_point_slot() {
        let mut a = [0.0; FEATURE_COUNT];
        let mut b = [0.0; FEATURE_COUNT];
        a[0] = 0.0;
        b[0] = 2.0;
        let training = [
            FeatureVector::new(a, Level::Sentence),
            FeatureVector::new(b, Level::Sentence),
        ];
        let params = standardize_fit(&training).unwrap();
        // mean 1, population deviation 1
        assert_eq!(params.mean[0], 1.0);
        assert_eq!(params.std_dev[0], 1.0);
        assert_eq!(standardize_apply(&params, &training[0]).get(0), -1.0);
        assert_eq!(standardize_apply(&params, &training[1]).get(0), 1.0);
        // constant slots standardize to 0 for any input
        let mut probe = [5.0; FEATURE_COUNT];
        probe[0] = 1.0;
        let z = standardize_apply(&params, &FeatureVector::new(probe, Level::Sentence));
        assert_eq!(z.get(1), 0.0);
        assert_eq!(z.get(0), 0.0);
    }

    #[test]
    fn standardize_training_mean_is_zero() {
        let training: Vec<FeatureVector> = (0..7)
            .map(|i| {
                let mut v = [0.0; FEATURE_COUNT];
                for (j, x) in v.iter_mut().enumerate() {
                    *x = (i * 3 + j) as f64 * 0.37;
                }
                FeatureVector::new(v, Level::Sentence)
            })
            .collect();
        let params = standardize_fit(&training).unwrap();
        for slot in 0..FEATURE_COUNT {
            let mean: f64 = training
                .iter()
                .map(|v| standardize_apply(&params, v).get(slot))
                .sum::<f64>()
                / training.len() as f64;
            assert!(mean.abs() < 1e-9);
        }
    }

    #[test]
    fn standardize_needs_two_vectors() {
        let v = FeatureVector::<f64>::zeros(Level::Sentence);
        assert_eq!(
            standardize_fit(&[v]),
            Err(FeatureError::TooFewVectors { found: 1 })
        );
    }

    proptest! {
        // ratio never produces a non-finite value on non-negative input
        #[test]
        fn ratio_is_total(a in 0.0f64..1e6, b in 0.0f64..1e6) {
            prop_assert!(ratio(a, b).is_finite());
            prop_assert!(ratio(a, 0.0).is_finite());
            prop_assert_eq!(ratio(0.0, 0.0), 0.0);
        }

        // homogeneity: apply_weights(v, c*w) == c * apply_weights(v, w) per slot
        #[test]
        fn apply_weights_homogeneous(
            values in proptest::array::uniform32(-100.0f64..100.0),
            weights in proptest::array::uniform32(0.0f64..=1.0),
            c in 0.0f64..=1.0,
        ) {
            let v = FeatureVector::new(values, Level::Sentence);
            let w = WeightVector::new(weights).unwrap();
            let mut scaled = weights;
            for x in &mut scaled { *x *= c; }
            let cw = WeightVector::new(scaled).unwrap();
            let lhs = apply_weights(&v, &cw);
            let rhs = apply_weights(&v, &w);
            for i in 0..FEATURE_COUNT {
                let expected = c * rhs.get(i);
                let tol = 1e-12 * expected.abs().max(1.0);
                prop_assert!((lhs.get(i) - expected).abs() <= tol);
            }
        }

        // exact homogeneity for a power-of-two scale
        #[test]
        fn apply_weights_homogeneous_pow2(
            values in proptest::array::uniform32(-100.0f64..100.0),
            weights in proptest::array::uniform32(0.0f64..=1.0),
        ) {
            let v = FeatureVector::new(values, Level::Sentence);
            let w = WeightVector::new(weights).unwrap();
            let mut scaled = weights;
            for x in &mut scaled { *x *= 0.5; }
            let cw = WeightVector::new(scaled).unwrap();
            let lhs = apply_weights(&v, &cw);
            let rhs = apply_weights(&v, &w);
            for i in 0..FEATURE_COUNT {
                prop_assert_eq!(lhs.get(i), 0.5 * rhs.get(i));
            }
        }
    }
}
