//! Stratified k-fold cross-validation, pooled metrics, and report
//! emission.
//!
//! Metrics pool one confusion matrix over all held-out predictions (micro
//! pooling), so results are deterministic even with unequal fold sizes.
//! Optimized evaluation evolves weights inside each training fold only;
//! the separate paper mode evolves once on the full dataset before the
//! outer CV, reproducing the leakage setup it is named after, and is
//! labeled as such in reports.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classifiers::{
    accuracy, predict, train, Algorithm, Dataset, HyperParams, PredictError, TrainError,
};
use crate::corpus::Corpus;
use crate::features::{featurize_corpus, DocRatioMode, WeightVector};
use crate::lexicon::{AggregationMode, LexiconIndex};
use crate::optimizer::{evolve, evolve_with, DatasetFitness, EsConfig, EsError};
use crate::scalar::Scalar;
use crate::types::{Level, Polarity};

/// Current report file version.
pub const REPORT_FORMAT_VERSION: u32 = 1;

/// Evaluation failure.
#[derive(Debug, Error)]
pub enum EvalError {
    #[error("k must be at least 2, got {k}")]
    InvalidK { k: usize },
    #[error("dataset is empty")]
    EmptyDataset,
    #[error(transparent)]
    Train(#[from] TrainError),
    #[error(transparent)]
    Predict(#[from] PredictError),
    #[error(transparent)]
    Es(#[from] EsError),
}

/// 2×2 counts indexed `[actual][predicted]`, 0 = positive, 1 = negative.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub counts: [[u64; 2]; 2],
}

impl Confusion {
    fn class_index(label: Polarity) -> usize {
        (label == Polarity::Negative) as usize
    }

    pub fn record(&mut self, actual: Polarity, predicted: Polarity) {
        self.counts[Self::class_index(actual)][Self::class_index(predicted)] += 1;
    }

    pub fn merge(&mut self, other: &Confusion) {
        for a in 0..2 {
            for p in 0..2 {
                self.counts[a][p] += other.counts[a][p];
            }
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn correct(&self) -> u64 {
        self.counts[0][0] + self.counts[1][1]
    }

    pub fn accuracy(&self) -> f64 {
        if self.total() == 0 {
            return 0.0;
        }
        self.correct() as f64 / self.total() as f64
    }

    /// `TP / (TP + FP)` for the class; 0 when nothing was predicted as it.
    pub fn precision(&self, class: Polarity) -> f64 {
        let c = Self::class_index(class);
        let tp = self.counts[c][c];
        let fp = self.counts[1 - c][c];
        if tp + fp == 0 {
            0.0
        } else {
            tp as f64 / (tp + fp) as f64
        }
    }
}

/// Pooled evaluation metrics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub accuracy: f64,
    pub precision_positive: f64,
    pub precision_negative: f64,
    /// Unweighted mean of the two per-class precisions (the headline).
    pub precision_macro: f64,
    pub confusion: Confusion,
}

impl Metrics {
    pub fn from_confusion(confusion: Confusion) -> Metrics {
        let precision_positive = confusion.precision(Polarity::Positive);
        let precision_negative = confusion.precision(Polarity::Negative);
        Metrics {
            accuracy: confusion.accuracy(),
            precision_positive,
            precision_negative,
            precision_macro: 0.5 * (precision_positive + precision_negative),
            confusion,
        }
    }
}

/// Stratified fold assignment over rows: per label, indices are shuffled
/// with the seeded generator and dealt round-robin, so per-class fold
/// sizes differ by at most one. Returns `row index → fold`.
pub fn stratified_row_folds(
    labels: &[Polarity],
    k: usize,
    seed: u64,
) -> Result<Vec<usize>, EvalError> {
    if k < 2 {
        return Err(EvalError::InvalidK { k });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = vec![0usize; labels.len()];
    for label in [Polarity::Positive, Polarity::Negative] {
        let mut indices: Vec<usize> = (0..labels.len())
            .filter(|&i| labels[i] == label)
            .collect();
        indices.shuffle(&mut rng);
        for (position, row) in indices.into_iter().enumerate() {
            folds[row] = position % k;
        }
    }
    Ok(folds)
}

fn split_indices(folds: &[usize], fold: usize) -> (Vec<usize>, Vec<usize>) {
    let mut train_idx = Vec::new();
    let mut test_idx = Vec::new();
    for (i, &f) in folds.iter().enumerate() {
        if f == fold {
            test_idx.push(i);
        } else {
            train_idx.push(i);
        }
    }
    (train_idx, test_idx)
}

/// Plain k-fold CV: per fold, train on the rest (standardization is fitted
/// on the training part inside `train`) and score the held-out rows; the
/// confusion matrix pools over all folds.
pub fn cross_validate<F: Scalar>(
    data: &Dataset<F>,
    algorithm: Algorithm,
    hyper: &HyperParams,
    k: usize,
    seed: u64,
    weights: Option<&WeightVector<F>>,
) -> Result<Metrics, EvalError> {
    if data.is_empty() {
        return Err(EvalError::EmptyDataset);
    }
    let labels: Vec<Polarity> = data.labels().collect();
    let folds = stratified_row_folds(&labels, k, seed)?;
    let confusions: Vec<Confusion> = (0..k)
        .into_par_iter()
        .map(|fold| {
            let (train_idx, test_idx) = split_indices(&folds, fold);
            let mut confusion = Confusion::default();
            if test_idx.is_empty() {
                return Ok(confusion);
            }
            let train_part = data.subset(&train_idx);
            let model = train(algorithm, &train_part, hyper, seed, weights)?;
            for &i in &test_idx {
                let (v, actual) = &data.rows()[i];
                confusion.record(*actual, predict(&model, v)?.0);
            }
            Ok(confusion)
        })
        .collect::<Result<_, EvalError>>()?;
    let mut pooled = Confusion::default();
    for c in &confusions {
        pooled.merge(c);
    }
    Ok(Metrics::from_confusion(pooled))
}

/// Audit record of one optimized outer fold.
#[derive(Debug, Clone)]
pub struct FoldDetail<F: Scalar = f64> {
    pub fold: usize,
    /// Origin ids of the held-out rows.
    pub held_out: Vec<usize>,
    /// Best weights evolved on this fold's training part.
    pub weights: WeightVector<F>,
    pub best_fitness: f64,
    /// Origin ids of every row the fold's fitness evaluations read.
    pub fitness_rows: BTreeSet<usize>,
}

/// Honest nested optimization: weights evolve on each training part only,
/// then score that fold's held-out rows. Returns pooled metrics plus
/// per-fold audit details.
pub fn cross_validate_optimized_detailed<F: Scalar>(
    data: &Dataset<F>,
    algorithm: Algorithm,
    hyper: &HyperParams,
    k: usize,
    seed: u64,
    es: &EsConfig,
) -> Result<(Metrics, Vec<FoldDetail<F>>), EvalError> {
    if data.is_empty() {
        return Err(EvalError::EmptyDataset);
    }
    let labels: Vec<Polarity> = data.labels().collect();
    let folds = stratified_row_folds(&labels, k, seed)?;
    let outcomes: Vec<(Confusion, FoldDetail<F>)> = (0..k)
        .into_par_iter()
        .map(|fold| {
            let (train_idx, test_idx) = split_indices(&folds, fold);
            let train_part = data.subset(&train_idx);
            let fitness = DatasetFitness::new(&train_part, algorithm, hyper, es)?;
            let evolved = evolve_with(&fitness, es)?;
            let detail = FoldDetail {
                fold,
                held_out: test_idx.iter().map(|&i| data.origins()[i]).collect(),
                weights: evolved.best,
                best_fitness: evolved.best_fitness,
                fitness_rows: fitness.accessed_rows(),
            };
            let model = train(algorithm, &train_part, hyper, seed, Some(&evolved.best))?;
            let mut confusion = Confusion::default();
            for &i in &test_idx {
                let (v, actual) = &data.rows()[i];
                confusion.record(*actual, predict(&model, v)?.0);
            }
            Ok((confusion, detail))
        })
        .collect::<Result<_, EvalError>>()?;
    let mut pooled = Confusion::default();
    let mut details = Vec::with_capacity(k);
    for (confusion, detail) in outcomes {
        pooled.merge(&confusion);
        details.push(detail);
    }
    Ok((Metrics::from_confusion(pooled), details))
}

/// [`cross_validate_optimized_detailed`] without the audit trail.
pub fn evaluate_with_optimization<F: Scalar>(
    data: &Dataset<F>,
    algorithm: Algorithm,
    hyper: &HyperParams,
    k: usize,
    seed: u64,
    es: &EsConfig,
) -> Result<Metrics, EvalError> {
    cross_validate_optimized_detailed(data, algorithm, hyper, k, seed, es).map(|(m, _)| m)
}

/// Paper-mode outcome: weights evolved on the full dataset.
#[derive(Debug, Clone)]
pub struct PaperModeOutcome<F: Scalar = f64> {
    pub weights: WeightVector<F>,
    /// Accuracy of the evolved weights trained and scored on the whole
    /// dataset (resubstitution).
    pub resubstitution_accuracy: f64,
    /// 10-fold-style CV of the same weights (the honest number).
    pub cv: Metrics,
}

/// Evolve weights once on the full dataset before the outer CV. The
/// resubstitution number is upward-biased by construction; reports carry
/// the paper-mode label so it cannot masquerade as an honest result.
pub fn paper_mode_evaluate<F: Scalar>(
    data: &Dataset<F>,
    algorithm: Algorithm,
    hyper: &HyperParams,
    k: usize,
    seed: u64,
    es: &EsConfig,
) -> Result<PaperModeOutcome<F>, EvalError> {
    if data.is_empty() {
        return Err(EvalError::EmptyDataset);
    }
    let evolved = evolve(data, algorithm, hyper, es)?;
    let model = train(algorithm, data, hyper, seed, Some(&evolved.best))?;
    let resubstitution_accuracy = accuracy(&model, data)?;
    let cv = cross_validate(data, algorithm, hyper, k, seed, Some(&evolved.best))?;
    Ok(PaperModeOutcome {
        weights: evolved.best,
        resubstitution_accuracy,
        cv,
    })
}

/// Featurize a corpus into ids plus a dataset at the requested level.
pub fn corpus_dataset<F: Scalar>(
    corpus: &Corpus,
    index: &LexiconIndex<F>,
    level: Level,
    mode: DocRatioMode,
) -> (Vec<String>, Dataset<F>) {
    let rows = featurize_corpus(corpus, index, level, mode);
    let mut ids = Vec::with_capacity(rows.len());
    let mut data = Vec::with_capacity(rows.len());
    for (id, label, vector) in rows {
        ids.push(id);
        data.push((vector, label));
    }
    (ids, Dataset::new(data, level))
}

/// Everything needed to reproduce a report's numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigSnapshot {
    pub lexicon: Option<String>,
    pub corpus: Option<String>,
    pub level: Level,
    pub aggregation_mode: AggregationMode,
    pub doc_ratio_mode: DocRatioMode,
    pub k: usize,
    pub seed: u64,
    pub hyper: HyperParams,
    /// Present when optimization ran; carries the sigma policy and
    /// fitness mode.
    pub es: Option<EsConfig>,
}

/// One classifier's line in a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub algorithm: Algorithm,
    pub without_optimization: Metrics,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub with_optimization: Option<Metrics>,
    /// `"honest"` or `"paper-mode"`, present when optimization ran.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimization_label: Option<String>,
}

/// A full evaluation table for one granularity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub level: Level,
    pub rows: Vec<ReportRow>,
    pub config: ConfigSnapshot,
}

/// Envelope for machine-format report files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub format_version: u32,
    pub reports: Vec<EvalReport>,
}

/// Output encodings of [`emit_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown report format `{other}`")),
        }
    }
}

/// Percentage cell: rounded half-up to an integer.
fn percent(x: f64) -> String {
    format!("{}", (x * 100.0).round() as i64)
}

const TEXT_HEADER: &str =
    "classifier            acc%   prec%   acc%(opt)   prec%(opt)   optimization";

/// Render reports. Text rounds percentages to integers; the machine
/// formats keep full precision and embed the config snapshot.
pub fn emit_report(reports: &[EvalReport], format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => {
            let mut out = String::new();
            out.push_str(TEXT_HEADER);
            out.push('\n');
            for report in reports {
                out.push_str(&format!(
                    "-- {} level (k={}, seed={}) --\n",
                    report.level, report.config.k, report.config.seed
                ));
                for row in &report.rows {
                    let (acc_opt, prec_opt) = match &row.with_optimization {
                        Some(m) => (percent(m.accuracy), percent(m.precision_macro)),
                        None => ("-".to_string(), "-".to_string()),
                    };
                    out.push_str(&format!(
                        "{:<22}{:>4}{:>8}{:>12}{:>13}   {}\n",
                        row.algorithm.to_string(),
                        percent(row.without_optimization.accuracy),
                        percent(row.without_optimization.precision_macro),
                        acc_opt,
                        prec_opt,
                        row.optimization_label.as_deref().unwrap_or("-"),
                    ));
                }
            }
            out
        }
        ReportFormat::Csv => {
            let mut out = String::new();
            out.push_str(&format!("# sentopt report v{REPORT_FORMAT_VERSION}\n"));
            for report in reports {
                let config =
                    serde_json::to_string(&report.config).expect("config snapshot serializes");
                out.push_str(&format!("# config {config}\n"));
            }
            out.push_str(
                "level,classifier,accuracy,precision_macro,precision_positive,\
                 precision_negative,accuracy_opt,precision_macro_opt,\
                 precision_positive_opt,precision_negative_opt,optimization\n",
            );
            for report in reports {
                for row in &report.rows {
                    let w = &row.without_optimization;
                    let opt_cells = match &row.with_optimization {
                        Some(m) => format!(
                            "{},{},{},{}",
                            m.accuracy, m.precision_macro, m.precision_positive,
                            m.precision_negative
                        ),
                        None => ",,,".to_string(),
                    };
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{},{}\n",
                        report.level,
                        row.algorithm,
                        w.accuracy,
                        w.precision_macro,
                        w.precision_positive,
                        w.precision_negative,
                        opt_cells,
                        row.optimization_label.as_deref().unwrap_or(""),
                    ));
                }
            }
            out
        }
        ReportFormat::Json => {
            let file = ReportFile {
                format_version: REPORT_FORMAT_VERSION,
                reports: reports.to_vec(),
            };
            let mut json = serde_json::to_string_pretty(&file).expect("report serializes");
            json.push('\n');
            json
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::{FeatureVector, FEATURE_COUNT};
    use crate::optimizer::FitnessMode;
    use proptest::prelude::*;

    fn vector(first: f64) -> FeatureVector {
        let mut v = [0.0; FEATURE_COUNT];
        v[0] = first;
        FeatureVector::new(v, Level::Document)
    }

    fn separable_dataset(n: usize) -> Dataset {
        let rows = (0..n)
            .map(|i| {
                let positive = i % 2 == 0;
                let x = if positive { 1.0 } else { -1.0 } + (i as f64 * 0.003);
                (
                    vector(x),
                    if positive {
                        Polarity::Positive
                    } else {
                        Polarity::Negative
                    },
                )
            })
            .collect();
        Dataset::new(rows, Level::Document)
    }

    #[test]
    fn folds_disjoint_and_stratified() {
        let labels: Vec<Polarity> = (0..37)
            .map(|i| {
                if i % 3 == 0 {
                    Polarity::Positive
                } else {
                    Polarity::Negative
                }
            })
            .collect();
        let folds = stratified_row_folds(&labels, 5, 42).unwrap();
        assert_eq!(folds.len(), labels.len());
        for label in [Polarity::Positive, Polarity::Negative] {
            let mut sizes = vec![0usize; 5];
            for (i, &f) in folds.iter().enumerate() {
                if labels[i] == label {
                    sizes[f] += 1;
                }
            }
            let lo = *sizes.iter().min().unwrap();
            let hi = *sizes.iter().max().unwrap();
            assert!(hi - lo <= 1, "{label}: {sizes:?}");
        }
    }

    #[test]
    fn invalid_k_rejected() {
        assert!(matches!(
            stratified_row_folds(&[Polarity::Positive], 1, 0),
            Err(EvalError::InvalidK { k: 1 })
        ));
    }

    #[test]
    fn separable_data_scores_high() {
        let data = separable_dataset(40);
        let hyper = HyperParams::default();
        for algorithm in [
            Algorithm::Svm,
            Algorithm::LogisticRegression,
            Algorithm::LinearRegression,
            Algorithm::DecisionTree,
        ] {
            let metrics = cross_validate(&data, algorithm, &hyper, 5, 42, None).unwrap();
            assert!(
                metrics.accuracy >= 0.99,
                "{algorithm} scored {}",
                metrics.accuracy
            );
            assert_eq!(metrics.confusion.total(), 40);
        }
    }

    #[test]
    fn explicit_ones_weights_match_default() {
        let data = separable_dataset(30);
        let hyper = HyperParams::default();
        let without = cross_validate(&data, Algorithm::Svm, &hyper, 5, 7, None).unwrap();
        let with_ones =
            cross_validate(&data, Algorithm::Svm, &hyper, 5, 7, Some(&WeightVector::ones()))
                .unwrap();
        assert_eq!(without, with_ones);
    }

    #[test]
    fn majority_prior_accuracy_on_constant_features() {
        // 97 positive / 99 negative rows with no signal: naive Bayes falls
        // back to the prior and always predicts the majority class
        let rows: Vec<_> = (0..196)
            .map(|i| {
                (
                    vector(0.0),
                    if i < 97 {
                        Polarity::Positive
                    } else {
                        Polarity::Negative
                    },
                )
            })
            .collect();
        let data = Dataset::new(rows, Level::Document);
        let metrics =
            cross_validate(&data, Algorithm::NaiveBayes, &HyperParams::default(), 10, 42, None)
                .unwrap();
        assert!((metrics.accuracy - 99.0 / 196.0).abs() < 1e-12);
        assert_eq!(metrics.confusion.counts[0][0], 0);
        assert_eq!(metrics.confusion.counts[1][1], 99);
    }

    #[test]
    fn confusion_arithmetic() {
        let mut c = Confusion::default();
        c.record(Polarity::Positive, Polarity::Positive);
        c.record(Polarity::Positive, Polarity::Negative);
        c.record(Polarity::Negative, Polarity::Negative);
        c.record(Polarity::Negative, Polarity::Positive);
        c.record(Polarity::Negative, Polarity::Negative);
        let m = Metrics::from_confusion(c);
        assert_eq!(c.total(), 5);
        assert_eq!(m.accuracy, 3.0 / 5.0);
        assert_eq!(m.precision_positive, 0.5);
        assert_eq!(m.precision_negative, 2.0 / 3.0);
        assert!((m.precision_macro - (0.5 + 2.0 / 3.0) / 2.0).abs() < 1e-15);
        // degenerate: nothing predicted positive
        let mut c = Confusion::default();
        c.record(Polarity::Positive, Polarity::Negative);
        assert_eq!(c.precision(Polarity::Positive), 0.0);
    }

    fn snapshot(k: usize) -> ConfigSnapshot {
        ConfigSnapshot {
            lexicon: None,
            corpus: None,
            level: Level::Document,
            aggregation_mode: AggregationMode::RankWeighted,
            doc_ratio_mode: DocRatioMode::SummedRatios,
            k,
            seed: 42,
            hyper: HyperParams::default(),
            es: None,
        }
    }

    fn metrics_with(accuracy: f64, precision: f64) -> Metrics {
        Metrics {
            accuracy,
            precision_positive: precision,
            precision_negative: precision,
            precision_macro: precision,
            confusion: Confusion::default(),
        }
    }

    #[test]
    fn text_report_rounds_half_up() {
        let report = EvalReport {
            level: Level::Document,
            rows: vec![ReportRow {
                algorithm: Algorithm::Svm,
                without_optimization: metrics_with(0.654, 0.725),
                with_optimization: None,
                optimization_label: None,
            }],
            config: snapshot(10),
        };
        let text = emit_report(&[report], ReportFormat::Text);
        let row = text.lines().last().unwrap();
        assert!(row.starts_with("svm"));
        assert!(row.contains("65"));
        assert!(row.contains("73"));
    }

    #[test]
    fn empty_report_is_header_only() {
        let text = emit_report(&[], ReportFormat::Text);
        assert_eq!(text.trim_end(), TEXT_HEADER);
        let csv = emit_report(&[], ReportFormat::Csv);
        assert_eq!(csv.lines().count(), 2); // version comment + column header
    }

    #[test]
    fn table_reference_row_layout() {
        let report = EvalReport {
            level: Level::Document,
            rows: vec![ReportRow {
                algorithm: Algorithm::Svm,
                without_optimization: metrics_with(0.65, 0.73),
                with_optimization: Some(metrics_with(0.72, 0.81)),
                optimization_label: Some("honest".to_string()),
            }],
            config: snapshot(10),
        };
        let text = emit_report(&[report], ReportFormat::Text);
        let row = text.lines().last().unwrap();
        let cells: Vec<&str> = row.split_whitespace().collect();
        assert_eq!(cells, vec!["svm", "65", "73", "72", "81", "honest"]);
    }

    #[test]
    fn json_report_round_trips() {
        let report = EvalReport {
            level: Level::Sentence,
            rows: vec![ReportRow {
                algorithm: Algorithm::NaiveBayes,
                without_optimization: metrics_with(0.63, 0.56),
                with_optimization: Some(metrics_with(0.54, 0.58)),
                optimization_label: Some("paper-mode".to_string()),
            }],
            config: snapshot(10),
        };
        let json = emit_report(std::slice::from_ref(&report), ReportFormat::Json);
        let parsed: ReportFile = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.format_version, REPORT_FORMAT_VERSION);
        assert_eq!(parsed.reports, vec![report]);
    }

    #[test]
    fn optimized_folds_never_leak_held_out_rows() {
        let data = separable_dataset(24);
        let es = EsConfig {
            mu: 2,
            lambda: 4,
            generations: 3,
            adapt_every: 1,
            fitness_mode: FitnessMode::Resubstitution,
            ..EsConfig::default()
        };
        let (_, details) = cross_validate_optimized_detailed(
            &data,
            Algorithm::Svm,
            &HyperParams::default(),
            4,
            42,
            &es,
        )
        .unwrap();
        assert_eq!(details.len(), 4);
        let mut seen = BTreeSet::new();
        for detail in &details {
            assert!(!detail.fitness_rows.is_empty());
            for id in &detail.held_out {
                assert!(
                    !detail.fitness_rows.contains(id),
                    "fold {} leaked row {id}",
                    detail.fold
                );
                seen.insert(*id);
            }
        }
        // held-out sets cover the dataset exactly once
        assert_eq!(seen.len(), data.len());
    }

    proptest! {
        // pooled confusion counts every instance exactly once
        #[test]
        fn pooled_totals_exact(n in 12usize..60, k in 2usize..6, seed in 0u64..500) {
            let data = separable_dataset(n);
            let metrics = cross_validate(
                &data, Algorithm::LinearRegression, &HyperParams::default(), k, seed, None,
            ).unwrap();
            prop_assert_eq!(metrics.confusion.total(), n as u64);
            let trace = metrics.confusion.correct() as f64 / n as f64;
            prop_assert!((metrics.accuracy - trace).abs() < 1e-12);
        }
    }
}
