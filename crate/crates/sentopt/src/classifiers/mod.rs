//! Five supervised classifiers with deterministic training.
//!
//! Every model consumes the same pipeline: features are standardized with
//! parameters fitted on the training rows, multiplied by the active weight
//! vector, and only then handed to the algorithm. Prediction replays the
//! stored standardization and weights, so a trained model is self-contained.

mod linreg;
mod logistic;
mod naive_bayes;
mod svm;
mod tree;

pub use linreg::objective_gradient as ridge_objective_gradient;
pub use logistic::{gradient as logistic_gradient, loss as logistic_loss};
pub use naive_bayes::GaussianNb;
pub use tree::{Tree, TreeNode};

use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::features::{
    apply_weights, standardize_apply, standardize_fit, FeatureError, FeatureVector,
    StandardizationParams, WeightVector, FEATURE_COUNT,
};
use crate::scalar::Scalar;
use crate::types::{Level, Polarity};

/// The classifier roster.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Svm,
    NaiveBayes,
    DecisionTree,
    LinearRegression,
    LogisticRegression,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Svm,
        Algorithm::NaiveBayes,
        Algorithm::DecisionTree,
        Algorithm::LinearRegression,
        Algorithm::LogisticRegression,
    ];
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Svm => "svm",
            Algorithm::NaiveBayes => "naive-bayes",
            Algorithm::DecisionTree => "decision-tree",
            Algorithm::LinearRegression => "linear-regression",
            Algorithm::LogisticRegression => "logistic-regression",
        })
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "svm" => Ok(Algorithm::Svm),
            "naive-bayes" => Ok(Algorithm::NaiveBayes),
            "decision-tree" => Ok(Algorithm::DecisionTree),
            "linear-regression" => Ok(Algorithm::LinearRegression),
            "logistic-regression" => Ok(Algorithm::LogisticRegression),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

/// Hyperparameters for every algorithm, with the documented defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperParams {
    pub logistic: LogisticHyper,
    pub svm: SvmHyper,
    pub tree: TreeHyper,
    pub ridge: RidgeHyper,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogisticHyper {
    pub l2: f64,
    pub epochs: usize,
    pub learning_rate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SvmHyper {
    pub l2: f64,
    pub epochs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TreeHyper {
    pub max_depth: usize,
    pub min_leaf: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RidgeHyper {
    pub epsilon: f64,
}

impl Default for HyperParams {
    fn default() -> Self {
        HyperParams {
            logistic: LogisticHyper {
                l2: 1e-3,
                epochs: 500,
                learning_rate: 0.1,
            },
            svm: SvmHyper {
                l2: 1e-2,
                epochs: 50,
            },
            tree: TreeHyper {
                max_depth: 8,
                min_leaf: 2,
            },
            ridge: RidgeHyper { epsilon: 1e-6 },
        }
    }
}

/// Labeled feature rows at one granularity. Rows keep a stable origin id
/// (their index in the dataset they were first constructed in) so outer
/// harnesses can audit exactly which instances a computation touched.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<F: Scalar = f64> {
    rows: Vec<(FeatureVector<F>, Polarity)>,
    level: Level,
    origin: Vec<usize>,
}

impl<F: Scalar> Dataset<F> {
    pub fn new(rows: Vec<(FeatureVector<F>, Polarity)>, level: Level) -> Self {
        let origin = (0..rows.len()).collect();
        Dataset {
            rows,
            level,
            origin,
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn rows(&self) -> &[(FeatureVector<F>, Polarity)] {
        &self.rows
    }

    pub fn labels(&self) -> impl Iterator<Item = Polarity> + '_ {
        self.rows.iter().map(|(_, label)| *label)
    }

    /// Origin ids of the rows, index-aligned with [`Dataset::rows`].
    pub fn origins(&self) -> &[usize] {
        &self.origin
    }

    /// Rows at the given indices, preserving origin ids.
    pub fn subset(&self, indices: &[usize]) -> Dataset<F> {
        Dataset {
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            level: self.level,
            origin: indices.iter().map(|&i| self.origin[i]).collect(),
        }
    }

    /// `(positive, negative)` row counts.
    pub fn class_counts(&self) -> (usize, usize) {
        let pos = self
            .rows
            .iter()
            .filter(|(_, l)| *l == Polarity::Positive)
            .count();
        (pos, self.rows.len() - pos)
    }
}

/// Training failure.
#[derive(Debug, Error, PartialEq)]
pub enum TrainError {
    #[error("training data contains no {missing} rows")]
    SingleClass { missing: Polarity },
    #[error("training needs at least {need} {label} rows, got {found}")]
    TooFewRows {
        label: Polarity,
        found: usize,
        need: usize,
    },
    #[error("non-finite feature value at row {row}, slot {slot}")]
    NonFiniteFeature { row: usize, slot: usize },
    #[error(transparent)]
    Feature(#[from] FeatureError),
}

/// Prediction failure.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PredictError {
    #[error("non-finite feature value at slot {slot}")]
    NonFiniteInput { slot: usize },
}

/// Weights and bias of a linear decision function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearModel<F: Scalar = f64> {
    pub weights: [F; FEATURE_COUNT],
    pub bias: F,
}

impl<F: Scalar> LinearModel<F> {
    pub fn zeros() -> Self {
        LinearModel {
            weights: [F::zero(); FEATURE_COUNT],
            bias: F::zero(),
        }
    }

    pub fn decision(&self, x: &[F; FEATURE_COUNT]) -> F {
        dot(&self.weights, x) + self.bias
    }
}

pub(crate) fn dot<F: Scalar>(a: &[F; FEATURE_COUNT], b: &[F; FEATURE_COUNT]) -> F {
    let mut acc = F::zero();
    for (x, y) in a.iter().zip(b) {
        acc += *x * *y;
    }
    acc
}

/// Learned state of one algorithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModelParams<F: Scalar = f64> {
    #[serde(bound(
        serialize = "F: Scalar",
        deserialize = "F: Scalar"
    ))]
    Svm(LinearModel<F>),
    NaiveBayes(GaussianNb<F>),
    DecisionTree(Tree<F>),
    LinearRegression(LinearModel<F>),
    LogisticRegression(LinearModel<F>),
}

/// A trained classifier with its preprocessing state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: Scalar", deserialize = "F: Scalar"))]
pub struct Model<F: Scalar = f64> {
    pub algorithm: Algorithm,
    pub params: ModelParams<F>,
    pub standardization: StandardizationParams<F>,
    pub weights_used: WeightVector<F>,
}

pub(crate) struct Prepared<F: Scalar> {
    pub xs: Vec<[F; FEATURE_COUNT]>,
    pub labels: Vec<Polarity>,
}

fn validate_rows<F: Scalar>(data: &Dataset<F>) -> Result<(), TrainError> {
    for (row, (v, _)) in data.rows().iter().enumerate() {
        for (slot, value) in v.values().iter().enumerate() {
            if !value.is_finite() {
                return Err(TrainError::NonFiniteFeature { row, slot });
            }
        }
    }
    let (pos, neg) = data.class_counts();
    for (label, count) in [(Polarity::Positive, pos), (Polarity::Negative, neg)] {
        if count == 0 {
            return Err(TrainError::SingleClass { missing: label });
        }
        if count < 2 {
            return Err(TrainError::TooFewRows {
                label,
                found: count,
                need: 2,
            });
        }
    }
    Ok(())
}

/// Train one algorithm. Deterministic for fixed `(data order, hyper, seed)`;
/// standardization is fitted on `data` and weights default to all ones.
pub fn train<F: Scalar>(
    algorithm: Algorithm,
    data: &Dataset<F>,
    hyper: &HyperParams,
    seed: u64,
    weights: Option<&WeightVector<F>>,
) -> Result<Model<F>, TrainError> {
    validate_rows(data)?;
    let weights_used = weights.cloned().unwrap_or_default();
    let vectors: Vec<FeatureVector<F>> = data.rows().iter().map(|(v, _)| *v).collect();
    let standardization = standardize_fit(&vectors)?;
    let prepared = Prepared {
        xs: data
            .rows()
            .iter()
            .map(|(v, _)| *apply_weights(&standardize_apply(&standardization, v), &weights_used).values())
            .collect(),
        labels: data.labels().collect(),
    };
    let params = match algorithm {
        Algorithm::Svm => ModelParams::Svm(svm::fit(&prepared, &hyper.svm, seed)),
        Algorithm::NaiveBayes => ModelParams::NaiveBayes(naive_bayes::fit(&prepared)),
        Algorithm::DecisionTree => ModelParams::DecisionTree(tree::fit(&prepared, &hyper.tree)),
        Algorithm::LinearRegression => {
            ModelParams::LinearRegression(linreg::fit(&prepared, &hyper.ridge))
        }
        Algorithm::LogisticRegression => {
            ModelParams::LogisticRegression(logistic::fit(&prepared, &hyper.logistic))
        }
    };
    Ok(Model {
        algorithm,
        params,
        standardization,
        weights_used,
    })
}

/// Predict one instance: `(label, score)`. The score is the positive-class
/// probability for logistic and naive Bayes, the signed decision value for
/// the linear models, and the reached leaf's predicted-class fraction for
/// the tree. Ties go positive.
pub fn predict<F: Scalar>(
    model: &Model<F>,
    v: &FeatureVector<F>,
) -> Result<(Polarity, F), PredictError> {
    for (slot, value) in v.values().iter().enumerate() {
        if !value.is_finite() {
            return Err(PredictError::NonFiniteInput { slot });
        }
    }
    let z = apply_weights(
        &standardize_apply(&model.standardization, v),
        &model.weights_used,
    );
    let x = z.values();
    let half = F::from_f64_lossy(0.5);
    let (label, score) = match &model.params {
        ModelParams::Svm(linear) | ModelParams::LinearRegression(linear) => {
            let margin = linear.decision(x);
            (polarity_of(margin >= F::zero()), margin)
        }
        ModelParams::LogisticRegression(linear) => {
            let p = logistic::sigmoid(linear.decision(x));
            (polarity_of(p >= half), p)
        }
        ModelParams::NaiveBayes(nb) => {
            let p = nb.positive_probability(x);
            let ll = nb.class_log_likelihoods(x);
            (polarity_of(ll[0] >= ll[1]), p)
        }
        ModelParams::DecisionTree(tree) => {
            let frac = tree.positive_fraction(x);
            let label = polarity_of(frac >= half);
            let score = match label {
                Polarity::Positive => frac,
                Polarity::Negative => F::one() - frac,
            };
            (label, score)
        }
    };
    Ok((label, score))
}

fn polarity_of(positive: bool) -> Polarity {
    if positive {
        Polarity::Positive
    } else {
        Polarity::Negative
    }
}

/// Fraction of `data` the model labels correctly.
pub fn accuracy<F: Scalar>(model: &Model<F>, data: &Dataset<F>) -> Result<f64, PredictError> {
    let mut correct = 0usize;
    for (v, label) in data.rows() {
        if predict(model, v)?.0 == *label {
            correct += 1;
        }
    }
    Ok(correct as f64 / data.len() as f64)
}

/// On-disk model envelope.
#[derive(Debug, Serialize, Deserialize)]
#[serde(bound(serialize = "F: Scalar", deserialize = "F: Scalar"))]
pub struct SavedModel<F: Scalar = f64> {
    pub format_version: u32,
    pub hyper: HyperParams,
    pub model: Model<F>,
}

/// Current model file version.
pub const MODEL_FORMAT_VERSION: u32 = 1;

/// Model persistence failure.
#[derive(Debug, Error)]
pub enum ModelIoError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("model file is not valid: {0}")]
    Format(#[from] serde_json::Error),
    #[error("unsupported model format version {found} (expected {expected})")]
    Version { found: u32, expected: u32 },
}

/// Write a model (with its hyperparameters) as versioned JSON.
pub fn save_model<F: Scalar>(
    model: &Model<F>,
    hyper: &HyperParams,
    path: &Path,
) -> Result<(), ModelIoError> {
    let saved = SavedModel {
        format_version: MODEL_FORMAT_VERSION,
        hyper: *hyper,
        model: model.clone(),
    };
    let writer = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(writer, &saved)?;
    Ok(())
}

/// Read a model written by [`save_model`].
pub fn load_model<F: Scalar>(path: &Path) -> Result<SavedModel<F>, ModelIoError> {
    let reader = BufReader::new(File::open(path)?);
    let saved: SavedModel<F> = serde_json::from_reader(reader)?;
    if saved.format_version != MODEL_FORMAT_VERSION {
        return Err(ModelIoError::Version {
            found: saved.format_version,
            expected: MODEL_FORMAT_VERSION,
        });
    }
    Ok(saved)
}

#[cfg(test)]
mod tests;
