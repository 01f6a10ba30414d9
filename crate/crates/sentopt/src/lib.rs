//! Cross-domain sentiment analysis built on SentiWordNet scores.
//!
//! The pipeline: parse the SentiWordNet 3.0 lexicon, ingest labeled review
//! corpora with POS-tagged tokens, extract a fixed 32-slot feature vector per
//! sentence (summed per document), classify with lexicon-only baselines or
//! five supervised classifiers, and search per-feature weights with a
//! (μ+λ) evolutionary strategy whose mutation step is controlled by the
//! 1/5 success rule under a geometric decay envelope. Experiments run as
//! stratified k-fold cross-validation and emit reproducible reports.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); every generic
//! type defaults to `f64`, and `f32` aliases live at the crate root.

pub mod baselines;
pub mod classifiers;
pub mod cli;
pub mod corpus;
pub mod evaluation;
pub mod features;
pub mod lexicon;
pub mod optimizer;
pub mod scalar;
pub mod types;

pub use scalar::Scalar;
pub use types::{Level, Polarity, WordClass};

/// Single-precision alias for [`features::FeatureVector`].
pub type FeatureVector32 = features::FeatureVector<f32>;
/// Single-precision alias for [`features::WeightVector`].
pub type WeightVector32 = features::WeightVector<f32>;
/// Single-precision alias for [`lexicon::LexiconIndex`].
pub type LexiconIndex32 = lexicon::LexiconIndex<f32>;
/// Single-precision alias for [`classifiers::Dataset`].
pub type Dataset32 = classifiers::Dataset<f32>;
