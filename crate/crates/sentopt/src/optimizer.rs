//! (μ+λ) evolutionary strategy over feature weights.
//!
//! Offspring are Gaussian perturbations of uniformly chosen parents,
//! clamped to `[0, 1]` per coordinate, with one shared step size σ. The
//! step is governed by the 1/5 success rule — raise σ when more than a
//! fifth of mutations beat their parent, lower it otherwise — optionally
//! bounded above by a geometric decay schedule that starts at σ₀ and
//! reaches the floor at the final generation. Selection keeps the best μ
//! of parents and offspring, so the best fitness never decreases.
//!
//! Every individual draws from an RNG stream seeded by (seed, generation,
//! offspring index), which keeps runs reproducible even when offspring
//! evaluate concurrently.

use std::collections::BTreeSet;
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classifiers::{
    accuracy, predict, train, Algorithm, Dataset, HyperParams, PredictError, TrainError,
};
use crate::evaluation::stratified_row_folds;
use crate::features::WeightVector;
use crate::scalar::Scalar;

/// Target success ratio of the 1/5 rule.
pub const ONE_FIFTH: f64 = 0.2;

/// How fitness is measured on the training data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitnessMode {
    /// Train on the weighted data and score the same data.
    Resubstitution,
    /// Mean accuracy of a seeded k-fold split inside the data.
    InternalCv(usize),
}

/// Which reading of the step-size narrative is active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaPolicy {
    /// σ(t) follows the decay schedule alone.
    ScheduleOnly,
    /// σ follows the 1/5 rule alone.
    OneFifthOnly,
    /// 1/5 rule bounded above by the schedule (default).
    Combined,
}

impl std::str::FromStr for SigmaPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "schedule-only" => Ok(SigmaPolicy::ScheduleOnly),
            "one-fifth-only" => Ok(SigmaPolicy::OneFifthOnly),
            "combined" => Ok(SigmaPolicy::Combined),
            other => Err(format!("unknown sigma policy `{other}`")),
        }
    }
}

impl std::fmt::Display for SigmaPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SigmaPolicy::ScheduleOnly => "schedule-only",
            SigmaPolicy::OneFifthOnly => "one-fifth-only",
            SigmaPolicy::Combined => "combined",
        })
    }
}

/// Evolution-strategy configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EsConfig {
    /// Parents kept per generation.
    pub mu: usize,
    /// Offspring drawn per generation.
    pub lambda: usize,
    /// Generations to run.
    pub generations: usize,
    /// Adapt σ every this many generations.
    pub adapt_every: usize,
    /// Multiplicative 1/5-rule factor in (0, 1).
    pub adapt_factor: f64,
    /// Initial step size.
    pub sigma0: f64,
    /// Schedule value at the final generation.
    pub sigma_floor: f64,
    /// Hard lower clamp on σ.
    pub sigma_min: f64,
    /// Hard upper clamp on σ.
    pub sigma_max: f64,
    pub seed: u64,
    pub fitness_mode: FitnessMode,
    pub sigma_policy: SigmaPolicy,
}

impl Default for EsConfig {
    fn default() -> Self {
        EsConfig {
            mu: 5,
            lambda: 25,
            generations: 100,
            adapt_every: 5,
            adapt_factor: 0.85,
            sigma0: 1.0,
            sigma_floor: 0.1,
            sigma_min: 0.01,
            sigma_max: 1.0,
            seed: 42,
            fitness_mode: FitnessMode::InternalCv(3),
            sigma_policy: SigmaPolicy::Combined,
        }
    }
}

impl EsConfig {
    pub fn validate(&self) -> Result<(), EsError> {
        let fail = |msg: String| Err(EsError::InvalidConfig(msg));
        if self.mu < 1 {
            return fail("mu must be at least 1".into());
        }
        if self.lambda < self.mu {
            return fail(format!(
                "lambda ({}) must be at least mu ({})",
                self.lambda, self.mu
            ));
        }
        if self.generations < 1 {
            return fail("generations must be at least 1".into());
        }
        if self.adapt_every < 1 || self.adapt_every > self.generations {
            return fail(format!(
                "adaptation interval {} must lie in [1, {}]",
                self.adapt_every, self.generations
            ));
        }
        if !(self.adapt_factor > 0.0 && self.adapt_factor < 1.0) {
            return fail(format!(
                "adaptation factor {} must lie in (0, 1)",
                self.adapt_factor
            ));
        }
        if !(self.sigma0 > 0.0) || !(self.sigma_floor > 0.0) {
            return fail("sigma0 and sigma_floor must be positive".into());
        }
        if !(self.sigma_min > 0.0 && self.sigma_min <= self.sigma_max) {
            return fail("sigma clamps must satisfy 0 < min <= max".into());
        }
        if let FitnessMode::InternalCv(k) = self.fitness_mode {
            if k < 2 {
                return fail(format!("internal CV needs k >= 2, got {k}"));
            }
        }
        Ok(())
    }
}

/// Fitness of one weight vector; higher is better.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitnessValue {
    pub accuracy: f64,
}

/// Optimization failure.
#[derive(Debug, Error)]
pub enum EsError {
    #[error("invalid ES configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Train(#[from] TrainError),
    #[error(transparent)]
    Predict(#[from] PredictError),
}

/// A fitness callback; higher values win. Implementations must be `Sync`
/// because offspring evaluate concurrently.
pub trait FitnessFn<F: Scalar>: Sync {
    fn evaluate(&self, weights: &WeightVector<F>) -> Result<f64, EsError>;
}

impl<F: Scalar, G> FitnessFn<F> for G
where
    G: Fn(&WeightVector<F>) -> f64 + Sync,
{
    fn evaluate(&self, weights: &WeightVector<F>) -> Result<f64, EsError> {
        Ok(self(weights))
    }
}

/// Deterministic decay envelope: `σ₀ · (floor/σ₀)^(t/T)`. Exactly `σ₀` at
/// `t = 0` and exactly the floor at `t = T`.
pub fn schedule_sigma(t: usize, cfg: &EsConfig) -> f64 {
    cfg.sigma0 * (cfg.sigma_floor / cfg.sigma0).powf(t as f64 / cfg.generations as f64)
}

/// 1/5-rule update: grow σ above the target ratio, shrink below it, hold
/// at equality; the result is clamped to the configured range.
pub fn adapt_sigma(sigma: f64, success_ratio: f64, cfg: &EsConfig) -> f64 {
    let next = if success_ratio > ONE_FIFTH {
        sigma / cfg.adapt_factor
    } else if success_ratio < ONE_FIFTH {
        sigma * cfg.adapt_factor
    } else {
        sigma
    };
    next.clamp(cfg.sigma_min, cfg.sigma_max)
}

/// Perturb every coordinate with the provided draw (mean-zero, unit
/// deviation), scaled by σ, clamping into `[0, 1]`.
fn mutate_with<F: Scalar>(
    weights: &WeightVector<F>,
    sigma: f64,
    mut draw: impl FnMut() -> f64,
) -> WeightVector<F> {
    let mut out = *weights.weights();
    for w in &mut out {
        let step = F::from_f64_lossy(draw() * sigma);
        *w = (*w + step).max(F::zero()).min(F::one());
    }
    WeightVector::clamped(out)
}

/// Gaussian additive mutation at step σ, clamped to `[0, 1]`.
pub fn mutate<F: Scalar, R: Rng>(
    weights: &WeightVector<F>,
    sigma: f64,
    rng: &mut R,
) -> WeightVector<F> {
    mutate_with(weights, sigma, || StandardNormal.sample(rng))
}

/// One row of the per-generation trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenerationRecord {
    pub generation: usize,
    /// σ used for this generation's mutations.
    pub sigma: f64,
    /// Best fitness in the population after selection.
    pub best_fitness: f64,
    /// Mean fitness of the population after selection.
    pub mean_fitness: f64,
    /// Fraction of this generation's offspring that beat their parent.
    pub success_ratio: f64,
}

/// Result of one evolution run.
#[derive(Debug, Clone)]
pub struct EsOutcome<F: Scalar = f64> {
    pub best: WeightVector<F>,
    pub best_fitness: f64,
    pub trace: Vec<GenerationRecord>,
}

#[derive(Clone)]
struct Individual<F: Scalar> {
    weights: WeightVector<F>,
    fitness: f64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent, reproducible stream per (generation, offspring) pair.
fn stream_seed(seed: u64, generation: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed.wrapping_add(generation)).wrapping_add(index))
}

fn effective_sigma(adapted: f64, t: usize, cfg: &EsConfig) -> f64 {
    match cfg.sigma_policy {
        SigmaPolicy::ScheduleOnly => schedule_sigma(t, cfg).clamp(cfg.sigma_min, cfg.sigma_max),
        SigmaPolicy::OneFifthOnly => adapted,
        SigmaPolicy::Combined => adapted
            .min(schedule_sigma(t, cfg))
            .clamp(cfg.sigma_min, cfg.sigma_max),
    }
}

/// Run the ES against an arbitrary fitness function.
pub fn evolve_with<F: Scalar>(
    fitness: &impl FitnessFn<F>,
    cfg: &EsConfig,
) -> Result<EsOutcome<F>, EsError> {
    cfg.validate()?;

    let mut adapted = cfg.sigma0.clamp(cfg.sigma_min, cfg.sigma_max);
    let sigma_init = effective_sigma(adapted, 0, cfg);

    // all-ones individual plus mu-1 mutations of it
    let seeds: Vec<WeightVector<F>> = std::iter::once(WeightVector::ones())
        .chain((1..cfg.mu).map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(cfg.seed, 0, i as u64));
            mutate(&WeightVector::ones(), sigma_init, &mut rng)
        }))
        .collect();
    let mut population: Vec<Individual<F>> = seeds
        .into_par_iter()
        .map(|weights| {
            let fitness = fitness.evaluate(&weights)?;
            Ok(Individual { weights, fitness })
        })
        .collect::<Result<_, EsError>>()?;
    population.sort_by(|a, b| b.fitness.partial_cmp(&a.fitness).expect("finite fitness"));

    let mut best = population[0].clone();
    let mut trace = Vec::with_capacity(cfg.generations + 1);
    trace.push(GenerationRecord {
        generation: 0,
        sigma: sigma_init,
        best_fitness: best.fitness,
        mean_fitness: population.iter().map(|i| i.fitness).sum::<f64>() / population.len() as f64,
        success_ratio: 0.0,
    });

    let mut window_successes = 0usize;
    let mut window_total = 0usize;

    for t in 1..=cfg.generations {
        let sigma = effective_sigma(adapted, t, cfg);

        struct Offspring<F: Scalar> {
            individual: Individual<F>,
            success: bool,
        }
        let offspring: Vec<Offspring<F>> = (0..cfg.lambda)
            .into_par_iter()
            .map(|j| {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(stream_seed(cfg.seed, t as u64, j as u64));
                let parent = &population[rng.random_range(0..cfg.mu)];
                let weights = mutate(&parent.weights, sigma, &mut rng);
                let fitness = fitness.evaluate(&weights)?;
                Ok(Offspring {
                    success: fitness > parent.fitness,
                    individual: Individual { weights, fitness },
                })
            })
            .collect::<Result<_, EsError>>()?;

        let successes = offspring.iter().filter(|o| o.success).count();
        window_successes += successes;
        window_total += cfg.lambda;

        population.extend(offspring.into_iter().map(|o| o.individual));
        // stable sort: parents precede offspring on ties
        population.sort_by(|a, b| b.fitness.partial_cmp(&a.fitness).expect("finite fitness"));
        population.truncate(cfg.mu);

        if population[0].fitness > best.fitness {
            best = population[0].clone();
        }

        if t % cfg.adapt_every == 0 {
            let ratio = window_successes as f64 / window_total as f64;
            adapted = adapt_sigma(adapted, ratio, cfg);
            window_successes = 0;
            window_total = 0;
        }

        trace.push(GenerationRecord {
            generation: t,
            sigma,
            best_fitness: population[0].fitness,
            mean_fitness: population.iter().map(|i| i.fitness).sum::<f64>()
                / population.len() as f64,
            success_ratio: successes as f64 / cfg.lambda as f64,
        });
    }

    Ok(EsOutcome {
        best: best.weights,
        best_fitness: best.fitness,
        trace,
    })
}

/// Dataset-backed fitness. Records the origin id of every row it reads so
/// harnesses can audit that held-out instances never reach fitness.
pub struct DatasetFitness<'a, F: Scalar = f64> {
    data: &'a Dataset<F>,
    algorithm: Algorithm,
    hyper: &'a HyperParams,
    mode: FitnessMode,
    seed: u64,
    folds: Option<Vec<usize>>,
    accessed: Mutex<BTreeSet<usize>>,
}

impl<'a, F: Scalar> DatasetFitness<'a, F> {
    pub fn new(
        data: &'a Dataset<F>,
        algorithm: Algorithm,
        hyper: &'a HyperParams,
        cfg: &EsConfig,
    ) -> Result<Self, EsError> {
        cfg.validate()?;
        let folds = match cfg.fitness_mode {
            FitnessMode::Resubstitution => None,
            FitnessMode::InternalCv(k) => {
                let labels: Vec<_> = data.labels().collect();
                Some(
                    stratified_row_folds(&labels, k, cfg.seed)
                        .map_err(|e| EsError::InvalidConfig(e.to_string()))?,
                )
            }
        };
        Ok(DatasetFitness {
            data,
            algorithm,
            hyper,
            mode: cfg.fitness_mode,
            seed: cfg.seed,
            folds,
            accessed: Mutex::new(BTreeSet::new()),
        })
    }

    /// Origin ids of every row fitness evaluation has read so far.
    pub fn accessed_rows(&self) -> BTreeSet<usize> {
        self.accessed.lock().expect("access log lock").clone()
    }
}

impl<F: Scalar> FitnessFn<F> for DatasetFitness<'_, F> {
    fn evaluate(&self, weights: &WeightVector<F>) -> Result<f64, EsError> {
        self.accessed
            .lock()
            .expect("access log lock")
            .extend(self.data.origins().iter().copied());
        match self.mode {
            FitnessMode::Resubstitution => {
                let model = train(self.algorithm, self.data, self.hyper, self.seed, Some(weights))?;
                Ok(accuracy(&model, self.data)?)
            }
            FitnessMode::InternalCv(k) => {
                let folds = self.folds.as_ref().expect("folds precomputed");
                let mut fold_accuracies = Vec::with_capacity(k);
                for fold in 0..k {
                    let train_idx: Vec<usize> = (0..self.data.len())
                        .filter(|i| folds[*i] != fold)
                        .collect();
                    let test_idx: Vec<usize> = (0..self.data.len())
                        .filter(|i| folds[*i] == fold)
                        .collect();
                    if test_idx.is_empty() {
                        continue;
                    }
                    let train_part = self.data.subset(&train_idx);
                    let model =
                        train(self.algorithm, &train_part, self.hyper, self.seed, Some(weights))?;
                    let mut correct = 0usize;
                    for &i in &test_idx {
                        let (v, label) = &self.data.rows()[i];
                        if predict(&model, v)?.0 == *label {
                            correct += 1;
                        }
                    }
                    fold_accuracies.push(correct as f64 / test_idx.len() as f64);
                }
                Ok(fold_accuracies.iter().sum::<f64>() / fold_accuracies.len() as f64)
            }
        }
    }
}

/// Fitness of one weight vector under the configured mode.
pub fn fitness<F: Scalar>(
    weights: &WeightVector<F>,
    data: &Dataset<F>,
    algorithm: Algorithm,
    hyper: &HyperParams,
    cfg: &EsConfig,
) -> Result<FitnessValue, EsError> {
    let f = DatasetFitness::new(data, algorithm, hyper, cfg)?;
    Ok(FitnessValue {
        accuracy: f.evaluate(weights)?,
    })
}

/// Evolve weights against the dataset-backed fitness.
pub fn evolve<F: Scalar>(
    data: &Dataset<F>,
    algorithm: Algorithm,
    hyper: &HyperParams,
    cfg: &EsConfig,
) -> Result<EsOutcome<F>, EsError> {
    let fitness = DatasetFitness::new(data, algorithm, hyper, cfg)?;
    evolve_with(&fitness, cfg)
}
