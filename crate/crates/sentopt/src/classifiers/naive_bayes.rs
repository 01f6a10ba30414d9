//! Gaussian naive Bayes with per-class feature densities.

use serde::{Deserialize, Serialize};

use super::Prepared;
use crate::features::FEATURE_COUNT;
use crate::scalar::Scalar;
use crate::types::Polarity;

/// Relative variance floor: each per-class variance is raised to at least
/// `1e-9 ×` the largest overall feature variance (or `1e-9` absolute when
/// every feature is constant).
const VARIANCE_FLOOR_SCALE: f64 = 1e-9;

/// Class index 0 is positive, 1 is negative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianNb<F: Scalar = f64> {
    pub log_prior: [F; 2],
    pub mean: [[F; FEATURE_COUNT]; 2],
    pub variance: [[F; FEATURE_COUNT]; 2],
}

impl<F: Scalar> GaussianNb<F> {
    /// Log prior plus summed log densities, per class.
    pub fn class_log_likelihoods(&self, x: &[F; FEATURE_COUNT]) -> [F; 2] {
        let two_pi = F::from_f64_lossy(std::f64::consts::TAU);
        let half = F::from_f64_lossy(0.5);
        let mut out = [F::zero(); 2];
        for c in 0..2 {
            let mut ll = self.log_prior[c];
            for i in 0..FEATURE_COUNT {
                let var = self.variance[c][i];
                let d = x[i] - self.mean[c][i];
                ll = ll - half * ((two_pi * var).ln() + d * d / var);
            }
            out[c] = ll;
        }
        out
    }

    /// Posterior probability of the positive class.
    pub fn positive_probability(&self, x: &[F; FEATURE_COUNT]) -> F {
        let ll = self.class_log_likelihoods(x);
        F::one() / (F::one() + (ll[1] - ll[0]).exp())
    }
}

pub(super) fn fit<F: Scalar>(prepared: &Prepared<F>) -> GaussianNb<F> {
    let n = prepared.xs.len();
    let mut counts = [0usize; 2];
    let mut mean = [[F::zero(); FEATURE_COUNT]; 2];
    for (x, label) in prepared.xs.iter().zip(&prepared.labels) {
        let c = (*label == Polarity::Negative) as usize;
        counts[c] += 1;
        for i in 0..FEATURE_COUNT {
            mean[c][i] += x[i];
        }
    }
    for c in 0..2 {
        let nc = F::from_usize(counts[c]).expect("count fits scalar");
        for m in &mut mean[c] {
            *m = *m / nc;
        }
    }

    let mut variance = [[F::zero(); FEATURE_COUNT]; 2];
    for (x, label) in prepared.xs.iter().zip(&prepared.labels) {
        let c = (*label == Polarity::Negative) as usize;
        for i in 0..FEATURE_COUNT {
            let d = x[i] - mean[c][i];
            variance[c][i] += d * d;
        }
    }
    for c in 0..2 {
        let nc = F::from_usize(counts[c]).expect("count fits scalar");
        for v in &mut variance[c] {
            *v = *v / nc;
        }
    }

    // overall (pooled) variance per feature, for the floor
    let nf = F::from_usize(n).expect("count fits scalar");
    let mut overall_max = F::zero();
    for i in 0..FEATURE_COUNT {
        let mut m = F::zero();
        for x in &prepared.xs {
            m += x[i];
        }
        m = m / nf;
        let mut var = F::zero();
        for x in &prepared.xs {
            let d = x[i] - m;
            var += d * d;
        }
        var = var / nf;
        overall_max = overall_max.max(var);
    }
    let scale = F::from_f64_lossy(VARIANCE_FLOOR_SCALE);
    let floor = if overall_max > F::zero() {
        scale * overall_max
    } else {
        scale
    };
    for c in 0..2 {
        for v in &mut variance[c] {
            *v = v.max(floor);
        }
    }

    let log_prior = [
        (F::from_usize(counts[0]).unwrap() / nf).ln(),
        (F::from_usize(counts[1]).unwrap() / nf).ln(),
    ];
    GaussianNb {
        log_prior,
        mean,
        variance,
    }
}
