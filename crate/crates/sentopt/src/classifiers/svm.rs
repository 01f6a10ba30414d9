//! Linear SVM trained with the Pegasos stochastic subgradient scheme:
//! hinge loss, L2 penalty on the weights, unregularized bias, and a
//! seeded shuffle of the row order each epoch.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{LinearModel, Prepared, SvmHyper};
use crate::features::FEATURE_COUNT;
use crate::scalar::Scalar;
use crate::types::Polarity;

pub(super) fn fit<F: Scalar>(
    prepared: &Prepared<F>,
    hyper: &SvmHyper,
    seed: u64,
) -> LinearModel<F> {
    let ys: Vec<F> = prepared
        .labels
        .iter()
        .map(|l| {
            if *l == Polarity::Positive {
                F::one()
            } else {
                -F::one()
            }
        })
        .collect();
    let lambda = F::from_f64_lossy(hyper.l2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..prepared.xs.len()).collect();
    let mut model = LinearModel::zeros();
    let mut step = 0u64;
    for _ in 0..hyper.epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            step += 1;
            let eta = F::one() / (lambda * F::from_u64(step).expect("step fits scalar"));
            let x = &prepared.xs[i];
            let y = ys[i];
            let violated = y * model.decision(x) < F::one();
            let shrink = F::one() - eta * lambda;
            for w in &mut model.weights {
                *w = *w * shrink;
            }
            if violated {
                for (w, xi) in model.weights.iter_mut().zip(x.iter()) {
                    *w = *w + eta * y * *xi;
                }
                model.bias = model.bias + eta * y;
            }
        }
    }
    model
}
