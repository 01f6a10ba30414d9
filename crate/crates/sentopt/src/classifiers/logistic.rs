//! L2-regularized logistic regression fitted by full-batch gradient
//! descent from a zero initialization. No randomness is involved.

use super::{dot, LinearModel, LogisticHyper, Prepared};
use crate::features::FEATURE_COUNT;
use crate::scalar::Scalar;
use crate::types::Polarity;

pub(super) fn sigmoid<F: Scalar>(z: F) -> F {
    F::one() / (F::one() + (-z).exp())
}

/// `ln(1 + e^z)` without overflow.
fn softplus<F: Scalar>(z: F) -> F {
    z.max(F::zero()) + (-(z.abs())).exp().ln_1p()
}

/// Mean negative log-likelihood plus `l2/2 · ‖w‖²` (bias unpenalized).
/// Labels are 0/1.
pub fn loss<F: Scalar>(
    xs: &[[F; FEATURE_COUNT]],
    ys: &[F],
    w: &[F; FEATURE_COUNT],
    bias: F,
    l2: F,
) -> F {
    let n = F::from_usize(xs.len()).expect("count fits scalar");
    let mut total = F::zero();
    for (x, y) in xs.iter().zip(ys) {
        let z = dot(w, x) + bias;
        total += softplus(z) - *y * z;
    }
    let half = F::from_f64_lossy(0.5);
    let mut penalty = F::zero();
    for wi in w {
        penalty += *wi * *wi;
    }
    total / n + half * l2 * penalty
}

/// Gradient of [`loss`] in `(w, bias)`.
pub fn gradient<F: Scalar>(
    xs: &[[F; FEATURE_COUNT]],
    ys: &[F],
    w: &[F; FEATURE_COUNT],
    bias: F,
    l2: F,
) -> ([F; FEATURE_COUNT], F) {
    let n = F::from_usize(xs.len()).expect("count fits scalar");
    let mut grad_w = [F::zero(); FEATURE_COUNT];
    let mut grad_b = F::zero();
    for (x, y) in xs.iter().zip(ys) {
        let residual = sigmoid(dot(w, x) + bias) - *y;
        for i in 0..FEATURE_COUNT {
            grad_w[i] += residual * x[i];
        }
        grad_b += residual;
    }
    for (g, wi) in grad_w.iter_mut().zip(w) {
        *g = *g / n + l2 * *wi;
    }
    (grad_w, grad_b / n)
}

pub(super) fn fit<F: Scalar>(prepared: &Prepared<F>, hyper: &LogisticHyper) -> LinearModel<F> {
    let ys: Vec<F> = prepared
        .labels
        .iter()
        .map(|l| {
            if *l == Polarity::Positive {
                F::one()
            } else {
                F::zero()
            }
        })
        .collect();
    let l2 = F::from_f64_lossy(hyper.l2);
    let lr = F::from_f64_lossy(hyper.learning_rate);
    let mut model = LinearModel::zeros();
    for _ in 0..hyper.epochs {
        let (grad_w, grad_b) = gradient(&prepared.xs, &ys, &model.weights, model.bias, l2);
        for (w, g) in model.weights.iter_mut().zip(&grad_w) {
            *w = *w - lr * *g;
        }
        model.bias = model.bias - lr * grad_b;
    }
    model
}
