//! Ridge-regularized least squares on ±1 labels, solved exactly by the
//! normal equations; classification is the sign of the fitted value.

use super::{dot, LinearModel, Prepared, RidgeHyper};
use crate::features::FEATURE_COUNT;
use crate::scalar::Scalar;
use crate::types::Polarity;

const DIM: usize = FEATURE_COUNT + 1; // weights plus intercept

/// Gradient of `(1/n)‖Aβ − y‖² + ε‖β‖²` at `β = (w, bias)`, where `A` is
/// the design matrix with an appended all-ones column and `y` the ±1
/// labels. At the normal-equation solution this is zero up to solver
/// precision.
pub fn objective_gradient<F: Scalar>(
    xs: &[[F; FEATURE_COUNT]],
    ys: &[F],
    w: &[F; FEATURE_COUNT],
    bias: F,
    epsilon: F,
) -> ([F; FEATURE_COUNT], F) {
    let n = F::from_usize(xs.len()).expect("count fits scalar");
    let two = F::from_f64_lossy(2.0);
    let mut grad_w = [F::zero(); FEATURE_COUNT];
    let mut grad_b = F::zero();
    for (x, y) in xs.iter().zip(ys) {
        let residual = dot(w, x) + bias - *y;
        for i in 0..FEATURE_COUNT {
            grad_w[i] += residual * x[i];
        }
        grad_b += residual;
    }
    for (g, wi) in grad_w.iter_mut().zip(w) {
        *g = two * (*g / n + epsilon * *wi);
    }
    (grad_w, two * (grad_b / n + epsilon * bias))
}

pub(super) fn fit<F: Scalar>(prepared: &Prepared<F>, hyper: &RidgeHyper) -> LinearModel<F> {
    let n = F::from_usize(prepared.xs.len()).expect("count fits scalar");
    let epsilon = F::from_f64_lossy(hyper.epsilon);
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

    // (1/n) AᵀA + εI and (1/n) Aᵀy with A = [X | 1]
    let mut gram = vec![[F::zero(); DIM]; DIM];
    let mut rhs = [F::zero(); DIM];
    for (x, y) in prepared.xs.iter().zip(&ys) {
        let mut a = [F::zero(); DIM];
        a[..FEATURE_COUNT].copy_from_slice(x);
        a[FEATURE_COUNT] = F::one();
        for i in 0..DIM {
            for j in i..DIM {
                gram[i][j] += a[i] * a[j];
            }
            rhs[i] += a[i] * *y;
        }
    }
    for i in 0..DIM {
        for j in i..DIM {
            gram[i][j] = gram[i][j] / n;
            gram[j][i] = gram[i][j];
        }
        gram[i][i] += epsilon;
        rhs[i] = rhs[i] / n;
    }

    let beta = solve(&mut gram, &mut rhs);
    let mut model = LinearModel::zeros();
    model.weights.copy_from_slice(&beta[..FEATURE_COUNT]);
    model.bias = beta[FEATURE_COUNT];
    model
}

/// Gaussian elimination with partial pivoting; the ridge term keeps the
/// system nonsingular.
fn solve<F: Scalar>(a: &mut [[F; DIM]], b: &mut [F; DIM]) -> [F; DIM] {
    for col in 0..DIM {
        let mut pivot = col;
        for row in col + 1..DIM {
            if a[row][col].abs() > a[pivot][col].abs() {
                pivot = row;
            }
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        let diag = a[col][col];
        for row in col + 1..DIM {
            let factor = a[row][col] / diag;
            if factor == F::zero() {
                continue;
            }
            for k in col..DIM {
                let delta = factor * a[col][k];
                a[row][k] = a[row][k] - delta;
            }
            b[row] = b[row] - factor * b[col];
        }
    }
    let mut x = [F::zero(); DIM];
    for col in (0..DIM).rev() {
        let mut acc = b[col];
        for k in col + 1..DIM {
            acc = acc - a[col][k] * x[k];
        }
        x[col] = acc / a[col][col];
    }
    x
}
