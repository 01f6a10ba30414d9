use super::*;
use crate::features::{apply_weights, standardize_apply};
use crate::types::{Level, Polarity};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn vector(values: [f64; FEATURE_COUNT]) -> FeatureVector {
    FeatureVector::new(values, Level::Document)
}

fn slot(index: usize, value: f64) -> [f64; FEATURE_COUNT] {
    let mut v = [0.0; FEATURE_COUNT];
    v[index] = value;
    v
}

/// Two well-separated blobs on feature 0 with mild noise elsewhere.
pub(super) fn two_blob_dataset(n: usize, seed: u64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let positive = i % 2 == 0;
        let mut v = [0.0; FEATURE_COUNT];
        v[0] = if positive { 2.0 } else { -2.0 } + rng.random_range(-0.5..0.5);
        for x in v.iter_mut().skip(1).take(5) {
            *x = rng.random_range(-1.0..1.0);
        }
        rows.push((
            vector(v),
            if positive {
                Polarity::Positive
            } else {
                Polarity::Negative
            },
        ));
    }
    Dataset::new(rows, Level::Document)
}

fn identity_standardization() -> StandardizationParams {
    StandardizationParams {
        mean: [0.0; FEATURE_COUNT],
        std_dev: [1.0; FEATURE_COUNT],
    }
}

#[test]
fn svm_and_logistic_separate_two_blobs() {
    let data = two_blob_dataset(200, 11);
    let hyper = HyperParams::default();
    for algorithm in [Algorithm::Svm, Algorithm::LogisticRegression] {
        let model = train(algorithm, &data, &hyper, 42, None).unwrap();
        let acc = accuracy(&model, &data).unwrap();
        assert!(acc >= 0.99, "{algorithm} training accuracy {acc}");
    }
}

#[test]
fn naive_bayes_constant_features_predict_majority_prior() {
    let mut rows = Vec::new();
    for i in 0..8 {
        let label = if i < 3 {
            Polarity::Positive
        } else {
            Polarity::Negative
        };
        rows.push((vector([0.0; FEATURE_COUNT]), label));
    }
    let data = Dataset::new(rows, Level::Document);
    let model = train(Algorithm::NaiveBayes, &data, &HyperParams::default(), 0, None).unwrap();
    let (label, score) = predict(&model, &vector([0.0; FEATURE_COUNT])).unwrap();
    assert_eq!(label, Polarity::Negative);
    // posterior equals the prior when the densities cancel
    assert!((score - 3.0 / 8.0).abs() < 1e-12);
}

#[test]
fn naive_bayes_matches_density_product_oracle() {
    let rows = vec![
        (vector(slot(0, 1.0)), Polarity::Positive),
        (vector(slot(0, 2.0)), Polarity::Positive),
        (vector(slot(0, 1.5)), Polarity::Positive),
        (vector(slot(0, -1.0)), Polarity::Negative),
        (vector(slot(0, -2.0)), Polarity::Negative),
    ];
    let data = Dataset::new(rows, Level::Document);
    let model = train(Algorithm::NaiveBayes, &data, &HyperParams::default(), 0, None).unwrap();
    let ModelParams::NaiveBayes(nb) = &model.params else {
        panic!("expected naive bayes params")
    };

    let probe = vector(slot(0, 0.8));
    let z = apply_weights(
        &standardize_apply(&model.standardization, &probe),
        &model.weights_used,
    );
    let got = nb.class_log_likelihoods(z.values());

    // independent oracle: log of prior times the product of densities
    let priors = [3.0 / 5.0, 2.0 / 5.0];
    for c in 0..2 {
        let mut product = priors[c];
        for i in 0..FEATURE_COUNT {
            let var = nb.variance[c][i];
            let d = z.values()[i] - nb.mean[c][i];
            product *= (-d * d / (2.0 * var)).exp() / (2.0 * std::f64::consts::PI * var).sqrt();
        }
        assert!(
            (got[c] - product.ln()).abs() < 1e-9,
            "class {c}: {} vs {}",
            got[c],
            product.ln()
        );
    }
}

#[test]
fn decision_tree_solves_xor_at_depth_two() {
    let mut rows = Vec::new();
    for copy in 0..5 {
        for (a, b) in [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)] {
            let mut v = [0.0; FEATURE_COUNT];
            v[0] = a;
            v[1] = b;
            v[2] = copy as f64 * 0.01; // break exact duplication
            let label = if (a > 0.5) != (b > 0.5) {
                Polarity::Positive
            } else {
                Polarity::Negative
            };
            rows.push((vector(v), label));
        }
    }
    let data = Dataset::new(rows, Level::Document);
    let hyper = HyperParams {
        tree: TreeHyper {
            max_depth: 2,
            min_leaf: 2,
        },
        ..HyperParams::default()
    };
    let model = train(Algorithm::DecisionTree, &data, &hyper, 0, None).unwrap();
    assert_eq!(accuracy(&model, &data).unwrap(), 1.0);
}

#[test]
fn tree_predictions_equal_leaf_majority() {
    let data = two_blob_dataset(60, 3);
    let model = train(Algorithm::DecisionTree, &data, &HyperParams::default(), 0, None).unwrap();
    let ModelParams::DecisionTree(tree) = &model.params else {
        panic!("expected tree params")
    };
    for (v, _) in data.rows() {
        let z = apply_weights(
            &standardize_apply(&model.standardization, v),
            &model.weights_used,
        );
        let frac = tree.positive_fraction(z.values());
        let expected = if frac >= 0.5 {
            Polarity::Positive
        } else {
            Polarity::Negative
        };
        let (label, score) = predict(&model, v).unwrap();
        assert_eq!(label, expected);
        assert_eq!(score, if frac >= 0.5 { frac } else { 1.0 - frac });
    }
}

#[test]
fn tree_invariant_under_power_of_two_feature_rescaling() {
    let base = two_blob_dataset(80, 9);
    let scaled_rows: Vec<_> = base
        .rows()
        .iter()
        .map(|(v, label)| {
            let mut values = *v.values();
            values[0] *= 4.0;
            (FeatureVector::new(values, Level::Document), *label)
        })
        .collect();
    let scaled = Dataset::new(scaled_rows, Level::Document);
    let hyper = HyperParams::default();
    let model_a = train(Algorithm::DecisionTree, &base, &hyper, 0, None).unwrap();
    let model_b = train(Algorithm::DecisionTree, &scaled, &hyper, 0, None).unwrap();
    for ((v, _), (w, _)) in base.rows().iter().zip(scaled.rows()) {
        assert_eq!(
            predict(&model_a, v).unwrap(),
            predict(&model_b, w).unwrap()
        );
    }
}

#[test]
fn logistic_gradient_matches_central_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 30;
    let xs: Vec<[f64; FEATURE_COUNT]> = (0..n)
        .map(|_| {
            let mut x = [0.0; FEATURE_COUNT];
            for v in &mut x {
                *v = rng.random_range(-2.0..2.0);
            }
            x
        })
        .collect();
    let ys: Vec<f64> = (0..n).map(|i| (i % 2) as f64).collect();
    let l2 = 1e-3;

    for _ in 0..10 {
        let mut w = [0.0; FEATURE_COUNT];
        for v in &mut w {
            *v = rng.random_range(-1.0..1.0);
        }
        let b: f64 = rng.random_range(-1.0..1.0);
        let (grad_w, grad_b) = logistic_gradient(&xs, &ys, &w, b, l2);

        let mut fd = [0.0; FEATURE_COUNT + 1];
        let h = 1e-6;
        for i in 0..FEATURE_COUNT {
            let mut lo = w;
            let mut hi = w;
            lo[i] -= h;
            hi[i] += h;
            fd[i] = (logistic_loss(&xs, &ys, &hi, b, l2) - logistic_loss(&xs, &ys, &lo, b, l2))
                / (2.0 * h);
        }
        fd[FEATURE_COUNT] = (logistic_loss(&xs, &ys, &w, b + h, l2)
            - logistic_loss(&xs, &ys, &w, b - h, l2))
            / (2.0 * h);

        let mut diff = 0.0;
        let mut norm = 0.0;
        for i in 0..FEATURE_COUNT {
            diff += (grad_w[i] - fd[i]).powi(2);
            norm += fd[i].powi(2);
        }
        diff += (grad_b - fd[FEATURE_COUNT]).powi(2);
        norm += fd[FEATURE_COUNT].powi(2);
        let relative = diff.sqrt() / norm.sqrt().max(1.0);
        assert!(relative < 1e-5, "relative gradient error {relative}");
    }
}

#[test]
fn ridge_solution_has_tiny_gradient() {
    let data = two_blob_dataset(50, 21);
    let hyper = HyperParams::default();
    let model = train(Algorithm::LinearRegression, &data, &hyper, 0, None).unwrap();
    let ModelParams::LinearRegression(linear) = &model.params else {
        panic!("expected linear params")
    };
    let xs: Vec<[f64; FEATURE_COUNT]> = data
        .rows()
        .iter()
        .map(|(v, _)| {
            *apply_weights(
                &standardize_apply(&model.standardization, v),
                &model.weights_used,
            )
            .values()
        })
        .collect();
    let ys: Vec<f64> = data
        .labels()
        .map(|l| if l == Polarity::Positive { 1.0 } else { -1.0 })
        .collect();
    let (grad_w, grad_b) =
        ridge_objective_gradient(&xs, &ys, &linear.weights, linear.bias, hyper.ridge.epsilon);
    let norm = (grad_w.iter().map(|g| g * g).sum::<f64>() + grad_b * grad_b).sqrt();
    assert!(norm < 1e-8, "residual gradient norm {norm}");
}

#[test]
fn training_is_bit_identical_under_fixed_seed() {
    let data = two_blob_dataset(40, 17);
    let hyper = HyperParams::default();
    for algorithm in Algorithm::ALL {
        let a = train(algorithm, &data, &hyper, 123, None).unwrap();
        let b = train(algorithm, &data, &hyper, 123, None).unwrap();
        assert_eq!(a, b, "{algorithm} retrained differently");
        for (v, _) in data.rows() {
            assert_eq!(predict(&a, v).unwrap(), predict(&b, v).unwrap());
        }
    }
}

#[test]
fn single_class_and_thin_class_are_errors() {
    let one_class = Dataset::new(
        vec![
            (vector(slot(0, 1.0)), Polarity::Positive),
            (vector(slot(0, 2.0)), Polarity::Positive),
        ],
        Level::Document,
    );
    assert_eq!(
        train(Algorithm::Svm, &one_class, &HyperParams::default(), 0, None).unwrap_err(),
        TrainError::SingleClass {
            missing: Polarity::Negative
        }
    );

    let thin = Dataset::new(
        vec![
            (vector(slot(0, 1.0)), Polarity::Positive),
            (vector(slot(0, 2.0)), Polarity::Positive),
            (vector(slot(0, -1.0)), Polarity::Negative),
        ],
        Level::Document,
    );
    assert_eq!(
        train(Algorithm::Svm, &thin, &HyperParams::default(), 0, None).unwrap_err(),
        TrainError::TooFewRows {
            label: Polarity::Negative,
            found: 1,
            need: 2
        }
    );
}

#[test]
fn non_finite_features_are_errors() {
    let data = Dataset::new(
        vec![
            (vector(slot(0, 1.0)), Polarity::Positive),
            (vector(slot(0, f64::NAN)), Polarity::Positive),
            (vector(slot(0, -1.0)), Polarity::Negative),
            (vector(slot(0, -2.0)), Polarity::Negative),
        ],
        Level::Document,
    );
    assert_eq!(
        train(Algorithm::Svm, &data, &HyperParams::default(), 0, None).unwrap_err(),
        TrainError::NonFiniteFeature { row: 1, slot: 0 }
    );

    let ok = two_blob_dataset(10, 1);
    let model = train(Algorithm::Svm, &ok, &HyperParams::default(), 0, None).unwrap();
    assert_eq!(
        predict(&model, &vector(slot(3, f64::INFINITY))).unwrap_err(),
        PredictError::NonFiniteInput { slot: 3 }
    );
}

#[test]
fn zero_logistic_model_breaks_tie_positive() {
    let model = Model {
        algorithm: Algorithm::LogisticRegression,
        params: ModelParams::LogisticRegression(LinearModel::zeros()),
        standardization: identity_standardization(),
        weights_used: WeightVector::ones(),
    };
    let (label, score) = predict(&model, &vector([0.3; FEATURE_COUNT])).unwrap();
    assert_eq!(label, Polarity::Positive);
    assert_eq!(score, 0.5);
}

#[test]
fn positive_svm_margin_predicts_positive() {
    let model = Model {
        algorithm: Algorithm::Svm,
        params: ModelParams::Svm(LinearModel {
            weights: [0.0; FEATURE_COUNT],
            bias: 2.3,
        }),
        standardization: identity_standardization(),
        weights_used: WeightVector::ones(),
    };
    let (label, score) = predict(&model, &vector([0.0; FEATURE_COUNT])).unwrap();
    assert_eq!(label, Polarity::Positive);
    assert_eq!(score, 2.3);
}

#[test]
fn all_negative_leaf_scores_negative_fraction() {
    let model = Model {
        algorithm: Algorithm::DecisionTree,
        params: ModelParams::DecisionTree(Tree {
            nodes: vec![TreeNode::Leaf {
                positive_fraction: 0.0,
                samples: 7,
            }],
        }),
        standardization: identity_standardization(),
        weights_used: WeightVector::ones(),
    };
    let (label, score) = predict(&model, &vector([1.0; FEATURE_COUNT])).unwrap();
    assert_eq!(label, Polarity::Negative);
    assert_eq!(score, 1.0);
}

#[test]
fn model_save_load_round_trip() {
    let data = two_blob_dataset(30, 2);
    let hyper = HyperParams::default();
    let dir = tempfile::tempdir().unwrap();
    for algorithm in Algorithm::ALL {
        let model = train(algorithm, &data, &hyper, 99, None).unwrap();
        let path = dir.path().join(format!("{algorithm}.json"));
        save_model(&model, &hyper, &path).unwrap();
        let loaded: SavedModel = load_model(&path).unwrap();
        assert_eq!(loaded.model, model);
        assert_eq!(loaded.hyper, hyper);
        for (v, _) in data.rows() {
            assert_eq!(
                predict(&loaded.model, v).unwrap(),
                predict(&model, v).unwrap()
            );
        }
    }
}

#[test]
fn dataset_subset_preserves_origins() {
    let data = two_blob_dataset(10, 0);
    let sub = data.subset(&[2, 5, 7]);
    assert_eq!(sub.origins(), &[2, 5, 7]);
    let subsub = sub.subset(&[0, 2]);
    assert_eq!(subsub.origins(), &[2, 7]);
}
