//! Binary CART with Gini impurity. Split thresholds are midpoints between
//! consecutive distinct sorted values; growth stops at max depth, the
//! minimum leaf size, or a pure node. Equal-gain candidates resolve to the
//! lowest feature index, then the lowest threshold, so training is fully
//! deterministic.

use serde::{Deserialize, Serialize};

use super::{Prepared, TreeHyper};
use crate::features::FEATURE_COUNT;
use crate::scalar::Scalar;
use crate::types::Polarity;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "kebab-case")]
pub enum TreeNode<F: Scalar = f64> {
    Leaf {
        positive_fraction: F,
        samples: usize,
    },
    Split {
        feature: usize,
        threshold: F,
        left: usize,
        right: usize,
    },
}

/// Node arena; index 0 is the root.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: Scalar", deserialize = "F: Scalar"))]
pub struct Tree<F: Scalar = f64> {
    pub nodes: Vec<TreeNode<F>>,
}

impl<F: Scalar> Tree<F> {
    /// Positive fraction of the leaf this instance routes to.
    pub fn positive_fraction(&self, x: &[F; FEATURE_COUNT]) -> F {
        let mut at = 0usize;
        loop {
            match self.nodes[at] {
                TreeNode::Leaf {
                    positive_fraction, ..
                } => return positive_fraction,
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if x[feature] <= threshold { left } else { right };
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn walk<F: Scalar>(tree: &Tree<F>, at: usize) -> usize {
            match tree.nodes[at] {
                TreeNode::Leaf { .. } => 0,
                TreeNode::Split { left, right, .. } => 1 + walk(tree, left).max(walk(tree, right)),
            }
        }
        walk(self, 0)
    }
}

fn gini(pos: usize, total: usize) -> f64 {
    if total == 0 {
        return 0.0;
    }
    let p = pos as f64 / total as f64;
    let q = 1.0 - p;
    1.0 - p * p - q * q
}

struct BestSplit<F> {
    feature: usize,
    threshold: F,
    gain: f64,
}

struct Builder<'a, F: Scalar> {
    prepared: &'a Prepared<F>,
    hyper: &'a TreeHyper,
    nodes: Vec<TreeNode<F>>,
}

impl<'a, F: Scalar> Builder<'a, F> {
    fn is_positive(&self, row: usize) -> bool {
        self.prepared.labels[row] == Polarity::Positive
    }

    fn leaf(&mut self, rows: &[usize]) -> usize {
        let pos = rows.iter().filter(|&&r| self.is_positive(r)).count();
        let fraction = F::from_usize(pos).unwrap() / F::from_usize(rows.len()).unwrap();
        self.nodes.push(TreeNode::Leaf {
            positive_fraction: fraction,
            samples: rows.len(),
        });
        self.nodes.len() - 1
    }

    /// Exhaustive candidate scan. Accepting only strictly better gains
    /// while iterating features and thresholds in ascending order realizes
    /// the lowest-feature, lowest-threshold tie rule.
    fn best_split(&self, rows: &[usize]) -> Option<BestSplit<F>> {
        let n = rows.len();
        let total_pos = rows.iter().filter(|&&r| self.is_positive(r)).count();
        let parent = gini(total_pos, n);
        let mut best: Option<BestSplit<F>> = None;
        let mut column: Vec<(F, bool)> = Vec::with_capacity(n);
        for feature in 0..FEATURE_COUNT {
            column.clear();
            column.extend(
                rows.iter()
                    .map(|&r| (self.prepared.xs[r][feature], self.is_positive(r))),
            );
            column.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite feature values"));
            let mut left_pos = 0usize;
            for i in 1..n {
                if column[i - 1].1 {
                    left_pos += 1;
                }
                let (a, b) = (column[i - 1].0, column[i].0);
                if a == b {
                    continue;
                }
                let left_n = i;
                let right_n = n - i;
                if left_n < self.hyper.min_leaf || right_n < self.hyper.min_leaf {
                    continue;
                }
                let two = F::from_f64_lossy(2.0);
                let mut threshold = (a + b) / two;
                if !(threshold < b) {
                    // midpoint of adjacent floats can round up to b
                    threshold = a;
                }
                let right_pos = total_pos - left_pos;
                let weighted = (left_n as f64 * gini(left_pos, left_n)
                    + right_n as f64 * gini(right_pos, right_n))
                    / n as f64;
                let gain = parent - weighted;
                if best.as_ref().is_none_or(|b| gain > b.gain) {
                    best = Some(BestSplit {
                        feature,
                        threshold,
                        gain,
                    });
                }
            }
        }
        best
    }

    fn build(&mut self, rows: Vec<usize>, depth: usize) -> usize {
        let pos = rows.iter().filter(|&&r| self.is_positive(r)).count();
        let pure = pos == 0 || pos == rows.len();
        if depth >= self.hyper.max_depth || pure || rows.len() < 2 * self.hyper.min_leaf {
            return self.leaf(&rows);
        }
        let Some(split) = self.best_split(&rows) else {
            return self.leaf(&rows);
        };
        let (left_rows, right_rows): (Vec<usize>, Vec<usize>) = rows
            .into_iter()
            .partition(|&r| self.prepared.xs[r][split.feature] <= split.threshold);
        // reserve the split slot so child indices are stable
        let at = self.nodes.len();
        self.nodes.push(TreeNode::Leaf {
            positive_fraction: F::zero(),
            samples: 0,
        });
        let left = self.build(left_rows, depth + 1);
        let right = self.build(right_rows, depth + 1);
        self.nodes[at] = TreeNode::Split {
            feature: split.feature,
            threshold: split.threshold,
            left,
            right,
        };
        at
    }
}

pub(super) fn fit<F: Scalar>(prepared: &Prepared<F>, hyper: &TreeHyper) -> Tree<F> {
    let mut builder = Builder {
        prepared,
        hyper,
        nodes: Vec::new(),
    };
    let rows: Vec<usize> = (0..prepared.xs.len()).collect();
    builder.build(rows, 0);
    Tree {
        nodes: builder.nodes,
    }
}
