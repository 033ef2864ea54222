//! Random forest: bagged CART trees with Gini splits over random
//! feature subsets.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::classifiers::{check_columns, require_both_classes, Classifier, ModelDescription, ScoreKind};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rng::RngStream;

/// Minimum Gini gain for a split to beat staying a leaf.
const MIN_GAIN: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ForestParams {
    pub n_trees: usize,
    /// Draw n rows with replacement per tree. Disabled only by tests
    /// that compare a single tree against an exhaustive oracle.
    pub bootstrap: bool,
    /// Candidate features per split; defaults to ceil(sqrt(d)).
    pub features_per_split: Option<usize>,
}

impl ForestParams {
    pub fn new(n_trees: usize) -> ForestParams {
        ForestParams {
            n_trees,
            bootstrap: true,
            features_per_split: None,
        }
    }
}

#[derive(Clone, Debug)]
enum TreeNode {
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        class1_fraction: f64,
    },
}

#[derive(Clone, Debug)]
struct Tree {
    nodes: Vec<TreeNode>,
}

impl Tree {
    fn leaf_fraction(&self, row: &[f64]) -> f64 {
        let mut at = 0;
        loop {
            match self.nodes[at] {
                TreeNode::Leaf { class1_fraction } => return class1_fraction,
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if row[feature] <= threshold { left } else { right };
                }
            }
        }
    }

    fn vote(&self, row: &[f64]) -> u8 {
        u8::from(self.leaf_fraction(row) > 0.5)
    }
}

/// Gini impurity of a binary node, written as 2*p0*p1 so the value is
/// bit-identical under a label swap.
fn gini(count1: usize, total: usize) -> f64 {
    let p1 = count1 as f64 / total as f64;
    let p0 = (total - count1) as f64 / total as f64;
    2.0 * p0 * p1
}

struct SplitChoice {
    feature: usize,
    threshold: f64,
    gain: f64,
}

/// Best (feature, threshold) among the candidates by Gini gain.
/// Thresholds are midpoints between consecutive distinct values; ties in
/// gain resolve to the first candidate in ascending (feature, threshold)
/// order. Returns None when no candidate separates the node.
fn best_split(
    x: &Matrix,
    y: &[u8],
    indices: &[usize],
    candidates: &[usize],
) -> Option<SplitChoice> {
    let total = indices.len();
    let total_ones = indices.iter().filter(|&&i| y[i] == 1).count();
    let parent = gini(total_ones, total);

    let mut best: Option<SplitChoice> = None;
    let mut ordered: Vec<usize> = Vec::with_capacity(total);
    for &feature in candidates {
        ordered.clear();
        ordered.extend_from_slice(indices);
        ordered.sort_by(|&a, &b| x[(a, feature)].total_cmp(&x[(b, feature)]).then(a.cmp(&b)));

        let mut left_count = 0usize;
        let mut left_ones = 0usize;
        for pos in 0..total - 1 {
            let i = ordered[pos];
            left_count += 1;
            if y[i] == 1 {
                left_ones += 1;
            }
            let here = x[(i, feature)];
            let next = x[(ordered[pos + 1], feature)];
            if here == next {
                continue;
            }
            let threshold = 0.5 * (here + next);
            // Adjacent floats can round the midpoint up onto `next`,
            // which would stop the split from separating the pair.
            if threshold >= next {
                continue;
            }
            let right_count = total - left_count;
            let right_ones = total_ones - left_ones;
            let weighted = (left_count as f64 / total as f64) * gini(left_ones, left_count)
                + (right_count as f64 / total as f64) * gini(right_ones, right_count);
            let gain = parent - weighted;
            if gain > MIN_GAIN && best.as_ref().is_none_or(|b| gain > b.gain) {
                best = Some(SplitChoice {
                    feature,
                    threshold,
                    gain,
                });
            }
        }
    }
    best
}

fn grow(
    x: &Matrix,
    y: &[u8],
    indices: &[usize],
    features_per_split: usize,
    rng: &mut ChaCha8Rng,
    nodes: &mut Vec<TreeNode>,
) -> usize {
    let total = indices.len();
    let ones = indices.iter().filter(|&&i| y[i] == 1).count();
    if total < 2 || ones == 0 || ones == total {
        nodes.push(TreeNode::Leaf {
            class1_fraction: ones as f64 / total as f64,
        });
        return nodes.len() - 1;
    }

    let d = x.cols();
    let mut candidates: Vec<usize> =
        rand::seq::index::sample(rng, d, features_per_split.min(d)).into_vec();
    candidates.sort_unstable();

    match best_split(x, y, indices, &candidates) {
        None => {
            nodes.push(TreeNode::Leaf {
                class1_fraction: ones as f64 / total as f64,
            });
            nodes.len() - 1
        }
        Some(split) => {
            let (left_idx, right_idx): (Vec<usize>, Vec<usize>) = indices
                .iter()
                .partition(|&&i| x[(i, split.feature)] <= split.threshold);
            let at = nodes.len();
            nodes.push(TreeNode::Leaf { class1_fraction: 0.0 }); // placeholder
            let left = grow(x, y, &left_idx, features_per_split, rng, nodes);
            let right = grow(x, y, &right_idx, features_per_split, rng, nodes);
            nodes[at] = TreeNode::Split {
                feature: split.feature,
                threshold: split.threshold,
                left,
                right,
            };
            at
        }
    }
}

#[derive(Clone, Debug)]
pub struct ForestModel {
    trees: Vec<Tree>,
    seed: u64,
    input_dim: usize,
}

impl ForestModel {
    /// Grows `n_trees` CART trees, each on its own bootstrap sample with
    /// ceil(sqrt(d)) candidate features per split, until nodes are pure
    /// or hold fewer than 2 samples. Every tree pre-forks its own
    /// bootstrap and subspace streams, so the result depends only on
    /// `stream`, never on scheduling.
    pub fn fit(x: &Matrix, y: &[u8], params: &ForestParams, stream: &RngStream) -> Result<ForestModel> {
        let n = x.rows();
        let d = x.cols();
        if y.len() != n {
            return Err(Error::InvalidParam(format!("{} labels for {n} rows", y.len())));
        }
        if params.n_trees == 0 {
            return Err(Error::InvalidParam("n_trees must be at least 1".into()));
        }
        require_both_classes(y)?;
        let features_per_split = params
            .features_per_split
            .unwrap_or_else(|| (d as f64).sqrt().ceil() as usize)
            .clamp(1, d);

        let mut trees = Vec::with_capacity(params.n_trees);
        for t in 0..params.n_trees {
            let indices: Vec<usize> = if params.bootstrap {
                let mut boot_rng = stream.fork(&format!("tree{t}/bootstrap")).rng();
                (0..n).map(|_| boot_rng.random_range(0..n)).collect()
            } else {
                (0..n).collect()
            };
            let mut split_rng = stream.fork(&format!("tree{t}/features")).rng();
            let mut nodes = Vec::new();
            grow(x, y, &indices, features_per_split, &mut split_rng, &mut nodes);
            trees.push(Tree { nodes });
        }

        Ok(ForestModel {
            trees,
            seed: stream.seed(),
            input_dim: d,
        })
    }

    pub fn n_trees(&self) -> usize {
        self.trees.len()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl Classifier for ForestModel {
    /// Fraction of trees voting class 1.
    fn decision_score(&self, x: &Matrix) -> Result<Vec<f64>> {
        check_columns(self.input_dim, x)?;
        let mut out = Vec::with_capacity(x.rows());
        for i in 0..x.rows() {
            let row = x.row(i);
            let votes = self.trees.iter().filter(|t| t.vote(row) == 1).count();
            out.push(votes as f64 / self.trees.len() as f64);
        }
        Ok(out)
    }

    fn kind(&self) -> ScoreKind {
        ScoreKind::Probability
    }

    fn describe(&self) -> ModelDescription {
        let mut details = BTreeMap::new();
        details.insert("n_trees".to_string(), self.trees.len().to_string());
        details.insert("seed".to_string(), self.seed.to_string());
        ModelDescription {
            name: "rf".to_string(),
            input_dim: self.input_dim,
            details,
        }
    }
}
