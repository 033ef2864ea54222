//! Linear discriminant analysis for two classes sharing a pooled
//! covariance matrix.

use std::collections::BTreeMap;

use crate::classifiers::{check_columns, require_both_classes, Classifier, ModelDescription, ScoreKind};
use crate::error::{Error, Result};
use crate::linalg::{dot, solve_spd, Matrix};

/// Ridge added to the pooled covariance before solving, as a fraction of
/// the mean diagonal entry. Keeps the solve well-posed when the feature
/// count exceeds the sample count.
const SHRINKAGE_EPS: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct LdaModel {
    weights: Vec<f64>,
    bias: f64,
    class_means: [Vec<f64>; 2],
    pooled_covariance: Matrix,
}

impl LdaModel {
    /// Solves (pooled covariance + shrinkage) * w = mu1 - mu0 and places
    /// the decision boundary at the class-mean midpoint shifted by the
    /// log-prior ratio.
    pub fn fit(x: &Matrix, y: &[u8]) -> Result<LdaModel> {
        let n = x.rows();
        let d = x.cols();
        if y.len() != n {
            return Err(Error::InvalidParam(format!("{} labels for {n} rows", y.len())));
        }
        require_both_classes(y)?;

        let counts = [
            y.iter().filter(|&&l| l == 0).count(),
            y.iter().filter(|&&l| l == 1).count(),
        ];
        let mut means = [vec![0.0; d], vec![0.0; d]];
        for i in 0..n {
            let class = y[i] as usize;
            for (j, &v) in x.row(i).iter().enumerate() {
                means[class][j] += v;
            }
        }
        for class in 0..2 {
            for m in &mut means[class] {
                *m /= counts[class] as f64;
            }
        }

        let mut pooled = Matrix::zeros(d, d);
        for i in 0..n {
            let class = y[i] as usize;
            let row = x.row(i);
            for a in 0..d {
                let da = row[a] - means[class][a];
                if da == 0.0 {
                    continue;
                }
                for b in a..d {
                    pooled[(a, b)] += da * (row[b] - means[class][b]);
                }
            }
        }
        let denom = if n > 2 { (n - 2) as f64 } else { 1.0 };
        for a in 0..d {
            for b in a..d {
                let v = pooled[(a, b)] / denom;
                pooled[(a, b)] = v;
                pooled[(b, a)] = v;
            }
        }

        let trace: f64 = (0..d).map(|j| pooled[(j, j)]).sum();
        let ridge = if trace > 0.0 {
            SHRINKAGE_EPS * trace / d as f64
        } else {
            SHRINKAGE_EPS
        };
        let mut regularized = pooled.clone();
        for j in 0..d {
            regularized[(j, j)] += ridge;
        }

        let diff: Vec<f64> = (0..d).map(|j| means[1][j] - means[0][j]).collect();
        let weights = solve_spd(&regularized, &diff)?;

        let midpoint: Vec<f64> = (0..d).map(|j| 0.5 * (means[0][j] + means[1][j])).collect();
        // ln(n1) - ln(n0) rather than ln(n1/n0): the swap of class labels
        // then negates the bias exactly.
        let log_prior_ratio = (counts[1] as f64).ln() - (counts[0] as f64).ln();
        let bias = log_prior_ratio - dot(&weights, &midpoint);

        Ok(LdaModel {
            weights,
            bias,
            class_means: means,
            pooled_covariance: pooled,
        })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn class_means(&self) -> &[Vec<f64>; 2] {
        &self.class_means
    }

    pub fn pooled_covariance(&self) -> &Matrix {
        &self.pooled_covariance
    }
}

impl Classifier for LdaModel {
    fn decision_score(&self, x: &Matrix) -> Result<Vec<f64>> {
        check_columns(self.weights.len(), x)?;
        Ok((0..x.rows())
            .map(|i| dot(self.weights.as_slice(), x.row(i)) + self.bias)
            .collect())
    }

    fn kind(&self) -> ScoreKind {
        ScoreKind::Margin
    }

    fn describe(&self) -> ModelDescription {
        ModelDescription {
            name: "lda".to_string(),
            input_dim: self.weights.len(),
            details: BTreeMap::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_distr::StandardNormal;

    fn gaussian_blobs(seed: u64, n_per_class: usize, d: usize, shift: f64) -> (Matrix, Vec<u8>) {
        let mut rng = crate::rng::RngStream::new(seed, "lda-test").rng();
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for class in 0..2u8 {
            for _ in 0..n_per_class {
                let offset = if class == 1 { shift } else { -shift };
                rows.push(
                    (0..d)
                        .map(|_| rng.sample::<f64, _>(StandardNormal) + offset)
                        .collect(),
                );
                labels.push(class);
            }
        }
        (Matrix::from_rows(&rows).unwrap(), labels)
    }

    #[test]
    fn identity_covariance_aligns_weights_with_mean_difference() {
        // Equilateral triangles around each class mean give a pooled
        // covariance that is exactly a scaled identity, so the solved
        // weights must be parallel to mu1 - mu0.
        let h = 3.0f64.sqrt() / 2.0;
        let offsets = [[1.0, 0.0], [-0.5, h], [-0.5, -h]];
        let centers = [[0.0, 0.0], [2.0, 1.0]];
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for (class, center) in centers.iter().enumerate() {
            for off in &offsets {
                rows.push(vec![center[0] + off[0], center[1] + off[1]]);
                labels.push(class as u8);
            }
        }
        let model = LdaModel::fit(&Matrix::from_rows(&rows).unwrap(), &labels).unwrap();
        let diff = [2.0, 1.0];
        let cosine = dot(model.weights(), &diff)
            / (dot(model.weights(), model.weights()).sqrt() * dot(&diff, &diff).sqrt());
        assert!(cosine >= 1.0 - 1e-6, "cosine {cosine}");
    }

    #[test]
    fn label_swap_negates_weights_and_scores_exactly() {
        let (x, y) = gaussian_blobs(2, 9, 3, 0.5);
        let swapped: Vec<u8> = y.iter().map(|&l| 1 - l).collect();
        let a = LdaModel::fit(&x, &y).unwrap();
        let b = LdaModel::fit(&x, &swapped).unwrap();
        for (wa, wb) in a.weights().iter().zip(b.weights()) {
            assert_eq!(wa.to_bits(), (-wb).to_bits());
        }
        let sa = a.decision_score(&x).unwrap();
        let sb = b.decision_score(&x).unwrap();
        for (u, v) in sa.iter().zip(&sb) {
            assert_eq!(u.to_bits(), (-v).to_bits());
        }
    }

    #[test]
    fn wide_data_fits_and_beats_majority_rate() {
        // d=50 with n=20: the pooled covariance is singular, the
        // shrinkage ridge must keep the solve alive.
        let (x, y) = gaussian_blobs(3, 10, 50, 0.6);
        let model = LdaModel::fit(&x, &y).unwrap();
        let accuracy = crate::metrics::accuracy(&model.predict(&x).unwrap(), &y).unwrap();
        assert!(accuracy >= 0.5, "training accuracy {accuracy}");
    }

    #[test]
    fn unbalanced_priors_shift_the_boundary_toward_the_rare_class() {
        let x = Matrix::from_rows(&[
            vec![-1.2], vec![-1.0], vec![-0.8], vec![-1.1], vec![-0.9], vec![-1.0],
            vec![0.8], vec![1.2],
        ])
        .unwrap();
        let y = [0, 0, 0, 0, 0, 0, 1, 1];
        let model = LdaModel::fit(&x, &y).unwrap();
        // The exact class-mean midpoint scores negative (majority pull).
        let mid = 0.5 * (model.class_means()[0][0] + model.class_means()[1][0]);
        let score = model
            .decision_score(&Matrix::from_rows(&[vec![mid]]).unwrap())
            .unwrap()[0];
        assert!(score < 0.0);
    }
}
