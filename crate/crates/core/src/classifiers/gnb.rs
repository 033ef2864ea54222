//! Gaussian naive Bayes with per-class feature means and variances,
//! evaluated entirely in log space.

use std::collections::BTreeMap;

use crate::classifiers::{check_columns, Classifier, ModelDescription, ScoreKind};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Relative variance floor: class variances are clamped to this fraction
/// of the largest overall feature variance so constant features cannot
/// produce infinite densities.
const VARIANCE_FLOOR_REL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct GnbModel {
    priors: [f64; 2],
    /// Per-class feature means, 2 x d.
    class_means: [Vec<f64>; 2],
    /// Per-class feature variances after flooring, 2 x d.
    class_variances: [Vec<f64>; 2],
}

impl GnbModel {
    pub fn fit(x: &Matrix, y: &[u8]) -> Result<GnbModel> {
        let n = x.rows();
        let d = x.cols();
        if y.len() != n {
            return Err(Error::InvalidParam(format!("{} labels for {n} rows", y.len())));
        }
        let counts = [
            y.iter().filter(|&&l| l == 0).count(),
            y.iter().filter(|&&l| l == 1).count(),
        ];
        if counts[0] < 2 || counts[1] < 2 {
            return Err(Error::InvalidData(format!(
                "each class needs at least 2 samples, got {} and {}",
                counts[0], counts[1]
            )));
        }

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

        let mut variances = [vec![0.0; d], vec![0.0; d]];
        for i in 0..n {
            let class = y[i] as usize;
            for (j, &v) in x.row(i).iter().enumerate() {
                let dev = v - means[class][j];
                variances[class][j] += dev * dev;
            }
        }
        for class in 0..2 {
            for v in &mut variances[class] {
                *v /= counts[class] as f64;
            }
        }

        // Floor variances at a fraction of the largest overall feature
        // variance (or an absolute epsilon if the data is constant).
        let overall_means = x.column_means();
        let mut max_overall = 0.0f64;
        for j in 0..d {
            let mut acc = 0.0;
            for i in 0..n {
                let dev = x[(i, j)] - overall_means[j];
                acc += dev * dev;
            }
            max_overall = max_overall.max(acc / n as f64);
        }
        let floor = if max_overall > 0.0 {
            VARIANCE_FLOOR_REL * max_overall
        } else {
            VARIANCE_FLOOR_REL
        };
        for class in 0..2 {
            for v in &mut variances[class] {
                *v = v.max(floor);
            }
        }

        Ok(GnbModel {
            priors: [
                counts[0] as f64 / n as f64,
                counts[1] as f64 / n as f64,
            ],
            class_means: means,
            class_variances: variances,
        })
    }

    pub fn priors(&self) -> &[f64; 2] {
        &self.priors
    }

    pub fn class_means(&self) -> &[Vec<f64>; 2] {
        &self.class_means
    }

    pub fn class_variances(&self) -> &[Vec<f64>; 2] {
        &self.class_variances
    }

    /// Log of prior times the product of per-feature Gaussian densities.
    fn log_joint(&self, row: &[f64], class: usize) -> f64 {
        let mut acc = self.priors[class].ln();
        for (j, &v) in row.iter().enumerate() {
            let mean = self.class_means[class][j];
            let variance = self.class_variances[class][j];
            let dev = v - mean;
            acc += -0.5 * (2.0 * std::f64::consts::PI * variance).ln()
                - dev * dev / (2.0 * variance);
        }
        acc
    }
}

impl Classifier for GnbModel {
    /// Posterior P(class 1 | x): the two log joints pushed through the
    /// evidence normalization as a stable two-way softmax.
    fn decision_score(&self, x: &Matrix) -> Result<Vec<f64>> {
        check_columns(self.class_means[0].len(), x)?;
        let mut out = Vec::with_capacity(x.rows());
        for i in 0..x.rows() {
            let row = x.row(i);
            let delta = self.log_joint(row, 1) - self.log_joint(row, 0);
            let posterior = if delta >= 0.0 {
                1.0 / (1.0 + (-delta).exp())
            } else {
                let e = delta.exp();
                e / (1.0 + e)
            };
            out.push(posterior);
        }
        Ok(out)
    }

    fn kind(&self) -> ScoreKind {
        ScoreKind::Probability
    }

    fn describe(&self) -> ModelDescription {
        let mut details = BTreeMap::new();
        details.insert("prior_class1".to_string(), format!("{:?}", self.priors[1]));
        ModelDescription {
            name: "gnb".to_string(),
            input_dim: self.class_means[0].len(),
            details,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn symmetric_1d() -> (Matrix, Vec<u8>) {
        let x = Matrix::from_rows(&[
            vec![-1.25],
            vec![-0.75],
            vec![0.75],
            vec![1.25],
        ])
        .unwrap();
        (x, vec![0, 0, 1, 1])
    }

    #[test]
    fn symmetric_classes_put_the_boundary_at_zero() {
        let (x, y) = symmetric_1d();
        let model = GnbModel::fit(&x, &y).unwrap();
        let q = Matrix::from_rows(&[vec![0.0], vec![-0.5], vec![0.5]]).unwrap();
        let scores = model.decision_score(&q).unwrap();
        assert!((scores[0] - 0.5).abs() <= 1e-6);
        assert!(scores[1] < 0.5);
        assert!(scores[2] > 0.5);
    }

    #[test]
    fn dominant_prior_wins_when_likelihoods_match() {
        // 18 samples of class 0 vs 2 of class 1, identical spread.
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for i in 0..18 {
            rows.push(vec![if i % 2 == 0 { -1.0 } else { 1.0 }]);
            labels.push(0u8);
        }
        rows.push(vec![-1.0]);
        rows.push(vec![1.0]);
        labels.push(1);
        labels.push(1);
        let model = GnbModel::fit(&Matrix::from_rows(&rows).unwrap(), &labels).unwrap();
        let q = Matrix::from_rows(&[vec![-1.0], vec![0.0], vec![1.0]]).unwrap();
        assert_eq!(model.predict(&q).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn posterior_matches_direct_density_evaluation() {
        // Hand-checkable 2-D problem, evaluated against a literal
        // transcription of prior * product-of-densities / evidence.
        let x = Matrix::from_rows(&[
            vec![0.0, 1.0],
            vec![2.0, 3.0],
            vec![4.0, 5.0],
            vec![10.0, -1.0],
            vec![12.0, 1.0],
            vec![14.0, 3.0],
        ])
        .unwrap();
        let y = [0, 0, 0, 1, 1, 1];
        let model = GnbModel::fit(&x, &y).unwrap();

        let density = |v: f64, mean: f64, var: f64| -> f64 {
            (-((v - mean) * (v - mean)) / (2.0 * var)).exp()
                / (2.0 * std::f64::consts::PI * var).sqrt()
        };
        let q = [7.0, 2.0];
        let mut joints = [0.0f64; 2];
        for class in 0..2 {
            let mut p = model.priors()[class];
            for j in 0..2 {
                p *= density(
                    q[j],
                    model.class_means()[class][j],
                    model.class_variances()[class][j],
                );
            }
            joints[class] = p;
        }
        let expected = joints[1] / (joints[0] + joints[1]);

        let got = model
            .decision_score(&Matrix::from_rows(&[q.to_vec()]).unwrap())
            .unwrap()[0];
        assert!((got - expected).abs() <= 1e-12, "{got} vs {expected}");
    }

    #[test]
    fn scores_stay_finite_far_from_the_means() {
        let (x, y) = symmetric_1d();
        let model = GnbModel::fit(&x, &y).unwrap();
        // 100 standard deviations out in both directions.
        let q = Matrix::from_rows(&[vec![100.0 * 0.25], vec![-100.0 * 0.25]]).unwrap();
        let scores = model.decision_score(&q).unwrap();
        assert!(scores.iter().all(|s| s.is_finite()));
        assert!(scores[0] > 0.5 && scores[1] < 0.5);
    }

    #[test]
    fn constant_feature_is_floored_not_fatal() {
        let x = Matrix::from_rows(&[
            vec![5.0, 0.0],
            vec![5.0, 1.0],
            vec![5.0, 10.0],
            vec![5.0, 11.0],
        ])
        .unwrap();
        let model = GnbModel::fit(&x, &[0, 0, 1, 1]).unwrap();
        assert!(model.class_variances()[0][0] > 0.0);
        let q = Matrix::from_rows(&[vec![5.0, 0.5]]).unwrap();
        assert!(model.decision_score(&q).unwrap()[0].is_finite());
    }

    #[test]
    fn rejects_class_with_single_sample() {
        let x = Matrix::from_rows(&[vec![0.0], vec![1.0], vec![2.0]]).unwrap();
        assert!(GnbModel::fit(&x, &[0, 0, 1]).is_err());
    }
}
