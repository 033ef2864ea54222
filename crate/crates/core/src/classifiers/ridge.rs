//! Ridge classifier: penalized least squares against +/-1 targets with
//! an unpenalized intercept.

use std::collections::BTreeMap;

use crate::classifiers::{check_columns, require_both_classes, Classifier, ModelDescription, ScoreKind};
use crate::error::{Error, Result};
use crate::linalg::{dot, solve_spd, Matrix};

#[derive(Clone, Debug)]
pub struct RidgeModel {
    weights: Vec<f64>,
    bias: f64,
    alpha: f64,
}

impl RidgeModel {
    /// Centers the feature columns, solves
    /// (Xc^T Xc + alpha*I) w = Xc^T t for targets t in {-1,+1}, and
    /// recovers the intercept from the column means so the penalty never
    /// touches the bias.
    pub fn fit(x: &Matrix, y: &[u8], alpha: f64) -> Result<RidgeModel> {
        let n = x.rows();
        let d = x.cols();
        if y.len() != n {
            return Err(Error::InvalidParam(format!("{} labels for {n} rows", y.len())));
        }
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParam(format!("alpha={alpha} must be positive")));
        }
        require_both_classes(y)?;

        let targets: Vec<f64> = y.iter().map(|&l| if l == 1 { 1.0 } else { -1.0 }).collect();
        let col_means = x.column_means();
        let target_mean = targets.iter().sum::<f64>() / n as f64;

        let mut gram = Matrix::zeros(d, d);
        let mut rhs = vec![0.0; d];
        for i in 0..n {
            let row = x.row(i);
            let t = targets[i] - target_mean;
            for a in 0..d {
                let ca = row[a] - col_means[a];
                rhs[a] += ca * t;
                if ca == 0.0 {
                    continue;
                }
                for b in a..d {
                    gram[(a, b)] += ca * (row[b] - col_means[b]);
                }
            }
        }
        for a in 0..d {
            for b in a..d {
                gram[(b, a)] = gram[(a, b)];
            }
            gram[(a, a)] += alpha;
        }

        let weights = solve_spd(&gram, &rhs)?;
        let bias = target_mean - dot(&weights, &col_means);
        Ok(RidgeModel { weights, bias, alpha })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl Classifier for RidgeModel {
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
        let mut details = BTreeMap::new();
        details.insert("alpha".to_string(), format!("{:?}", self.alpha));
        ModelDescription {
            name: "ridge".to_string(),
            input_dim: self.weights.len(),
            details,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_solved_one_dimensional_case() {
        // x = [-1, 1], targets [-1, +1], alpha = 1: (2 + 1) w = 2.
        let x = Matrix::from_rows(&[vec![-1.0], vec![1.0]]).unwrap();
        let model = RidgeModel::fit(&x, &[0, 1], 1.0).unwrap();
        assert!((model.weights()[0] - 2.0 / 3.0).abs() <= 1e-12);
        assert!(model.bias().abs() <= 1e-12);
    }

    #[test]
    fn vanishing_alpha_approaches_ordinary_least_squares() {
        let x = Matrix::from_rows(&[
            vec![0.0, 1.0],
            vec![1.0, 0.5],
            vec![2.0, -0.5],
            vec![3.0, 0.25],
        ])
        .unwrap();
        let y = [0, 0, 1, 1];
        let model = RidgeModel::fit(&x, &y, 1e-10).unwrap();

        // OLS oracle on the same centered system, via nalgebra.
        let col_means = x.column_means();
        let targets: Vec<f64> = y.iter().map(|&l| if l == 1 { 1.0 } else { -1.0 }).collect();
        let t_mean = targets.iter().sum::<f64>() / 4.0;
        let xc = nalgebra::DMatrix::from_fn(4, 2, |i, j| x[(i, j)] - col_means[j]);
        let tc = nalgebra::DVector::from_fn(4, |i, _| targets[i] - t_mean);
        let ols = (xc.transpose() * &xc)
            .lu()
            .solve(&(xc.transpose() * tc))
            .unwrap();

        for j in 0..2 {
            assert!(
                (model.weights()[j] - ols[j]).abs() <= 1e-6,
                "weight {j}: {} vs {}",
                model.weights()[j],
                ols[j]
            );
        }
    }

    #[test]
    fn huge_alpha_shrinks_to_majority_vote() {
        let x = Matrix::from_rows(&[vec![0.0], vec![1.0], vec![2.0], vec![3.0], vec![4.0]]).unwrap();
        let y = [1, 1, 1, 0, 1]; // majority class 1
        let model = RidgeModel::fit(&x, &y, 1e12).unwrap();
        assert!(model.weights()[0].abs() <= 1e-9);
        let q = Matrix::from_rows(&[vec![-50.0], vec![0.0], vec![50.0]]).unwrap();
        assert_eq!(model.predict(&q).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn zero_score_maps_to_class_one() {
        let x = Matrix::from_rows(&[vec![-1.0], vec![1.0]]).unwrap();
        let model = RidgeModel::fit(&x, &[0, 1], 1.0).unwrap();
        // Query at the boundary: score is exactly 0 and the tie rule
        // assigns class 1.
        let q = Matrix::from_rows(&[vec![0.0]]).unwrap();
        assert_eq!(model.decision_score(&q).unwrap()[0], 0.0);
        assert_eq!(model.predict(&q).unwrap(), vec![1]);
    }

    #[test]
    fn rejects_non_positive_alpha() {
        let x = Matrix::from_rows(&[vec![-1.0], vec![1.0]]).unwrap();
        assert!(RidgeModel::fit(&x, &[0, 1], 0.0).is_err());
        assert!(RidgeModel::fit(&x, &[0, 1], -1.0).is_err());
    }
}
