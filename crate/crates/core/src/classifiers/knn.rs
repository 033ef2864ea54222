//! k-nearest-neighbor classification with the Euclidean metric.

use std::collections::BTreeMap;

use crate::classifiers::{check_columns, Classifier, ModelDescription, ScoreKind};
use crate::error::{Error, Result};
use crate::linalg::{squared_distance, Matrix};

/// Stores the training set as the reference set; classification is the
/// majority label among the k nearest references. k must be odd so votes
/// cannot tie; distance ties at the k-th rank break toward the lower
/// training-row index.
#[derive(Clone, Debug)]
pub struct KnnModel {
    reference_points: Matrix,
    reference_labels: Vec<u8>,
    k: usize,
}

impl KnnModel {
    pub fn fit(x: &Matrix, y: &[u8], k: usize) -> Result<KnnModel> {
        if y.len() != x.rows() {
            return Err(Error::InvalidParam(format!(
                "{} labels for {} rows",
                y.len(),
                x.rows()
            )));
        }
        if k == 0 || k % 2 == 0 {
            return Err(Error::InvalidParam(format!("k={k} must be odd")));
        }
        if k > x.rows() {
            return Err(Error::InvalidParam(format!(
                "k={k} larger than the {} training samples",
                x.rows()
            )));
        }
        Ok(KnnModel {
            reference_points: x.clone(),
            reference_labels: y.to_vec(),
            k,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Fraction of the k nearest references labeled 1, per query row.
    fn neighbor_fractions(&self, x: &Matrix) -> Result<Vec<f64>> {
        check_columns(self.reference_points.cols(), x)?;
        let n_ref = self.reference_points.rows();
        let mut out = Vec::with_capacity(x.rows());
        let mut order: Vec<usize> = Vec::with_capacity(n_ref);
        let mut distances: Vec<f64> = vec![0.0; n_ref];
        for qi in 0..x.rows() {
            let query = x.row(qi);
            for (ri, dist) in distances.iter_mut().enumerate() {
                *dist = squared_distance(self.reference_points.row(ri), query);
            }
            order.clear();
            order.extend(0..n_ref);
            order.sort_by(|&a, &b| distances[a].total_cmp(&distances[b]).then(a.cmp(&b)));
            let ones = order[..self.k]
                .iter()
                .filter(|&&i| self.reference_labels[i] == 1)
                .count();
            out.push(ones as f64 / self.k as f64);
        }
        Ok(out)
    }
}

impl Classifier for KnnModel {
    fn decision_score(&self, x: &Matrix) -> Result<Vec<f64>> {
        self.neighbor_fractions(x)
    }

    fn kind(&self) -> ScoreKind {
        ScoreKind::Probability
    }

    fn describe(&self) -> ModelDescription {
        let mut details = BTreeMap::new();
        details.insert("k".to_string(), self.k.to_string());
        details.insert(
            "reference_points".to_string(),
            self.reference_points.rows().to_string(),
        );
        ModelDescription {
            name: "knn".to_string(),
            input_dim: self.reference_points.cols(),
            details,
        }
    }
}
