//! Principal component analysis via eigendecomposition of the sample
//! covariance matrix. Labels never enter the fit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigen, Matrix};

/// Convergence tolerance for the symmetric eigensolver.
const EIGEN_TOL: f64 = 1e-10;

/// Eigenvalues below this fraction of the largest count as numerical
/// rank deficiency and are not usable as components.
const RANK_REL_TOL: f64 = 1e-12;

/// Mean-centering projection onto the `s` leading principal axes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PcaTransform {
    mean: Vec<f64>,
    /// One orthonormal principal axis per row (s x d).
    components: Matrix,
    /// Covariance eigenvalues for the retained axes, non-increasing.
    explained_variance: Vec<f64>,
}

impl PcaTransform {
    /// Extracts the top `s` principal axes of `x`.
    ///
    /// The sample covariance (divisor n-1) of the centered data is
    /// eigendecomposed; axes are ordered by descending eigenvalue and
    /// sign-fixed so the entry of largest magnitude in each axis is
    /// positive. Requesting more axes than the numerical rank is an
    /// error.
    pub fn fit(x: &Matrix, s: usize) -> Result<PcaTransform> {
        let n = x.rows();
        let d = x.cols();
        if n < 2 {
            return Err(Error::InvalidData(format!(
                "PCA needs at least 2 samples, got {n}"
            )));
        }
        let max_s = (n - 1).min(d);
        if s < 1 || s > max_s {
            return Err(Error::InvalidParam(format!(
                "s={s} outside the valid range 1..={max_s} (n={n}, d={d})"
            )));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidData("non-finite value in PCA input".into()));
        }

        let mean = x.column_means();
        let mut centered = x.clone();
        for i in 0..n {
            let row = centered.row_mut(i);
            for (j, v) in row.iter_mut().enumerate() {
                *v -= mean[j];
            }
        }

        let mut covariance = Matrix::zeros(d, d);
        for i in 0..n {
            let row = centered.row(i);
            for a in 0..d {
                let ra = row[a];
                if ra == 0.0 {
                    continue;
                }
                for b in a..d {
                    covariance[(a, b)] += ra * row[b];
                }
            }
        }
        let denom = (n - 1) as f64;
        for a in 0..d {
            for b in a..d {
                let v = covariance[(a, b)] / denom;
                covariance[(a, b)] = v;
                covariance[(b, a)] = v;
            }
        }

        let eigen = symmetric_eigen(&covariance, EIGEN_TOL)?;
        let largest = eigen.eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
        let rank = eigen
            .eigenvalues
            .iter()
            .filter(|&&ev| ev > RANK_REL_TOL * largest && ev > 0.0)
            .count();
        if s > rank {
            return Err(Error::InvalidParam(format!(
                "s={s} exceeds the numerical rank {rank} of the centered data"
            )));
        }

        let mut components = eigen.eigenvectors.select_rows(&(0..s).collect::<Vec<_>>());
        for k in 0..s {
            let row = components.row_mut(k);
            let mut lead = 0;
            for (j, v) in row.iter().enumerate() {
                if v.abs() > row[lead].abs() {
                    lead = j;
                }
            }
            if row[lead] < 0.0 {
                for v in row.iter_mut() {
                    *v = -*v;
                }
            }
        }

        let explained_variance = eigen.eigenvalues[..s]
            .iter()
            .map(|&ev| ev.max(0.0))
            .collect();

        Ok(PcaTransform {
            mean,
            components,
            explained_variance,
        })
    }

    pub(crate) fn from_parts(
        mean: Vec<f64>,
        components: Matrix,
        explained_variance: Vec<f64>,
    ) -> Result<PcaTransform> {
        if components.rows() == 0 || components.cols() != mean.len() {
            return Err(Error::InvalidParam(
                "component matrix does not match the mean vector".into(),
            ));
        }
        if explained_variance.len() != components.rows() {
            return Err(Error::InvalidParam(
                "one explained variance per component required".into(),
            ));
        }
        Ok(PcaTransform {
            mean,
            components,
            explained_variance,
        })
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn components(&self) -> &Matrix {
        &self.components
    }

    pub fn explained_variance(&self) -> &[f64] {
        &self.explained_variance
    }

    pub fn s(&self) -> usize {
        self.components.rows()
    }

    pub fn input_dim(&self) -> usize {
        self.mean.len()
    }

    /// Projects rows of `x`: (x - mean) * components^T, shape n x s.
    pub fn apply(&self, x: &Matrix) -> Result<Matrix> {
        let d = self.input_dim();
        if x.cols() != d {
            return Err(Error::ColumnMismatch {
                expected: d,
                got: x.cols(),
            });
        }
        let s = self.s();
        let mut out = Matrix::zeros(x.rows(), s);
        for i in 0..x.rows() {
            let row = x.row(i);
            for k in 0..s {
                let axis = self.components.row(k);
                let mut acc = 0.0;
                for j in 0..d {
                    acc += (row[j] - self.mean[j]) * axis[j];
                }
                out[(i, k)] = acc;
            }
        }
        Ok(out)
    }
}
