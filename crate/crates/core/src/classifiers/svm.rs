//! Soft-margin support vector machine trained by sequential minimal
//! optimization on the dual problem.
//!
//! Working pairs are chosen by maximal violation of the box-constrained
//! KKT conditions; each update solves the two-variable subproblem
//! analytically and refreshes the gradient incrementally against a full
//! Gram cache. Training runs to a KKT tolerance of 1e-3 or an update
//! cap, whichever comes first; hitting the cap marks the model as
//! non-converged instead of failing.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::classifiers::{check_columns, require_both_classes, Classifier, ModelDescription, ScoreKind};
use crate::error::{Error, Result};
use crate::linalg::{dot, squared_distance, Matrix};

/// KKT violation below which training stops.
pub const DEFAULT_KKT_TOL: f64 = 1e-3;

/// Hard cap on two-variable updates.
pub const DEFAULT_MAX_PAIR_UPDATES: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kernel", rename_all = "lowercase")]
pub enum SvmKernel {
    Linear,
    Rbf { gamma: f64 },
}

impl SvmKernel {
    fn eval(&self, a: &[f64], b: &[f64]) -> f64 {
        match *self {
            SvmKernel::Linear => dot(a, b),
            SvmKernel::Rbf { gamma } => (-gamma * squared_distance(a, b)).exp(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SvmParams {
    pub kernel: SvmKernel,
    pub c: f64,
    pub tol: f64,
    pub max_pair_updates: usize,
}

impl SvmParams {
    pub fn new(kernel: SvmKernel, c: f64) -> SvmParams {
        SvmParams {
            kernel,
            c,
            tol: DEFAULT_KKT_TOL,
            max_pair_updates: DEFAULT_MAX_PAIR_UPDATES,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SvmModel {
    kernel: SvmKernel,
    c: f64,
    support_vectors: Matrix,
    /// alpha_i * y_i per support vector.
    dual_coefficients: Vec<f64>,
    bias: f64,
    /// Full multiplier vector over the training rows, for diagnostics.
    alphas: Vec<f64>,
    converged: bool,
    pair_updates: usize,
    input_dim: usize,
}

impl SvmModel {
    pub fn fit(x: &Matrix, y: &[u8], params: &SvmParams) -> Result<SvmModel> {
        let n = x.rows();
        if y.len() != n {
            return Err(Error::InvalidParam(format!("{} labels for {n} rows", y.len())));
        }
        require_both_classes(y)?;
        if !(params.c > 0.0) || !params.c.is_finite() {
            return Err(Error::InvalidParam(format!("C={} must be positive", params.c)));
        }
        if let SvmKernel::Rbf { gamma } = params.kernel {
            if !(gamma > 0.0) || !gamma.is_finite() {
                return Err(Error::InvalidParam(format!("gamma={gamma} must be positive")));
            }
        }

        let signs: Vec<f64> = y.iter().map(|&l| if l == 1 { 1.0 } else { -1.0 }).collect();
        let c = params.c;

        // Full Gram cache; training sets stay small at desk scale.
        let mut gram = vec![0.0f64; n * n];
        for i in 0..n {
            for j in i..n {
                let k = params.kernel.eval(x.row(i), x.row(j));
                gram[i * n + j] = k;
                gram[j * n + i] = k;
            }
        }

        let mut alphas = vec![0.0f64; n];
        // g_i = y_i - sum_j alpha_j y_j K_ij; the bias wants to sit at
        // g_i for every free vector.
        let mut g: Vec<f64> = signs.clone();

        let in_up = |idx: usize, alphas: &[f64]| -> bool {
            (signs[idx] > 0.0 && alphas[idx] < c) || (signs[idx] < 0.0 && alphas[idx] > 0.0)
        };
        let in_low = |idx: usize, alphas: &[f64]| -> bool {
            (signs[idx] > 0.0 && alphas[idx] > 0.0) || (signs[idx] < 0.0 && alphas[idx] < c)
        };

        let mut converged = false;
        let mut pair_updates = 0;
        while pair_updates < params.max_pair_updates {
            // Maximal violating pair.
            let mut i_up: Option<usize> = None;
            let mut i_low: Option<usize> = None;
            for idx in 0..n {
                if in_up(idx, &alphas) && i_up.is_none_or(|best| g[idx] > g[best]) {
                    i_up = Some(idx);
                }
                if in_low(idx, &alphas) && i_low.is_none_or(|best| g[idx] < g[best]) {
                    i_low = Some(idx);
                }
            }
            let (i, j) = match (i_up, i_low) {
                (Some(i), Some(j)) => (i, j),
                _ => break,
            };
            if g[i] - g[j] <= params.tol {
                converged = true;
                break;
            }

            let (yi, yj) = (signs[i], signs[j]);
            let (low, high) = if yi != yj {
                ((alphas[j] - alphas[i]).max(0.0), (c + alphas[j] - alphas[i]).min(c))
            } else {
                ((alphas[i] + alphas[j] - c).max(0.0), (alphas[i] + alphas[j]).min(c))
            };

            let eta = gram[i * n + i] + gram[j * n + j] - 2.0 * gram[i * n + j];
            let old_j = alphas[j];
            let new_j = if eta > 1e-12 {
                (old_j + yj * (g[j] - g[i]) / eta).clamp(low, high)
            } else {
                // Degenerate curvature: the objective is linear along
                // the pair direction, move to the better endpoint.
                if yj * (g[j] - g[i]) > 0.0 {
                    high
                } else {
                    low
                }
            };
            let delta_j = new_j - old_j;
            if delta_j == 0.0 {
                // The most violating pair cannot move; stop rather than
                // spin on it.
                break;
            }
            let delta_i = -yi * yj * delta_j;
            alphas[j] = new_j;
            alphas[i] = (alphas[i] + delta_i).clamp(0.0, c);

            let step_i = delta_i * yi;
            let step_j = delta_j * yj;
            for (k, gk) in g.iter_mut().enumerate() {
                *gk -= step_i * gram[i * n + k] + step_j * gram[j * n + k];
            }
            pair_updates += 1;
        }
        if !converged {
            // The cap may have landed exactly on the optimum.
            let mut best_up = f64::NEG_INFINITY;
            let mut best_low = f64::INFINITY;
            for idx in 0..n {
                if in_up(idx, &alphas) {
                    best_up = best_up.max(g[idx]);
                }
                if in_low(idx, &alphas) {
                    best_low = best_low.min(g[idx]);
                }
            }
            converged = best_up - best_low <= params.tol;
        }

        let mut best_up = f64::NEG_INFINITY;
        let mut best_low = f64::INFINITY;
        for idx in 0..n {
            if in_up(idx, &alphas) {
                best_up = best_up.max(g[idx]);
            }
            if in_low(idx, &alphas) {
                best_low = best_low.min(g[idx]);
            }
        }
        let bias = 0.5 * (best_up + best_low);

        let sv_indices: Vec<usize> = (0..n).filter(|&idx| alphas[idx] > 0.0).collect();
        let support_vectors = x.select_rows(&sv_indices);
        let dual_coefficients: Vec<f64> = sv_indices
            .iter()
            .map(|&idx| alphas[idx] * signs[idx])
            .collect();

        Ok(SvmModel {
            kernel: params.kernel,
            c,
            support_vectors,
            dual_coefficients,
            bias,
            alphas,
            converged,
            pair_updates,
            input_dim: x.cols(),
        })
    }

    pub fn kernel(&self) -> SvmKernel {
        self.kernel
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn support_vectors(&self) -> &Matrix {
        &self.support_vectors
    }

    pub fn dual_coefficients(&self) -> &[f64] {
        &self.dual_coefficients
    }

    /// Multipliers for every training row, zeros included.
    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    /// False when training stopped at the update cap with KKT
    /// violations above tolerance.
    pub fn converged(&self) -> bool {
        self.converged
    }

    pub fn pair_updates(&self) -> usize {
        self.pair_updates
    }

    /// Explicit weight vector; linear kernel only.
    pub fn linear_weights(&self) -> Option<Vec<f64>> {
        match self.kernel {
            SvmKernel::Linear => {
                let mut w = vec![0.0; self.input_dim];
                for (coef, sv) in self
                    .dual_coefficients
                    .iter()
                    .zip((0..self.support_vectors.rows()).map(|i| self.support_vectors.row(i)))
                {
                    for (wj, &vj) in w.iter_mut().zip(sv) {
                        *wj += coef * vj;
                    }
                }
                Some(w)
            }
            SvmKernel::Rbf { .. } => None,
        }
    }
}

impl Classifier for SvmModel {
    fn decision_score(&self, x: &Matrix) -> Result<Vec<f64>> {
        check_columns(self.input_dim, x)?;
        let mut out = Vec::with_capacity(x.rows());
        for qi in 0..x.rows() {
            let q = x.row(qi);
            let mut acc = self.bias;
            for (coef, si) in self.dual_coefficients.iter().zip(0..self.support_vectors.rows()) {
                acc += coef * self.kernel.eval(self.support_vectors.row(si), q);
            }
            out.push(acc);
        }
        Ok(out)
    }

    fn kind(&self) -> ScoreKind {
        ScoreKind::Margin
    }

    fn describe(&self) -> ModelDescription {
        let mut details = BTreeMap::new();
        details.insert("C".to_string(), format!("{:?}", self.c));
        if let SvmKernel::Rbf { gamma } = self.kernel {
            details.insert("gamma".to_string(), format!("{gamma:?}"));
        }
        details.insert(
            "kernel".to_string(),
            match self.kernel {
                SvmKernel::Linear => "linear".to_string(),
                SvmKernel::Rbf { .. } => "rbf".to_string(),
            },
        );
        details.insert(
            "support_vectors".to_string(),
            self.support_vectors.rows().to_string(),
        );
        details.insert("converged".to_string(), self.converged.to_string());
        ModelDescription {
            name: "svm".to_string(),
            input_dim: self.input_dim,
            details,
        }
    }
}
