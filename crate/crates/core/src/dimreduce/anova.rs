//! Univariate feature scoring by the one-way ANOVA F-test and top-s
//! filter selection.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Per-feature F-value: between-group over within-group mean squares.
///
/// For two groups, MS_B sums n_i*(group mean - overall mean)^2 over the
/// groups and divides by m-1; MS_W sums squared deviations from each
/// group's mean and divides by n-m. A feature with zero within-group
/// variability scores +infinity when the group means differ and 0 when
/// they do not.
pub fn anova_f_scores(x: &Matrix, labels: &[u8]) -> Result<Vec<f64>> {
    let n = x.rows();
    if labels.len() != n {
        return Err(Error::InvalidParam(format!(
            "{} labels for {} rows",
            labels.len(),
            n
        )));
    }
    let n1 = labels.iter().filter(|&&l| l == 1).count();
    let n0 = n - n1;
    if n0 == 0 || n1 == 0 {
        return Err(Error::SingleClass);
    }
    let groups = 2.0;
    if n <= 2 {
        return Err(Error::InvalidParam(
            "F-test needs more samples than groups".into(),
        ));
    }

    let d = x.cols();
    let mut group_sums = vec![[0.0f64; 2]; d];
    for i in 0..n {
        let class = labels[i] as usize;
        for (j, &v) in x.row(i).iter().enumerate() {
            group_sums[j][class] += v;
        }
    }

    let mut within = vec![0.0f64; d];
    let group_means: Vec<[f64; 2]> = group_sums
        .iter()
        .map(|s| [s[0] / n0 as f64, s[1] / n1 as f64])
        .collect();
    for i in 0..n {
        let class = labels[i] as usize;
        for (j, &v) in x.row(i).iter().enumerate() {
            let dev = v - group_means[j][class];
            within[j] += dev * dev;
        }
    }

    let mut scores = Vec::with_capacity(d);
    for j in 0..d {
        let overall = (group_sums[j][0] + group_sums[j][1]) / n as f64;
        let d0 = group_means[j][0] - overall;
        let d1 = group_means[j][1] - overall;
        let ms_between = (n0 as f64 * d0 * d0 + n1 as f64 * d1 * d1) / (groups - 1.0);
        let ms_within = within[j] / (n as f64 - groups);
        let f = if ms_within > 0.0 {
            ms_between / ms_within
        } else if ms_between > 0.0 {
            f64::INFINITY
        } else {
            0.0
        };
        scores.push(f);
    }
    Ok(scores)
}

/// Filter selector keeping the `s` top-scoring features.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnovaSelector {
    scores: Vec<f64>,
    selected: Vec<usize>,
    s: usize,
    input_dim: usize,
}

impl AnovaSelector {
    /// Scores every feature and keeps the `s` with the highest F-value,
    /// breaking ties by lower feature index. `selected` is stored in
    /// ascending index order.
    pub fn fit(x: &Matrix, labels: &[u8], s: usize) -> Result<AnovaSelector> {
        let d = x.cols();
        if s < 1 || s > d {
            return Err(Error::InvalidParam(format!(
                "s={s} outside the valid range 1..={d}"
            )));
        }
        let scores = anova_f_scores(x, labels)?;
        let mut ranked: Vec<usize> = (0..d).collect();
        ranked.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
        let mut selected: Vec<usize> = ranked[..s].to_vec();
        selected.sort_unstable();
        Ok(AnovaSelector {
            scores,
            selected,
            s,
            input_dim: d,
        })
    }

    /// Reconstructs a selector from its serialized form (scores are not
    /// part of the audit payload and come back empty).
    pub(crate) fn from_parts(selected: Vec<usize>, input_dim: usize) -> Result<AnovaSelector> {
        let s = selected.len();
        if s == 0 || s > input_dim {
            return Err(Error::InvalidParam(format!(
                "{s} selected indices for input dimension {input_dim}"
            )));
        }
        if selected.windows(2).any(|w| w[0] >= w[1]) || selected[s - 1] >= input_dim {
            return Err(Error::InvalidParam(
                "selected indices must be strictly ascending and in range".into(),
            ));
        }
        Ok(AnovaSelector {
            scores: Vec::new(),
            selected,
            s,
            input_dim,
        })
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    /// Column subset of `x`, ascending index order.
    pub fn apply(&self, x: &Matrix) -> Result<Matrix> {
        if x.cols() != self.input_dim {
            return Err(Error::ColumnMismatch {
                expected: self.input_dim,
                got: x.cols(),
            });
        }
        Ok(x.select_columns(&self.selected))
    }
}
