//! Dimension reduction behind a common fit-on-train / transform-any
//! contract: ANOVA F-test feature selection and PCA feature
//! transformation.

mod anova;
mod pca;

pub use anova::{anova_f_scores, AnovaSelector};
pub use pca::PcaTransform;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Version tag of the fitted-reducer JSON document.
const REDUCER_FORMAT_VERSION: u32 = 1;

/// Which reduction method to fit, and how many dimensions to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "lowercase")]
pub enum ReducerConfig {
    /// Pass features through unchanged.
    Identity,
    Anova { s: usize },
    Pca { s: usize },
}

impl ReducerConfig {
    /// Fits the configured reducer on training data. Labels are only
    /// consulted by the ANOVA filter; PCA is unsupervised.
    pub fn fit(&self, x: &Matrix, labels: &[u8]) -> Result<FittedReducer> {
        match *self {
            ReducerConfig::Identity => Ok(FittedReducer::Identity { input_dim: x.cols() }),
            ReducerConfig::Anova { s } => {
                Ok(FittedReducer::Anova(AnovaSelector::fit(x, labels, s)?))
            }
            ReducerConfig::Pca { s } => Ok(FittedReducer::Pca(PcaTransform::fit(x, s)?)),
        }
    }
}

/// A trained reduction transform ready to project any matrix with the
/// training dimensionality.
#[derive(Clone, Debug, PartialEq)]
pub enum FittedReducer {
    Identity { input_dim: usize },
    Anova(AnovaSelector),
    Pca(PcaTransform),
}

impl FittedReducer {
    pub fn apply(&self, x: &Matrix) -> Result<Matrix> {
        match self {
            FittedReducer::Identity { input_dim } => {
                if x.cols() != *input_dim {
                    return Err(Error::ColumnMismatch {
                        expected: *input_dim,
                        got: x.cols(),
                    });
                }
                Ok(x.clone())
            }
            FittedReducer::Anova(sel) => sel.apply(x),
            FittedReducer::Pca(pca) => pca.apply(x),
        }
    }

    pub fn output_dim(&self) -> usize {
        match self {
            FittedReducer::Identity { input_dim } => *input_dim,
            FittedReducer::Anova(sel) => sel.s(),
            FittedReducer::Pca(pca) => pca.s(),
        }
    }

    pub fn input_dim(&self) -> usize {
        match self {
            FittedReducer::Identity { input_dim } => *input_dim,
            FittedReducer::Anova(sel) => sel.input_dim(),
            FittedReducer::Pca(pca) => pca.input_dim(),
        }
    }

    /// Versioned JSON document for audit and debugging: method tag, s,
    /// and the selected indices (ANOVA) or mean plus component matrix
    /// (PCA). Not a wire protocol.
    pub fn to_json(&self) -> String {
        let doc = match self {
            FittedReducer::Identity { input_dim } => json!({
                "format_version": REDUCER_FORMAT_VERSION,
                "method": "identity",
                "input_dim": input_dim,
                "s": input_dim,
            }),
            FittedReducer::Anova(sel) => json!({
                "format_version": REDUCER_FORMAT_VERSION,
                "method": "anova",
                "input_dim": sel.input_dim(),
                "s": sel.s(),
                "selected": sel.selected(),
            }),
            FittedReducer::Pca(pca) => json!({
                "format_version": REDUCER_FORMAT_VERSION,
                "method": "pca",
                "input_dim": pca.input_dim(),
                "s": pca.s(),
                "mean": pca.mean(),
                "components": (0..pca.s()).map(|k| pca.components().row(k).to_vec()).collect::<Vec<_>>(),
                "explained_variance": pca.explained_variance(),
            }),
        };
        serde_json::to_string_pretty(&doc).expect("reducer document serializes")
    }

    /// Parses a document produced by [`FittedReducer::to_json`].
    /// ANOVA selectors come back without their score vector, which is
    /// not part of the audit payload.
    pub fn from_json(text: &str) -> Result<FittedReducer> {
        let doc: serde_json::Value = serde_json::from_str(text)?;
        let version = doc["format_version"].as_u64().unwrap_or(0);
        if version != u64::from(REDUCER_FORMAT_VERSION) {
            return Err(Error::InvalidParam(format!(
                "unsupported reducer format version {version}"
            )));
        }
        let method = doc["method"].as_str().unwrap_or("");
        let field_usize = |value: &serde_json::Value, name: &str| -> Result<usize> {
            value[name]
                .as_u64()
                .map(|v| v as usize)
                .ok_or_else(|| Error::InvalidParam(format!("missing field '{name}'")))
        };
        match method {
            "identity" => Ok(FittedReducer::Identity {
                input_dim: field_usize(&doc, "input_dim")?,
            }),
            "anova" => {
                let input_dim = field_usize(&doc, "input_dim")?;
                let selected: Vec<usize> = serde_json::from_value(doc["selected"].clone())?;
                Ok(FittedReducer::Anova(AnovaSelector::from_parts(
                    selected, input_dim,
                )?))
            }
            "pca" => {
                let mean: Vec<f64> = serde_json::from_value(doc["mean"].clone())?;
                let rows: Vec<Vec<f64>> = serde_json::from_value(doc["components"].clone())?;
                let explained: Vec<f64> = serde_json::from_value(doc["explained_variance"].clone())?;
                Ok(FittedReducer::Pca(PcaTransform::from_parts(
                    mean,
                    Matrix::from_rows(&rows)?,
                    explained,
                )?))
            }
            other => Err(Error::InvalidParam(format!("unknown reducer method '{other}'"))),
        }
    }
}
