//! The seven classifiers behind one contract: fit on a training matrix
//! with {0,1} labels, then produce hard predictions and a continuous
//! decision score where larger means more class 1.

mod forest;
mod gnb;
mod knn;
mod lda;
mod ridge;
mod svm;

pub use forest::{ForestModel, ForestParams};
pub use gnb::GnbModel;
pub use knn::KnnModel;
pub use lda::LdaModel;
pub use ridge::RidgeModel;
pub use svm::{SvmKernel, SvmModel, SvmParams};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rng::RngStream;

/// How a model's decision score is calibrated, and therefore where its
/// prediction threshold sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScoreKind {
    /// Score in [0,1]; predict class 1 above 0.5.
    Probability,
    /// Signed margin; predict class 1 at or above 0.
    Margin,
}

impl ScoreKind {
    pub fn threshold(&self) -> f64 {
        match self {
            ScoreKind::Probability => 0.5,
            ScoreKind::Margin => 0.0,
        }
    }

    fn decide(&self, score: f64) -> u8 {
        match self {
            ScoreKind::Probability => u8::from(score > 0.5),
            ScoreKind::Margin => u8::from(score >= 0.0),
        }
    }
}

/// Structured summary of a fitted model for reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelDescription {
    pub name: String,
    pub input_dim: usize,
    pub details: BTreeMap<String, String>,
}

/// Common contract for every fitted model.
pub trait Classifier: Send + Sync {
    /// Continuous score per row; larger means more class 1.
    fn decision_score(&self, x: &Matrix) -> Result<Vec<f64>>;

    fn kind(&self) -> ScoreKind;

    /// Hard {0,1} labels, derived from the score and the score kind.
    fn predict(&self, x: &Matrix) -> Result<Vec<u8>> {
        let kind = self.kind();
        Ok(self
            .decision_score(x)?
            .into_iter()
            .map(|s| kind.decide(s))
            .collect())
    }

    fn describe(&self) -> ModelDescription;
}

/// Identity of one of the seven classifiers, without hyperparameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassifierId {
    Knn,
    Gnb,
    Lda,
    Ridge,
    SvmLinear,
    SvmRbf,
    Forest,
}

impl ClassifierId {
    /// All seven, in presentation order.
    pub const ALL: [ClassifierId; 7] = [
        ClassifierId::Knn,
        ClassifierId::Gnb,
        ClassifierId::Lda,
        ClassifierId::Ridge,
        ClassifierId::SvmLinear,
        ClassifierId::SvmRbf,
        ClassifierId::Forest,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ClassifierId::Knn => "knn",
            ClassifierId::Gnb => "gnb",
            ClassifierId::Lda => "lda",
            ClassifierId::Ridge => "ridge",
            ClassifierId::SvmLinear => "svm-l",
            ClassifierId::SvmRbf => "svm-rbf",
            ClassifierId::Forest => "rf",
        }
    }
}

impl fmt::Display for ClassifierId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassifierId {
    type Err = Error;

    fn from_str(s: &str) -> Result<ClassifierId> {
        match s {
            "knn" => Ok(ClassifierId::Knn),
            "gnb" => Ok(ClassifierId::Gnb),
            "lda" => Ok(ClassifierId::Lda),
            "ridge" => Ok(ClassifierId::Ridge),
            "svm-l" => Ok(ClassifierId::SvmLinear),
            "svm-rbf" => Ok(ClassifierId::SvmRbf),
            "rf" => Ok(ClassifierId::Forest),
            other => Err(Error::InvalidParam(format!(
                "unknown classifier '{other}' (expected one of knn, gnb, lda, ridge, svm-l, svm-rbf, rf)"
            ))),
        }
    }
}

/// A classifier choice with concrete hyperparameters, ready to fit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "classifier", rename_all = "kebab-case")]
pub enum ClassifierConfig {
    Knn { k: usize },
    Gnb,
    Lda,
    Ridge { alpha: f64 },
    SvmLinear { c: f64 },
    SvmRbf { c: f64, gamma: f64 },
    Forest { n_trees: usize },
}

impl ClassifierConfig {
    pub fn id(&self) -> ClassifierId {
        match self {
            ClassifierConfig::Knn { .. } => ClassifierId::Knn,
            ClassifierConfig::Gnb => ClassifierId::Gnb,
            ClassifierConfig::Lda => ClassifierId::Lda,
            ClassifierConfig::Ridge { .. } => ClassifierId::Ridge,
            ClassifierConfig::SvmLinear { .. } => ClassifierId::SvmLinear,
            ClassifierConfig::SvmRbf { .. } => ClassifierId::SvmRbf,
            ClassifierConfig::Forest { .. } => ClassifierId::Forest,
        }
    }

    /// Fits the configured model. The stream feeds the forest's
    /// bootstrap and subspace draws; the other models are deterministic
    /// and ignore it.
    pub fn fit(&self, x: &Matrix, y: &[u8], rng: &RngStream) -> Result<Box<dyn Classifier>> {
        match *self {
            ClassifierConfig::Knn { k } => Ok(Box::new(KnnModel::fit(x, y, k)?)),
            ClassifierConfig::Gnb => Ok(Box::new(GnbModel::fit(x, y)?)),
            ClassifierConfig::Lda => Ok(Box::new(LdaModel::fit(x, y)?)),
            ClassifierConfig::Ridge { alpha } => Ok(Box::new(RidgeModel::fit(x, y, alpha)?)),
            ClassifierConfig::SvmLinear { c } => Ok(Box::new(SvmModel::fit(
                x,
                y,
                &SvmParams::new(SvmKernel::Linear, c),
            )?)),
            ClassifierConfig::SvmRbf { c, gamma } => Ok(Box::new(SvmModel::fit(
                x,
                y,
                &SvmParams::new(SvmKernel::Rbf { gamma }, c),
            )?)),
            ClassifierConfig::Forest { n_trees } => Ok(Box::new(ForestModel::fit(
                x,
                y,
                &ForestParams::new(n_trees),
                rng,
            )?)),
        }
    }

    /// Hyperparameters as a name-to-value map, in report form.
    pub fn params(&self) -> BTreeMap<String, f64> {
        let mut map = BTreeMap::new();
        match *self {
            ClassifierConfig::Knn { k } => {
                map.insert("k".to_string(), k as f64);
            }
            ClassifierConfig::Gnb | ClassifierConfig::Lda => {}
            ClassifierConfig::Ridge { alpha } => {
                map.insert("alpha".to_string(), alpha);
            }
            ClassifierConfig::SvmLinear { c } => {
                map.insert("C".to_string(), c);
            }
            ClassifierConfig::SvmRbf { c, gamma } => {
                map.insert("C".to_string(), c);
                map.insert("gamma".to_string(), gamma);
            }
            ClassifierConfig::Forest { n_trees } => {
                map.insert("n_trees".to_string(), n_trees as f64);
            }
        }
        map
    }

    /// Rebuilds a config from a classifier id plus named grid values.
    pub fn from_grid_point(id: ClassifierId, values: &[(String, f64)]) -> Result<ClassifierConfig> {
        let get = |name: &str| -> Result<f64> {
            values
                .iter()
                .find(|(n, _)| n == name)
                .map(|&(_, v)| v)
                .ok_or_else(|| Error::InvalidParam(format!("grid point missing axis '{name}'")))
        };
        match id {
            ClassifierId::Knn => Ok(ClassifierConfig::Knn {
                k: get("k")? as usize,
            }),
            ClassifierId::Gnb => Ok(ClassifierConfig::Gnb),
            ClassifierId::Lda => Ok(ClassifierConfig::Lda),
            ClassifierId::Ridge => Ok(ClassifierConfig::Ridge { alpha: get("alpha")? }),
            ClassifierId::SvmLinear => Ok(ClassifierConfig::SvmLinear { c: get("C")? }),
            ClassifierId::SvmRbf => Ok(ClassifierConfig::SvmRbf {
                c: get("C")?,
                gamma: get("gamma")?,
            }),
            ClassifierId::Forest => Ok(ClassifierConfig::Forest {
                n_trees: get("n_trees")? as usize,
            }),
        }
    }
}

pub(crate) fn require_both_classes(y: &[u8]) -> Result<()> {
    if !y.contains(&0) || !y.contains(&1) {
        return Err(Error::SingleClass);
    }
    Ok(())
}

pub(crate) fn check_columns(expected: usize, x: &Matrix) -> Result<()> {
    if x.cols() != expected {
        return Err(Error::ColumnMismatch {
            expected,
            got: x.cols(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn random_training(seed: u64, n: usize, d: usize) -> (Matrix, Vec<u8>) {
        let mut rng = RngStream::new(seed, "clf-test").rng();
        let labels: Vec<u8> = (0..n).map(|i| (i % 2) as u8).collect();
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..d)
                    .map(|_| rng.random_range(-2.0..2.0) + 0.8 * labels[i] as f64)
                    .collect()
            })
            .collect();
        (Matrix::from_rows(&rows).unwrap(), labels)
    }

    fn all_configs() -> Vec<ClassifierConfig> {
        vec![
            ClassifierConfig::Knn { k: 3 },
            ClassifierConfig::Gnb,
            ClassifierConfig::Lda,
            ClassifierConfig::Ridge { alpha: 1.0 },
            ClassifierConfig::SvmLinear { c: 1.0 },
            ClassifierConfig::SvmRbf { c: 1.0, gamma: 0.5 },
            // Odd tree count: majority votes cannot tie, so label-swap
            // antisymmetry holds exactly under a shared stream.
            ClassifierConfig::Forest { n_trees: 9 },
        ]
    }

    #[test]
    fn predictions_follow_scores_for_every_model() {
        let (x, y) = random_training(1, 24, 3);
        let (queries, _) = random_training(2, 40, 3);
        let stream = RngStream::new(5, "fit");
        for config in all_configs() {
            let model = config.fit(&x, &y, &stream).unwrap();
            let scores = model.decision_score(&queries).unwrap();
            let predictions = model.predict(&queries).unwrap();
            let threshold = model.kind().threshold();
            for (s, &p) in scores.iter().zip(&predictions) {
                if *s > threshold {
                    assert_eq!(p, 1, "{config:?}: score {s} above threshold");
                }
                if *s < threshold {
                    assert_eq!(p, 0, "{config:?}: score {s} below threshold");
                }
            }
        }
    }

    #[test]
    fn label_swap_flips_predictions() {
        let (x, y) = random_training(3, 20, 4);
        let swapped: Vec<u8> = y.iter().map(|&l| 1 - l).collect();
        let (queries, _) = random_training(4, 30, 4);
        let stream = RngStream::new(9, "fit");
        for config in all_configs() {
            let a = config.fit(&x, &y, &stream).unwrap();
            let b = config.fit(&x, &swapped, &stream).unwrap();
            let pa = a.predict(&queries).unwrap();
            let pb = b.predict(&queries).unwrap();
            for (u, v) in pa.iter().zip(&pb) {
                assert_eq!(*u, 1 - *v, "{config:?} did not flip");
            }
        }
    }

    #[test]
    fn classifier_id_string_roundtrip() {
        for id in ClassifierId::ALL {
            assert_eq!(id.as_str().parse::<ClassifierId>().unwrap(), id);
        }
        assert!("mystery".parse::<ClassifierId>().is_err());
    }
}
