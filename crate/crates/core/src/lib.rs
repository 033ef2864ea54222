//! Benchmarking toolkit for classifiers under dimension reduction.
//!
//! The crate implements, from scratch, the two reduction methods (ANOVA
//! F-test filtering and PCA), seven classifiers (k-NN, Gaussian naive
//! Bayes, LDA, ridge, linear and RBF support vector machines, random
//! forests), accuracy and ROC/AUC scoring, stratified 5-fold
//! cross-validation with grid-search tuning, and an experiment runner
//! that sweeps the retained-component count and emits plottable result
//! tables. Every stochastic step draws from labeled, seeded streams, so
//! a run is reproducible byte for byte.

pub mod classifiers;
pub mod dataset;
pub mod dimreduce;
pub mod error;
pub mod linalg;
pub mod metrics;
pub mod modelselect;
pub mod rng;
pub mod runner;

pub use classifiers::{Classifier, ClassifierConfig, ClassifierId};
pub use dataset::{load_csv, make_folds, write_csv, Dataset, FoldPlan, Standardizer};
pub use dimreduce::{anova_f_scores, AnovaSelector, FittedReducer, PcaTransform, ReducerConfig};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use metrics::{accuracy, confusion_counts, roc_auc, ConfusionCounts, RocCurve};
pub use modelselect::{
    cross_validate, grid_search, CvResult, CvSettings, GridSpec, Objective,
};
pub use rng::RngStream;
pub use runner::{
    make_synthetic, run_experiment, run_sweep, EvaluationReport, ExperimentConfig, ReducerMethod,
    ReportRow, RowOutcome, SyntheticData,
};
