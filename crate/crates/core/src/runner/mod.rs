//! Experiment orchestration: sweep reducers x component counts x
//! classifiers x tuning objectives over one dataset and emit the result
//! tables plus per-figure score grids.

mod report;
mod synthetic;

pub use report::{
    config_from_json, config_to_json, export_figure_data, figure_grid, report_from_csv,
    report_to_csv, timings_to_csv, write_report,
};
pub use synthetic::{make_synthetic, SyntheticData};

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifiers::{ClassifierConfig, ClassifierId};
use crate::dataset::{load_csv, make_folds, Dataset};
use crate::dimreduce::ReducerConfig;
use crate::error::{Error, Result};
use crate::modelselect::{
    evaluate_prepared, grid_search_prepared, CvResult, CvSettings, GridSpec, Objective,
    PreparedFolds,
};

/// Environment variable overriding the sweep's worker-thread count.
pub const WORKERS_ENV: &str = "DIMSWEEP_WORKERS";

/// Folds used throughout the benchmark protocol.
pub const N_FOLDS: usize = 5;

/// The component counts swept by default.
pub const DEFAULT_S_VALUES: [usize; 7] = [3, 6, 12, 24, 48, 92, 184];

/// Which dimension-reduction family a sweep axis uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReducerMethod {
    Anova,
    Pca,
}

impl ReducerMethod {
    pub const ALL: [ReducerMethod; 2] = [ReducerMethod::Anova, ReducerMethod::Pca];

    pub fn as_str(&self) -> &'static str {
        match self {
            ReducerMethod::Anova => "anova",
            ReducerMethod::Pca => "pca",
        }
    }

    pub fn config(&self, s: usize) -> ReducerConfig {
        match self {
            ReducerMethod::Anova => ReducerConfig::Anova { s },
            ReducerMethod::Pca => ReducerConfig::Pca { s },
        }
    }
}

impl fmt::Display for ReducerMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReducerMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<ReducerMethod> {
        match s {
            "anova" => Ok(ReducerMethod::Anova),
            "pca" => Ok(ReducerMethod::Pca),
            other => Err(Error::InvalidParam(format!(
                "unknown reducer '{other}' (expected anova or pca)"
            ))),
        }
    }
}

/// Full description of one sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub data: PathBuf,
    pub label_column: String,
    pub seed: u64,
    pub s_values: Vec<usize>,
    pub reducers: Vec<ReducerMethod>,
    pub classifiers: Vec<ClassifierId>,
    pub objectives: Vec<Objective>,
    pub standardize: bool,
    pub leaky_reduction: bool,
    pub out_dir: PathBuf,
}

impl ExperimentConfig {
    /// The benchmark defaults: every reducer, classifier and objective,
    /// with the standard component sweep.
    pub fn new(data: PathBuf, label_column: String, out_dir: PathBuf) -> ExperimentConfig {
        ExperimentConfig {
            data,
            label_column,
            seed: 42,
            s_values: DEFAULT_S_VALUES.to_vec(),
            reducers: ReducerMethod::ALL.to_vec(),
            classifiers: ClassifierId::ALL.to_vec(),
            objectives: Objective::ALL.to_vec(),
            standardize: true,
            leaky_reduction: false,
            out_dir,
        }
    }

    fn validate(&self, d: usize) -> Result<()> {
        if self.s_values.is_empty()
            || self.reducers.is_empty()
            || self.classifiers.is_empty()
            || self.objectives.is_empty()
        {
            return Err(Error::InvalidParam(
                "s_values, reducers, classifiers and objectives must all be non-empty".into(),
            ));
        }
        if let Some(&bad) = self.s_values.iter().find(|&&s| s == 0 || s > d) {
            return Err(Error::InvalidParam(format!(
                "s={bad} outside the dataset's 1..={d} feature range"
            )));
        }
        Ok(())
    }
}

/// How one swept combination ended.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum RowOutcome {
    Ok(CvResult),
    /// The combination failed; the sweep records it and moves on.
    Error(String),
}

/// One (reducer, s, classifier, objective) result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub reducer: ReducerMethod,
    pub s: usize,
    pub classifier: ClassifierId,
    pub objective: Objective,
    pub outcome: RowOutcome,
    /// Hyperparameter grid points evaluated for this row (1 when the
    /// classifier has no grid).
    pub grid_points: usize,
    /// Wall-clock time; excluded from the deterministic artifacts.
    pub wall_ms: u128,
}

/// All rows of a finished sweep plus the config echo.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub rows: Vec<ReportRow>,
    pub config: ExperimentConfig,
    pub toolkit_version: String,
}

impl EvaluationReport {
    pub fn error_rows(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| matches!(r.outcome, RowOutcome::Error(_)))
            .count()
    }
}

/// Grid size for a classifier under the default tables (1 when gridless).
pub fn grid_size(classifier: ClassifierId) -> usize {
    GridSpec::table_default(classifier).map_or(1, |g| g.len())
}

fn worker_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var(WORKERS_ENV) {
        let workers: usize = raw.parse().map_err(|_| {
            Error::InvalidParam(format!("{WORKERS_ENV}='{raw}' is not a worker count"))
        })?;
        if workers == 0 {
            return Err(Error::InvalidParam(format!(
                "{WORKERS_ENV} must be at least 1"
            )));
        }
        builder = builder.num_threads(workers);
    }
    builder
        .build()
        .map_err(|e| Error::InvalidParam(format!("worker pool: {e}")))
}

/// Runs the full sweep over an already-loaded dataset and returns the
/// rows in canonical (reducer, objective, classifier, s) order. Each
/// (reducer, s) pair fits its standardizers and reducers once and shares
/// them across every classifier and objective; failed combinations
/// become error rows instead of aborting the sweep.
pub fn run_sweep(config: &ExperimentConfig, dataset: &Dataset) -> Result<EvaluationReport> {
    config.validate(dataset.d())?;
    let plan = make_folds(dataset.labels(), N_FOLDS, config.seed)?;

    let base_settings = |objective: Objective, reducer: ReducerConfig| -> CvSettings {
        CvSettings {
            reducer,
            objective,
            standardize: config.standardize,
            leaky_reduction: config.leaky_reduction,
            seed: config.seed,
            eval_on_train: false,
        }
    };

    let pool = worker_pool()?;
    let report_rows = pool.install(|| -> Result<Vec<ReportRow>> {
        // Phase 1: one prepared-fold set per (reducer, s).
        let mut groups: Vec<(ReducerMethod, usize)> = Vec::new();
        for &reducer in &config.reducers {
            for &s in &config.s_values {
                groups.push((reducer, s));
            }
        }
        let prepared: Vec<((ReducerMethod, usize), Arc<std::result::Result<PreparedFolds, String>>)> =
            groups
                .par_iter()
                .map(|&(reducer, s)| {
                    let settings = base_settings(Objective::Accuracy, reducer.config(s));
                    let outcome = crate::modelselect::prepare_folds(dataset, &plan, &settings)
                        .map_err(|e| e.to_string());
                    ((reducer, s), Arc::new(outcome))
                })
                .collect();
        let prepared: HashMap<_, _> = prepared.into_iter().collect();

        // Phase 2: evaluate every combination against the shared folds.
        let mut combos: Vec<(ReducerMethod, usize, ClassifierId, Objective)> = Vec::new();
        for &reducer in &config.reducers {
            for &objective in &config.objectives {
                for &classifier in &config.classifiers {
                    for &s in &config.s_values {
                        combos.push((reducer, s, classifier, objective));
                    }
                }
            }
        }

        let rows: Vec<ReportRow> = combos
            .par_iter()
            .map(|&(reducer, s, classifier, objective)| {
                let started = Instant::now();
                let settings = base_settings(objective, reducer.config(s));
                let folds = &prepared[&(reducer, s)];
                let grid = GridSpec::table_default(classifier);
                let grid_points = grid.as_ref().map_or(1, GridSpec::len);

                let outcome = match folds.as_ref() {
                    Err(message) => RowOutcome::Error(message.clone()),
                    Ok(folds) => {
                        let evaluated = match &grid {
                            None => {
                                let config = match classifier {
                                    ClassifierId::Gnb => ClassifierConfig::Gnb,
                                    ClassifierId::Lda => ClassifierConfig::Lda,
                                    other => {
                                        unreachable!("{other} has a default grid")
                                    }
                                };
                                evaluate_prepared(folds, &config, &settings)
                            }
                            Some(grid) => {
                                grid_search_prepared(folds, grid, &settings).map(|r| r.best)
                            }
                        };
                        match evaluated {
                            Ok(cv) => RowOutcome::Ok(cv),
                            Err(e) => RowOutcome::Error(e.to_string()),
                        }
                    }
                };
                ReportRow {
                    reducer,
                    s,
                    classifier,
                    objective,
                    outcome,
                    grid_points,
                    wall_ms: started.elapsed().as_millis(),
                }
            })
            .collect();
        Ok(rows)
    })?;

    let mut rows = report_rows;
    let classifier_rank = |c: ClassifierId| -> usize {
        ClassifierId::ALL.iter().position(|&x| x == c).unwrap()
    };
    rows.sort_by_key(|r| (r.reducer, r.objective, classifier_rank(r.classifier), r.s));

    Ok(EvaluationReport {
        rows,
        config: config.clone(),
        toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

/// Loads the dataset, runs the sweep and writes every artifact into the
/// configured output directory.
pub fn run_experiment(config: &ExperimentConfig) -> Result<EvaluationReport> {
    let dataset = load_csv(&config.data, &config.label_column)?;
    let report = run_sweep(config, &dataset)?;
    write_report(&report, &config.out_dir)?;
    Ok(report)
}
