//! Report serialization: the result table as CSV, the config echo as
//! JSON, per-row timings, and the per-figure score grids.
//!
//! Everything except `timings.csv` is byte-deterministic for a fixed
//! config and seed; timings are wall-clock measurements and live in
//! their own file so the deterministic artifacts stay diffable.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::classifiers::ClassifierId;
use crate::error::{Error, Result};
use crate::modelselect::Objective;
use crate::runner::{EvaluationReport, ExperimentConfig, ReducerMethod, ReportRow, RowOutcome};

fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

fn params_to_string(params: &BTreeMap<String, f64>) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={}", fmt_f64(*v)))
        .collect::<Vec<_>>()
        .join(";")
}

fn params_from_string(text: &str) -> Result<BTreeMap<String, f64>> {
    let mut map = BTreeMap::new();
    if text.is_empty() {
        return Ok(map);
    }
    for piece in text.split(';') {
        let (name, value) = piece
            .split_once('=')
            .ok_or_else(|| Error::InvalidParam(format!("malformed hyperparameter '{piece}'")))?;
        let parsed: f64 = value
            .parse()
            .map_err(|_| Error::InvalidParam(format!("malformed hyperparameter value '{value}'")))?;
        map.insert(name.to_string(), parsed);
    }
    Ok(map)
}

const REPORT_HEADER: [&str; 13] = [
    "reducer",
    "s",
    "classifier",
    "objective",
    "fold1",
    "fold2",
    "fold3",
    "fold4",
    "fold5",
    "mean",
    "hyperparameters",
    "grid_points",
    "status",
];

/// Renders the result table. Rows must already be in canonical order.
pub fn report_to_csv(rows: &[ReportRow]) -> String {
    let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
    writer.write_record(REPORT_HEADER).expect("header");
    for row in rows {
        let mut record: Vec<String> = vec![
            row.reducer.to_string(),
            row.s.to_string(),
            row.classifier.to_string(),
            row.objective.to_string(),
        ];
        match &row.outcome {
            RowOutcome::Ok(cv) => {
                for score in &cv.fold_scores {
                    record.push(fmt_f64(*score));
                }
                record.push(fmt_f64(cv.mean_score));
                record.push(params_to_string(&cv.chosen_params));
                record.push(row.grid_points.to_string());
                record.push("ok".to_string());
            }
            RowOutcome::Error(message) => {
                for _ in 0..5 {
                    record.push(String::new());
                }
                record.push(String::new());
                record.push(String::new());
                record.push(row.grid_points.to_string());
                record.push(format!("error: {message}"));
            }
        }
        writer.write_record(&record).expect("record");
    }
    String::from_utf8(writer.into_inner().expect("flush")).expect("utf8 csv")
}

/// Parses a result table written by [`report_to_csv`].
pub fn report_from_csv(text: &str) -> Result<Vec<ReportRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::InvalidParam(format!("report row {idx}: {e}")))?;
        if record.len() != REPORT_HEADER.len() {
            return Err(Error::InvalidParam(format!(
                "report row {idx}: {} fields, expected {}",
                record.len(),
                REPORT_HEADER.len()
            )));
        }
        let reducer: ReducerMethod = record[0].parse()?;
        let s: usize = record[1]
            .parse()
            .map_err(|_| Error::InvalidParam(format!("report row {idx}: bad s '{}'", &record[1])))?;
        let classifier: ClassifierId = record[2].parse()?;
        let objective: Objective = record[3].parse()?;
        let grid_points: usize = record[11].parse().map_err(|_| {
            Error::InvalidParam(format!("report row {idx}: bad grid_points '{}'", &record[11]))
        })?;
        let status = &record[12];
        let outcome = if status == "ok" {
            let mut fold_scores = Vec::with_capacity(5);
            for f in 0..5 {
                let raw = &record[4 + f];
                let score: f64 = raw.parse().map_err(|_| {
                    Error::InvalidParam(format!("report row {idx}: bad fold score '{raw}'"))
                })?;
                fold_scores.push(score);
            }
            let mean_score: f64 = record[9].parse().map_err(|_| {
                Error::InvalidParam(format!("report row {idx}: bad mean '{}'", &record[9]))
            })?;
            RowOutcome::Ok(crate::modelselect::CvResult {
                fold_scores,
                mean_score,
                chosen_params: params_from_string(&record[10])?,
                objective,
            })
        } else if let Some(message) = status.strip_prefix("error: ") {
            RowOutcome::Error(message.to_string())
        } else {
            return Err(Error::InvalidParam(format!(
                "report row {idx}: unknown status '{status}'"
            )));
        };
        rows.push(ReportRow {
            reducer,
            s,
            classifier,
            objective,
            outcome,
            grid_points,
            wall_ms: 0,
        });
    }
    Ok(rows)
}

/// Wall-clock milliseconds per row, keyed like the report.
pub fn timings_to_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from("reducer,s,classifier,objective,wall_ms\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.reducer, row.s, row.classifier, row.objective, row.wall_ms
        ));
    }
    out
}

/// Config echo plus toolkit version, pretty-printed JSON.
pub fn config_to_json(config: &ExperimentConfig, toolkit_version: &str) -> String {
    let doc = serde_json::json!({
        "toolkit_version": toolkit_version,
        "config": config,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("config serializes");
    text.push('\n');
    text
}

/// Parses the document written by [`config_to_json`].
pub fn config_from_json(text: &str) -> Result<ExperimentConfig> {
    let doc: serde_json::Value = serde_json::from_str(text)?;
    Ok(serde_json::from_value(doc["config"].clone())?)
}

/// One figure-data grid: classifiers as columns, swept s values as rows,
/// mean scores as cells. Error rows leave their cells empty.
pub fn figure_grid(
    rows: &[ReportRow],
    reducer: ReducerMethod,
    objective: Objective,
) -> Option<String> {
    let slice: Vec<&ReportRow> = rows
        .iter()
        .filter(|r| r.reducer == reducer && r.objective == objective)
        .collect();
    if slice.is_empty() {
        return None;
    }

    let classifiers: Vec<ClassifierId> = ClassifierId::ALL
        .into_iter()
        .filter(|c| slice.iter().any(|r| r.classifier == *c))
        .collect();
    let mut s_values: Vec<usize> = slice.iter().map(|r| r.s).collect();
    s_values.sort_unstable();
    s_values.dedup();

    let mut out = String::from("s");
    for c in &classifiers {
        out.push(',');
        out.push_str(c.as_str());
    }
    out.push('\n');
    for &s in &s_values {
        out.push_str(&s.to_string());
        for c in &classifiers {
            out.push(',');
            if let Some(row) = slice.iter().find(|r| r.s == s && r.classifier == *c) {
                if let RowOutcome::Ok(cv) = &row.outcome {
                    out.push_str(&fmt_f64(cv.mean_score));
                }
            }
        }
        out.push('\n');
    }
    Some(out)
}

/// Writes one CSV per (reducer, objective) present in the report into
/// `out_dir`, returning the paths in deterministic order.
pub fn export_figure_data(rows: &[ReportRow], out_dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir).map_err(|source| Error::Io {
        path: out_dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::new();
    for reducer in [ReducerMethod::Anova, ReducerMethod::Pca] {
        for objective in Objective::ALL {
            if let Some(grid) = figure_grid(rows, reducer, objective) {
                let path = out_dir.join(format!("{reducer}_{objective}.csv"));
                fs::write(&path, grid).map_err(|source| Error::Io {
                    path: path.clone(),
                    source,
                })?;
                written.push(path);
            }
        }
    }
    Ok(written)
}

/// Writes every artifact of a finished run into `out_dir`:
/// `report.csv`, `config.json`, `timings.csv` and `figures/*.csv`.
pub fn write_report(report: &EvaluationReport, out_dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir).map_err(|source| Error::Io {
        path: out_dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::new();

    let report_path = out_dir.join("report.csv");
    fs::write(&report_path, report_to_csv(&report.rows)).map_err(|source| Error::Io {
        path: report_path.clone(),
        source,
    })?;
    written.push(report_path);

    let config_path = out_dir.join("config.json");
    fs::write(
        &config_path,
        config_to_json(&report.config, &report.toolkit_version),
    )
    .map_err(|source| Error::Io {
        path: config_path.clone(),
        source,
    })?;
    written.push(config_path);

    let timings_path = out_dir.join("timings.csv");
    fs::write(&timings_path, timings_to_csv(&report.rows)).map_err(|source| Error::Io {
        path: timings_path.clone(),
        source,
    })?;
    written.push(timings_path);

    written.extend(export_figure_data(&report.rows, &out_dir.join("figures"))?);
    Ok(written)
}
