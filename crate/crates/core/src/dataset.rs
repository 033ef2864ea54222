//! Tabular datasets with binary labels: CSV loading, z-score
//! standardization and stratified fold assignment.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::Write;
use std::path::Path;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rng::RngStream;

/// Feature matrix (n samples x d features) with {0,1} labels.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    features: Matrix,
    labels: Vec<u8>,
    feature_names: Vec<String>,
}

impl Dataset {
    /// Validates shape, label values, finiteness and name uniqueness.
    pub fn new(features: Matrix, labels: Vec<u8>, feature_names: Vec<String>) -> Result<Dataset> {
        let n = features.rows();
        let d = features.cols();
        if n < 2 {
            return Err(Error::InvalidData(format!("need at least 2 samples, got {n}")));
        }
        if d < 1 {
            return Err(Error::InvalidData("need at least 1 feature".into()));
        }
        if labels.len() != n {
            return Err(Error::InvalidData(format!(
                "{} labels for {} samples",
                labels.len(),
                n
            )));
        }
        if feature_names.len() != d {
            return Err(Error::InvalidData(format!(
                "{} feature names for {} features",
                feature_names.len(),
                d
            )));
        }
        if let Some(bad) = labels.iter().find(|&&l| l > 1) {
            return Err(Error::InvalidData(format!("label {bad} outside {{0,1}}")));
        }
        if !labels.contains(&0) || !labels.contains(&1) {
            return Err(Error::SingleClass);
        }
        if features.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidData("non-finite feature value".into()));
        }
        let unique: BTreeSet<&String> = feature_names.iter().collect();
        if unique.len() != feature_names.len() {
            return Err(Error::InvalidData("duplicate feature names".into()));
        }
        Ok(Dataset {
            features,
            labels,
            feature_names,
        })
    }

    pub fn n(&self) -> usize {
        self.features.rows()
    }

    pub fn d(&self) -> usize {
        self.features.cols()
    }

    pub fn features(&self) -> &Matrix {
        &self.features
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    /// Samples per class, indexed by label.
    pub fn class_counts(&self) -> [usize; 2] {
        let ones = self.labels.iter().filter(|&&l| l == 1).count();
        [self.labels.len() - ones, ones]
    }

    /// Row subset in the given order, keeping labels aligned.
    pub fn subset(&self, indices: &[usize]) -> (Matrix, Vec<u8>) {
        let x = self.features.select_rows(indices);
        let y = indices.iter().map(|&i| self.labels[i]).collect();
        (x, y)
    }
}

/// Loads a comma-separated file with a header row. The named label column
/// must hold exactly two distinct values; they map to {0,1} in
/// lexicographic order. All other columns are parsed as features.
pub fn load_csv(path: &Path, label_column: &str) -> Result<Dataset> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(file);

    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| Error::Csv {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?
        .iter()
        .map(|h| h.to_string())
        .collect();

    let label_idx = headers
        .iter()
        .position(|h| h == label_column)
        .ok_or_else(|| Error::Csv {
            path: path.to_path_buf(),
            message: format!("label column '{label_column}' not found in header"),
        })?;
    let feature_names: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != label_idx)
        .map(|(_, h)| h.clone())
        .collect();

    let mut raw_labels: Vec<String> = Vec::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (rec_idx, record) in reader.records().enumerate() {
        // Header is line 1; data starts at line 2.
        let line = rec_idx + 2;
        let record = record.map_err(|e| Error::Csv {
            path: path.to_path_buf(),
            message: format!("line {line}: {e}"),
        })?;
        if record.len() != headers.len() {
            return Err(Error::Csv {
                path: path.to_path_buf(),
                message: format!(
                    "line {line}: {} fields, expected {}",
                    record.len(),
                    headers.len()
                ),
            });
        }
        let mut row = Vec::with_capacity(feature_names.len());
        for (col, value) in record.iter().enumerate() {
            if col == label_idx {
                raw_labels.push(value.to_string());
                continue;
            }
            let column = headers[col].clone();
            let parsed: f64 = value.trim().parse().map_err(|_| Error::BadCell {
                line,
                column: column.clone(),
                value: value.to_string(),
            })?;
            if !parsed.is_finite() {
                return Err(Error::NonFinite {
                    line,
                    column,
                    value: value.to_string(),
                });
            }
            row.push(parsed);
        }
        rows.push(row);
    }

    let distinct: BTreeSet<&String> = raw_labels.iter().collect();
    if distinct.len() != 2 {
        return Err(Error::LabelCardinality {
            column: label_column.to_string(),
            found: distinct.len(),
        });
    }
    let mut ordered: Vec<&String> = distinct.into_iter().collect();
    ordered.sort();
    let positive = ordered[1].clone();
    let labels: Vec<u8> = raw_labels
        .iter()
        .map(|l| u8::from(*l == positive))
        .collect();

    Dataset::new(Matrix::from_rows(&rows)?, labels, feature_names)
}

/// Writes a dataset as CSV with a trailing `label` column holding 0/1.
/// Floats use the shortest representation that round-trips, so a
/// write/load cycle reproduces the dataset exactly.
pub fn write_csv(dataset: &Dataset, path: &Path) -> Result<()> {
    let mut out = String::new();
    for name in dataset.feature_names() {
        out.push_str(name);
        out.push(',');
    }
    out.push_str("label\n");
    for i in 0..dataset.n() {
        for v in dataset.features().row(i) {
            out.push_str(&format!("{v:?},"));
        }
        out.push_str(&format!("{}\n", dataset.labels()[i]));
    }
    let mut file = File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    file.write_all(out.as_bytes()).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Per-column z-score transform fitted on training rows only.
///
/// Standard deviations are population ones (divide by n); zero-variance
/// columns get a divisor of 1 so the transform degenerates to centering.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    means: Vec<f64>,
    std_devs: Vec<f64>,
}

impl Standardizer {
    pub fn fit(x: &Matrix) -> Result<Standardizer> {
        if x.rows() < 2 {
            return Err(Error::InvalidData(format!(
                "standardizer needs at least 2 rows, got {}",
                x.rows()
            )));
        }
        let means = x.column_means();
        let n = x.rows() as f64;
        let mut variances = vec![0.0; x.cols()];
        for i in 0..x.rows() {
            for (j, &v) in x.row(i).iter().enumerate() {
                let centered = v - means[j];
                variances[j] += centered * centered;
            }
        }
        let std_devs = variances
            .iter()
            .map(|&ss| {
                let sd = (ss / n).sqrt();
                if sd > 0.0 {
                    sd
                } else {
                    1.0
                }
            })
            .collect();
        Ok(Standardizer { means, std_devs })
    }

    pub fn transform(&self, x: &Matrix) -> Result<Matrix> {
        if x.cols() != self.means.len() {
            return Err(Error::ColumnMismatch {
                expected: self.means.len(),
                got: x.cols(),
            });
        }
        let mut out = x.clone();
        for i in 0..out.rows() {
            let row = out.row_mut(i);
            for (j, v) in row.iter_mut().enumerate() {
                *v = (*v - self.means[j]) / self.std_devs[j];
            }
        }
        Ok(out)
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn std_devs(&self) -> &[f64] {
        &self.std_devs
    }
}

/// Deterministic stratified partition of sample indices into folds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoldPlan {
    assignments: Vec<usize>,
    n_folds: usize,
    seed: u64,
}

impl FoldPlan {
    pub fn n_folds(&self) -> usize {
        self.n_folds
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn assignments(&self) -> &[usize] {
        &self.assignments
    }

    pub fn test_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.assignments.len())
            .filter(|&i| self.assignments[i] == fold)
            .collect()
    }

    pub fn train_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.assignments.len())
            .filter(|&i| self.assignments[i] != fold)
            .collect()
    }
}

/// Stratified k-fold assignment. Within each class, indices are shuffled
/// by a stream derived from `seed`, then dealt so that per-class counts
/// per fold differ by at most one; remainder chunks go to the currently
/// smallest folds so total fold sizes also differ by at most one.
pub fn make_folds(labels: &[u8], n_folds: usize, seed: u64) -> Result<FoldPlan> {
    if n_folds < 2 {
        return Err(Error::InvalidParam(format!(
            "need at least 2 folds, got {n_folds}"
        )));
    }
    for class in [0u8, 1u8] {
        let count = labels.iter().filter(|&&l| l == class).count();
        if count < n_folds {
            return Err(Error::ClassTooSmall {
                class,
                count,
                min: n_folds,
            });
        }
    }

    let mut assignments = vec![0usize; labels.len()];
    let mut fold_totals = vec![0usize; n_folds];
    let stream = RngStream::new(seed, "folds");

    for class in [0u8, 1u8] {
        let mut members: Vec<usize> = (0..labels.len())
            .filter(|&i| labels[i] == class)
            .collect();
        let mut rng = stream.fork(&format!("class{class}")).rng();
        members.shuffle(&mut rng);

        let base = members.len() / n_folds;
        let remainder = members.len() % n_folds;

        // Give the +1 chunks to the folds that are currently smallest,
        // breaking ties by fold index.
        let mut order: Vec<usize> = (0..n_folds).collect();
        order.sort_by_key(|&f| (fold_totals[f], f));
        let mut sizes = vec![base; n_folds];
        for &f in order.iter().take(remainder) {
            sizes[f] += 1;
        }

        let mut cursor = 0;
        for (fold, &size) in sizes.iter().enumerate() {
            for &i in &members[cursor..cursor + size] {
                assignments[i] = fold;
            }
            fold_totals[fold] += size;
            cursor += size;
        }
    }

    Ok(FoldPlan {
        assignments,
        n_folds,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::io::Write as _;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f.flush().unwrap();
        f
    }

    #[test]
    fn load_csv_maps_labels_lexicographically() {
        let f = write_temp("a,b,y\n1.0,2.0,neg\n3.0,4.0,pos\n5.0,6.0,neg\n");
        let ds = load_csv(f.path(), "y").unwrap();
        assert_eq!(ds.n(), 3);
        assert_eq!(ds.d(), 2);
        assert_eq!(ds.labels(), &[0, 1, 0]);
        assert_eq!(ds.feature_names(), &["a".to_string(), "b".to_string()]);
        assert_eq!(ds.features().row(1), &[3.0, 4.0]);
    }

    #[test]
    fn load_csv_rejects_nan_cell_with_location() {
        let f = write_temp("a,b,y\n1.0,2.0,neg\n3.0,NaN,pos\n");
        let err = load_csv(f.path(), "y").unwrap_err();
        match err {
            Error::NonFinite { line, column, .. } => {
                assert_eq!(line, 3);
                assert_eq!(column, "b");
            }
            other => panic!("expected NonFinite, got {other:?}"),
        }
    }

    #[test]
    fn load_csv_reports_unparseable_cell() {
        let f = write_temp("a,b,y\n1.0,oops,neg\n3.0,4.0,pos\n");
        let err = load_csv(f.path(), "y").unwrap_err();
        match err {
            Error::BadCell { line, column, value } => {
                assert_eq!(line, 2);
                assert_eq!(column, "b");
                assert_eq!(value, "oops");
            }
            other => panic!("expected BadCell, got {other:?}"),
        }
    }

    #[test]
    fn load_csv_rejects_wrong_label_cardinality() {
        let three = write_temp("a,y\n1.0,x\n2.0,y\n3.0,z\n");
        assert!(matches!(
            load_csv(three.path(), "y"),
            Err(Error::LabelCardinality { found: 3, .. })
        ));
        let one = write_temp("a,y\n1.0,x\n2.0,x\n");
        assert!(matches!(
            load_csv(one.path(), "y"),
            Err(Error::LabelCardinality { found: 1, .. })
        ));
    }

    #[test]
    fn load_csv_missing_file() {
        let err = load_csv(Path::new("/nonexistent/nope.csv"), "y").unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    #[test]
    fn csv_roundtrip_is_exact() {
        let ds = Dataset::new(
            Matrix::from_rows(&[vec![0.1, -1.5e-7], vec![2.0, 3.25], vec![1.0 / 3.0, 7.0]]).unwrap(),
            vec![0, 1, 0],
            vec!["f0".into(), "f1".into()],
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ds.csv");
        write_csv(&ds, &path).unwrap();
        let back = load_csv(&path, "label").unwrap();
        assert_eq!(back, ds);
    }

    #[test]
    fn standardizer_basic_columns() {
        let x = Matrix::from_rows(&[vec![1.0, 5.0], vec![3.0, 5.0]]).unwrap();
        let s = Standardizer::fit(&x).unwrap();
        assert_eq!(s.means(), &[2.0, 5.0]);
        assert_eq!(s.std_devs(), &[1.0, 1.0]); // population std; constant column maps to 1
    }

    #[test]
    fn standardizer_is_idempotent_on_normalized_input() {
        let x = Matrix::from_rows(&[vec![1.0], vec![2.0], vec![6.0], vec![-3.0]]).unwrap();
        let first = Standardizer::fit(&x).unwrap().transform(&x).unwrap();
        let second = Standardizer::fit(&first).unwrap();
        assert_relative_eq!(second.means()[0], 0.0, epsilon = 1e-12);
        assert_relative_eq!(second.std_devs()[0], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn standardizer_roundtrip_property() {
        let mut rng = RngStream::new(11, "std-test").rng();
        use rand::Rng;
        let x = Matrix::from_rows(
            &(0..25)
                .map(|_| (0..4).map(|_| rng.random_range(-10.0..10.0)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let z = Standardizer::fit(&x).unwrap().transform(&x).unwrap();
        let check = Standardizer::fit(&z).unwrap();
        for j in 0..4 {
            assert!(check.means()[j].abs() <= 1e-10);
            assert!((check.std_devs()[j] - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn folds_are_balanced_at_150() {
        let labels: Vec<u8> = (0..150).map(|i| (i % 2) as u8).collect();
        let plan = make_folds(&labels, 5, 42).unwrap();
        for fold in 0..5 {
            assert_eq!(plan.test_indices(fold).len(), 30);
        }
    }

    #[test]
    fn folds_stratify_tiny_balanced_input() {
        let labels = [0u8, 0, 0, 0, 0, 1, 1, 1, 1, 1];
        let plan = make_folds(&labels, 5, 7).unwrap();
        for fold in 0..5 {
            let test = plan.test_indices(fold);
            assert_eq!(test.len(), 2);
            let ones = test.iter().filter(|&&i| labels[i] == 1).count();
            assert_eq!(ones, 1);
        }
    }

    #[test]
    fn folds_deterministic_for_equal_seeds() {
        let labels: Vec<u8> = (0..37).map(|i| u8::from(i % 3 == 0)).collect();
        let a = make_folds(&labels, 5, 99).unwrap();
        let b = make_folds(&labels, 5, 99).unwrap();
        assert_eq!(a, b);
        let c = make_folds(&labels, 5, 100).unwrap();
        assert_ne!(a.assignments(), c.assignments());
    }

    #[test]
    fn folds_reject_small_class() {
        let labels = [0u8, 0, 0, 0, 0, 0, 1, 1, 1, 1];
        assert!(matches!(
            make_folds(&labels, 5, 1),
            Err(Error::ClassTooSmall { class: 1, count: 4, min: 5 })
        ));
    }

    proptest! {
        #[test]
        fn fold_partition_and_stratification(
            n0 in 5usize..40,
            n1 in 5usize..40,
            seed in 0u64..1000,
        ) {
            let mut labels = vec![0u8; n0];
            labels.extend(vec![1u8; n1]);
            let plan = make_folds(&labels, 5, seed).unwrap();

            // Partition: union of folds is everything, pairwise disjoint.
            let mut seen = vec![0usize; labels.len()];
            for fold in 0..5 {
                for i in plan.test_indices(fold) {
                    seen[i] += 1;
                }
            }
            prop_assert!(seen.iter().all(|&c| c == 1));

            // Sizes and per-class counts differ by at most 1.
            let sizes: Vec<usize> = (0..5).map(|f| plan.test_indices(f).len()).collect();
            prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
            for class in [0u8, 1u8] {
                let per_fold: Vec<usize> = (0..5)
                    .map(|f| plan.test_indices(f).iter().filter(|&&i| labels[i] == class).count())
                    .collect();
                prop_assert!(per_fold.iter().max().unwrap() - per_fold.iter().min().unwrap() <= 1);
            }
        }
    }
}
