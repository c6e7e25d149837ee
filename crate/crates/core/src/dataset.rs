//! Tabular dataset representation, CSV ingestion, and min-max scaling.
//!
//! A [`Dataset`] holds raw feature values plus either categorical labels or
//! continuous responses. Instance identifiers are the 0-based row indices
//! and stay attached to the row for the dataset's lifetime. All measures
//! downstream consume a [`ScaledView`], whose feature columns (and response,
//! when continuous) are mapped to `[0, 1]` so distances and residual
//! thresholds are comparable across datasets.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaskKind {
    Classification,
    Regression,
}

impl TaskKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TaskKind::Classification => "classification",
            TaskKind::Regression => "regression",
        }
    }
}

/// Target column: opaque class labels (indexed by first appearance) or real
/// responses.
#[derive(Debug, Clone)]
pub enum Target {
    Labels {
        /// Distinct class names in first-appearance order.
        names: Vec<String>,
        /// Per-instance class index into `names`.
        ids: Vec<usize>,
    },
    Responses(Vec<f64>),
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub name: String,
    features: Matrix,
    feature_names: Vec<String>,
    target: Target,
    target_name: String,
}

/// How to pick the target column out of a CSV header.
#[derive(Debug, Clone)]
pub enum TargetSpec {
    Name(String),
    Index(usize),
}

impl Dataset {
    pub fn from_parts(
        name: impl Into<String>,
        feature_names: Vec<String>,
        features: Matrix,
        target: Target,
        target_name: impl Into<String>,
    ) -> Result<Self> {
        let n = features.n_rows();
        if feature_names.len() != features.n_cols() {
            return Err(Error::Schema(format!(
                "{} feature names for {} columns",
                feature_names.len(),
                features.n_cols()
            )));
        }
        let target_len = match &target {
            Target::Labels { ids, .. } => ids.len(),
            Target::Responses(r) => r.len(),
        };
        if target_len != n {
            return Err(Error::Schema(format!(
                "target has {target_len} entries for {n} rows"
            )));
        }
        for (i, row) in features.iter_rows().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::Ingestion(format!(
                        "row {}, column '{}': non-finite value",
                        i + 1,
                        feature_names[j]
                    )));
                }
            }
        }
        if let Target::Responses(r) = &target {
            if let Some(i) = r.iter().position(|v| !v.is_finite()) {
                return Err(Error::Ingestion(format!(
                    "row {}, target column: non-finite value",
                    i + 1
                )));
            }
        }
        Ok(Dataset {
            name: name.into(),
            features,
            feature_names,
            target,
            target_name: target_name.into(),
        })
    }

    pub fn n(&self) -> usize {
        self.features.n_rows()
    }

    pub fn m(&self) -> usize {
        self.features.n_cols()
    }

    pub fn kind(&self) -> TaskKind {
        match self.target {
            Target::Labels { .. } => TaskKind::Classification,
            Target::Responses(_) => TaskKind::Regression,
        }
    }

    pub fn features(&self) -> &Matrix {
        &self.features
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn target_name(&self) -> &str {
        &self.target_name
    }

    pub fn target(&self) -> &Target {
        &self.target
    }

    /// Per-instance class indices; `None` for regression data.
    pub fn labels(&self) -> Option<&[usize]> {
        match &self.target {
            Target::Labels { ids, .. } => Some(ids),
            Target::Responses(_) => None,
        }
    }

    pub fn class_names(&self) -> Option<&[String]> {
        match &self.target {
            Target::Labels { names, .. } => Some(names),
            Target::Responses(_) => None,
        }
    }

    pub fn n_classes(&self) -> usize {
        self.class_names().map_or(0, <[String]>::len)
    }

    pub fn class_counts(&self) -> Option<Vec<usize>> {
        let ids = self.labels()?;
        let mut counts = vec![0usize; self.n_classes()];
        for &c in ids {
            counts[c] += 1;
        }
        Some(counts)
    }

    /// Raw continuous responses; `None` for classification data.
    pub fn responses(&self) -> Option<&[f64]> {
        match &self.target {
            Target::Responses(r) => Some(r),
            Target::Labels { .. } => None,
        }
    }

    /// Checks the preconditions shared by every measure computation.
    pub fn validate_for_measures(&self) -> Result<()> {
        if self.n() < 4 {
            return Err(Error::Validation(format!(
                "dataset '{}' has {} rows; measures need at least 4",
                self.name,
                self.n()
            )));
        }
        if self.m() < 1 {
            return Err(Error::Validation("dataset has no feature columns".into()));
        }
        if self.kind() == TaskKind::Classification && self.n_classes() < 2 {
            return Err(Error::Validation(
                "classification measures need at least 2 classes".into(),
            ));
        }
        Ok(())
    }

    /// Permutes rows (and the target) into the given order. `perm[k]` is the
    /// source row placed at position `k`. Used by invariance tests and the
    /// CLI never calls it; identifiers are reassigned to the new positions.
    pub fn permuted(&self, perm: &[usize]) -> Dataset {
        let features = self.features.select_rows(perm);
        let target = match &self.target {
            Target::Labels { names, ids } => Target::Labels {
                names: names.clone(),
                ids: perm.iter().map(|&i| ids[i]).collect(),
            },
            Target::Responses(r) => Target::Responses(perm.iter().map(|&i| r[i]).collect()),
        };
        Dataset {
            name: self.name.clone(),
            features,
            feature_names: self.feature_names.clone(),
            target,
            target_name: self.target_name.clone(),
        }
    }
}

fn resolve_target_column(headers: &[String], spec: &TargetSpec) -> Result<usize> {
    match spec {
        TargetSpec::Name(name) => headers.iter().position(|h| h == name).ok_or_else(|| {
            Error::Schema(format!(
                "target column '{name}' not found in header [{}]",
                headers.join(", ")
            ))
        }),
        TargetSpec::Index(idx) => {
            if *idx < headers.len() {
                Ok(*idx)
            } else {
                Err(Error::Schema(format!(
                    "target column index {idx} out of range for {} columns",
                    headers.len()
                )))
            }
        }
    }
}

/// Loads an RFC-4180-style CSV with a mandatory header row. Every non-target
/// column must parse as a finite real; the target is taken verbatim as class
/// names (classification) or parsed as a finite real (regression).
pub fn load_csv(path: impl AsRef<Path>, target_spec: &TargetSpec, kind: TaskKind) -> Result<Dataset> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)?;
    let headers: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if headers.len() < 2 {
        return Err(Error::Schema(
            "header must contain a target column and at least one feature".into(),
        ));
    }
    let target_col = resolve_target_column(&headers, target_spec)?;
    let feature_names: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != target_col)
        .map(|(_, h)| h.clone())
        .collect();

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut raw_targets: Vec<String> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let row_no = i + 1;
        if record.len() != headers.len() {
            return Err(Error::Ingestion(format!(
                "row {row_no}: {} fields, expected {}",
                record.len(),
                headers.len()
            )));
        }
        let mut row = Vec::with_capacity(feature_names.len());
        for (j, field) in record.iter().enumerate() {
            if j == target_col {
                raw_targets.push(field.to_string());
                continue;
            }
            let value: f64 = field.parse().map_err(|_| {
                Error::Ingestion(format!(
                    "row {row_no}, column '{}': cannot parse '{field}' as a number",
                    headers[j]
                ))
            })?;
            if !value.is_finite() {
                return Err(Error::Ingestion(format!(
                    "row {row_no}, column '{}': non-finite value '{field}'",
                    headers[j]
                )));
            }
            row.push(value);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Ingestion(format!(
            "'{}' has no data rows",
            path.display()
        )));
    }

    let target = match kind {
        TaskKind::Classification => {
            let mut names: Vec<String> = Vec::new();
            let mut ids = Vec::with_capacity(raw_targets.len());
            for label in &raw_targets {
                let id = match names.iter().position(|n| n == label) {
                    Some(id) => id,
                    None => {
                        names.push(label.clone());
                        names.len() - 1
                    }
                };
                ids.push(id);
            }
            if names.len() < 2 {
                return Err(Error::Validation(format!(
                    "classification target '{}' has a single class '{}'",
                    headers[target_col], names[0]
                )));
            }
            Target::Labels { names, ids }
        }
        TaskKind::Regression => {
            let mut responses = Vec::with_capacity(raw_targets.len());
            for (i, field) in raw_targets.iter().enumerate() {
                let value: f64 = field.parse().map_err(|_| {
                    Error::Ingestion(format!(
                        "row {}, column '{}': cannot parse '{field}' as a number",
                        i + 1,
                        headers[target_col]
                    ))
                })?;
                if !value.is_finite() {
                    return Err(Error::Ingestion(format!(
                        "row {}, column '{}': non-finite value '{field}'",
                        i + 1,
                        headers[target_col]
                    )));
                }
                responses.push(value);
            }
            Target::Responses(responses)
        }
    };

    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dataset".to_string());
    Dataset::from_parts(name, feature_names, Matrix::from_rows(rows)?, target, headers[target_col].clone())
}

/// Writes the dataset back out as CSV, features first and the target last.
/// Floats use the shortest representation that round-trips exactly.
pub fn write_csv(ds: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let mut writer = csv::Writer::from_path(path.as_ref())?;
    let mut header: Vec<String> = ds.feature_names.to_vec();
    header.push(ds.target_name.clone());
    writer.write_record(&header)?;
    let mut buf = String::new();
    for i in 0..ds.n() {
        let mut record: Vec<String> = Vec::with_capacity(ds.m() + 1);
        for v in ds.features.row(i) {
            buf.clear();
            write!(buf, "{v}").expect("formatting f64 cannot fail");
            record.push(buf.clone());
        }
        match &ds.target {
            Target::Labels { names, ids } => record.push(names[ids[i]].clone()),
            Target::Responses(r) => record.push(format!("{}", r[i])),
        }
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}

/// Sidecar description of a dataset file: everything a consumer needs to
/// interpret the CSV without re-deriving it.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSidecar {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub kind: TaskKind,
    pub target: String,
    pub class_counts: Option<BTreeMap<String, usize>>,
}

impl DatasetSidecar {
    pub fn describe(ds: &Dataset) -> Self {
        let class_counts = ds.class_counts().map(|counts| {
            ds.class_names()
                .unwrap()
                .iter()
                .cloned()
                .zip(counts)
                .collect()
        });
        DatasetSidecar {
            name: ds.name.clone(),
            n: ds.n(),
            m: ds.m(),
            kind: ds.kind(),
            target: ds.target_name.clone(),
            class_counts,
        }
    }
}

/// Features (and the response, when continuous) mapped per column to `[0, 1]`
/// by `(v - min) / (max - min)`. Constant columns map to all zeros, which
/// also makes the mapping idempotent.
#[derive(Debug, Clone)]
pub struct ScaledView {
    pub features: Matrix,
    /// Scaled responses for regression data; `None` for classification.
    pub responses: Option<Vec<f64>>,
    /// Per-column `(min, max)` of the raw features, kept for reporting.
    pub feature_ranges: Vec<(f64, f64)>,
    pub response_range: Option<(f64, f64)>,
}

/// Min-max scales every column of a matrix; returns the scaled matrix and
/// the per-column raw `(min, max)`.
pub fn scale_matrix(m: &Matrix) -> (Matrix, Vec<(f64, f64)>) {
    let mut out = Matrix::zeros(m.n_rows(), m.n_cols());
    let mut ranges = Vec::with_capacity(m.n_cols());
    for c in 0..m.n_cols() {
        let col = m.column(c);
        let lo = col.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = col.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        ranges.push((lo, hi));
        if hi > lo {
            for (r, v) in col.iter().enumerate() {
                out.set(r, c, (v - lo) / (hi - lo));
            }
        }
        // constant column: stays all zeros
    }
    (out, ranges)
}

fn scale_vector(xs: &[f64]) -> (Vec<f64>, (f64, f64)) {
    let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if hi > lo {
        (xs.iter().map(|v| (v - lo) / (hi - lo)).collect(), (lo, hi))
    } else {
        (vec![0.0; xs.len()], (lo, hi))
    }
}

pub fn scale(ds: &Dataset) -> ScaledView {
    let (features, feature_ranges) = scale_matrix(ds.features());
    let (responses, response_range) = match ds.responses() {
        Some(r) => {
            let (scaled, range) = scale_vector(r);
            (Some(scaled), Some(range))
        }
        None => (None, None),
    };
    ScaledView { features, responses, feature_ranges, response_range }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::io::Write as _;

    fn write_temp(contents: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir();
        let path = dir.join(format!(
            "hardness_core_test_{}_{}.csv",
            std::process::id(),
            contents.len()
        ));
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        path
    }

    #[test]
    fn loads_six_row_classification_csv() {
        let path = write_temp(
            "f0,f1,class\n0,0,c0\n0,1,c0\n1,0,c0\n10,10,c1\n10,11,c1\n11,10,c1\n",
        );
        let ds = load_csv(&path, &TargetSpec::Name("class".into()), TaskKind::Classification)
            .unwrap();
        assert_eq!(ds.n(), 6);
        assert_eq!(ds.m(), 2);
        assert_eq!(ds.n_classes(), 2);
        assert_eq!(ds.class_counts().unwrap(), vec![3, 3]);
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn nan_cell_is_rejected_naming_the_row() {
        let path = write_temp("f0,f1,class\n0,0,a\n0,1,a\nNaN,0,b\n1,1,b\n");
        let err = load_csv(&path, &TargetSpec::Name("class".into()), TaskKind::Classification)
            .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("row 3"), "{msg}");
        assert!(msg.contains("f0"), "{msg}");
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn loads_regression_target_by_name() {
        let path = write_temp("x,y\n0,0\n1,1\n2,2\n3,3\n");
        let ds = load_csv(&path, &TargetSpec::Name("y".into()), TaskKind::Regression).unwrap();
        assert_eq!(ds.n(), 4);
        assert_eq!(ds.responses().unwrap(), &[0.0, 1.0, 2.0, 3.0]);
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn missing_target_column_is_a_schema_error() {
        let path = write_temp("f0,f1,class\n0,0,a\n1,1,b\n");
        let err =
            load_csv(&path, &TargetSpec::Name("label".into()), TaskKind::Classification)
                .unwrap_err();
        assert!(matches!(err, Error::Schema(_)));
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn single_class_target_is_a_validation_error() {
        let path = write_temp("f0,class\n0,a\n1,a\n2,a\n3,a\n");
        let err = load_csv(&path, &TargetSpec::Name("class".into()), TaskKind::Classification)
            .unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn scale_maps_column_to_unit_interval() {
        let m = Matrix::from_rows(vec![vec![0.0], vec![1.0], vec![2.0], vec![3.0]]).unwrap();
        let (scaled, ranges) = scale_matrix(&m);
        assert_eq!(scaled.column(0), vec![0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0]);
        assert_eq!(ranges, vec![(0.0, 3.0)]);
    }

    #[test]
    fn constant_column_scales_to_zeros() {
        let m = Matrix::from_rows(vec![vec![5.0], vec![5.0], vec![5.0], vec![5.0]]).unwrap();
        let (scaled, _) = scale_matrix(&m);
        assert_eq!(scaled.column(0), vec![0.0; 4]);
    }

    #[test]
    fn scaling_is_idempotent() {
        let m = Matrix::from_rows(vec![
            vec![0.0, 5.0],
            vec![0.5, 5.0],
            vec![1.0, 5.0],
        ])
        .unwrap();
        let (once, _) = scale_matrix(&m);
        let (twice, _) = scale_matrix(&once);
        assert_eq!(once, twice);
    }

    #[test]
    fn scale_commutes_with_row_permutation() {
        let ds = fixtures::six_point_two_cluster();
        let perm = vec![3, 0, 5, 2, 4, 1];
        let direct = scale(&ds.permuted(&perm));
        let permuted_after = scale(&ds);
        for (k, &src) in perm.iter().enumerate() {
            assert_eq!(direct.features.row(k), permuted_after.features.row(src));
        }
    }

    #[test]
    fn csv_round_trip_preserves_twelve_significant_digits() {
        let path = write_temp(
            "f0,f1,y\n0.123456789012,9.87654321098e3,1\n1.5,2.25,2\n-3.0,0.001,3\n4.0,5.0,4\n",
        );
        let ds = load_csv(&path, &TargetSpec::Name("y".into()), TaskKind::Regression).unwrap();
        let out = path.with_extension("out.csv");
        write_csv(&ds, &out).unwrap();
        let reloaded = load_csv(&out, &TargetSpec::Name("y".into()), TaskKind::Regression).unwrap();
        for i in 0..ds.n() {
            for j in 0..ds.m() {
                let a = ds.features().get(i, j);
                let b = reloaded.features().get(i, j);
                let scale = a.abs().max(1e-300);
                assert!(
                    ((a - b) / scale).abs() < 1e-12,
                    "value drifted: {a} vs {b}"
                );
            }
        }
        std::fs::remove_file(path).ok();
        std::fs::remove_file(out).ok();
    }

    #[test]
    fn sidecar_counts_classes() {
        let ds = fixtures::six_point_two_cluster();
        let sc = DatasetSidecar::describe(&ds);
        assert_eq!(sc.n, 6);
        assert_eq!(sc.m, 2);
        assert_eq!(sc.kind, TaskKind::Classification);
        let counts = sc.class_counts.unwrap();
        assert_eq!(counts["c0"], 3);
        assert_eq!(counts["c1"], 3);
    }

    #[test]
    fn validate_rejects_tiny_datasets() {
        let m = Matrix::from_rows(vec![vec![0.0], vec![1.0], vec![2.0]]).unwrap();
        let ds = Dataset::from_parts(
            "tiny",
            vec!["f0".into()],
            m,
            Target::Responses(vec![0.0, 1.0, 2.0]),
            "y",
        )
        .unwrap();
        assert!(ds.validate_for_measures().is_err());
    }
}
