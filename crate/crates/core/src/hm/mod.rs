//! Per-instance hardness measures. Every measure is oriented so that larger
//! values mean a harder instance, and all values are finite; everything
//! except LE and S3 lies in `[0, 1]`, while LE and S3 are non-negative.

pub mod class;
pub mod reg;

/// Classification measure names, in catalog (and CSV column) order.
pub const CLASSIFICATION_MEASURES: [&str; 12] = [
    "kDN", "DCP", "TD", "CLD", "CB", "F1", "N1", "N2", "LSC", "LSR", "U", "De",
];

/// Regression measure names, in catalog (and CSV column) order.
pub const REGRESSION_MEASURES: [&str; 8] =
    ["CFE", "LE", "S1", "S2", "S3", "HB", "TD", "De"];

pub const CLASSIFICATION_CATALOG: &str = "classification-v1";
pub const REGRESSION_CATALOG: &str = "regression-v1";

/// Per-instance values for a catalog of named measures.
#[derive(Debug, Clone)]
pub struct HardnessProfile {
    catalog: &'static str,
    columns: Vec<(String, Vec<f64>)>,
    warnings: Vec<String>,
}

impl HardnessProfile {
    pub(crate) fn new(
        catalog: &'static str,
        columns: Vec<(String, Vec<f64>)>,
        warnings: Vec<String>,
    ) -> Self {
        debug_assert!(!columns.is_empty());
        let n = columns[0].1.len();
        debug_assert!(columns.iter().all(|(_, v)| v.len() == n));
        HardnessProfile { catalog, columns, warnings }
    }

    pub fn catalog(&self) -> &'static str {
        self.catalog
    }

    /// Number of instances.
    pub fn n(&self) -> usize {
        self.columns.first().map_or(0, |(_, v)| v.len())
    }

    pub fn measure_names(&self) -> Vec<&str> {
        self.columns.iter().map(|(name, _)| name.as_str()).collect()
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_slice())
    }

    pub fn value(&self, name: &str, i: usize) -> Option<f64> {
        self.column(name).and_then(|v| v.get(i).copied())
    }

    pub fn columns(&self) -> impl Iterator<Item = (&str, &[f64])> {
        self.columns.iter().map(|(n, v)| (n.as_str(), v.as_slice()))
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }
}
