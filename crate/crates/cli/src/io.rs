//! File formats and atomic writes. Outputs carry no timestamps and collect
//! in deterministic order, so a rerun with the same configuration produces
//! byte-identical files.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use hardness_core::HardnessProfile;

/// Formats with the given number of significant digits, in plain positional
/// notation.
pub fn format_sig(v: f64, digits: i32) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exponent = v.abs().log10().floor() as i32;
    let decimals = (digits - 1 - exponent).clamp(0, 17) as usize;
    format!("{v:.decimals$}")
}

/// Writes via a temporary file in the same directory plus a rename, so
/// partially-written outputs never appear under the final name.
pub fn atomic_write(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)
        .with_context(|| format!("creating directory {}", dir.display()))?;
    let file_name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "output".to_string());
    let tmp = dir.join(format!(".tmp-{file_name}"));
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path)
        .with_context(|| format!("renaming {} to {}", tmp.display(), path.display()))?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut json = serde_json::to_string_pretty(value)?;
    json.push('\n');
    atomic_write(path, json.as_bytes())
}

// ---------------------------------------------------------------------------
// sweep manifest

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub parameter: f64,
    pub seed: u64,
    pub path: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    /// Random generator identifier; regeneration needs the same one.
    pub rng: String,
    pub kind: String,
    pub n: usize,
    pub base_seed: u64,
    pub datasets: Vec<ManifestEntry>,
}

pub fn read_manifest(path: &Path) -> Result<Manifest> {
    let contents =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&contents).with_context(|| format!("parsing {}", path.display()))
}

// ---------------------------------------------------------------------------
// dataset sidecar

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SidecarFile {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub kind: String,
    pub target: String,
    pub class_counts: Option<std::collections::BTreeMap<String, usize>>,
}

impl SidecarFile {
    pub fn from_core(sidecar: &hardness_core::DatasetSidecar) -> Self {
        SidecarFile {
            name: sidecar.name.clone(),
            n: sidecar.n,
            m: sidecar.m,
            kind: sidecar.kind.as_str().to_string(),
            target: sidecar.target.clone(),
            class_counts: sidecar.class_counts.clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// profile and hardness tables

/// Writes `instance_id` plus the selected measure columns, values at nine
/// significant digits.
pub fn write_profile_csv(
    path: &Path,
    profile: &HardnessProfile,
    measures: Option<&[String]>,
) -> Result<()> {
    let selected: Vec<&str> = match measures {
        Some(subset) => profile
            .measure_names()
            .into_iter()
            .filter(|name| subset.iter().any(|m| m == name))
            .collect(),
        None => profile.measure_names(),
    };
    let mut out = String::from("instance_id");
    for name in &selected {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for i in 0..profile.n() {
        out.push_str(&i.to_string());
        for name in &selected {
            out.push(',');
            out.push_str(&format_sig(profile.value(name, i).unwrap(), 9));
        }
        out.push('\n');
    }
    atomic_write(path, out.as_bytes())
}

/// A numeric table read back from disk: header names (first column is the
/// instance id) and one `Vec` per column.
#[derive(Debug, Clone)]
pub struct NumericTable {
    pub header: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

impl NumericTable {
    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.header
            .iter()
            .position(|h| h == name)
            .map(|idx| self.columns[idx].as_slice())
    }

    pub fn n_rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }
}

pub fn read_numeric_csv(path: &Path) -> Result<NumericTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .with_context(|| format!("opening {}", path.display()))?;
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); header.len()];
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        for (j, field) in record.iter().enumerate() {
            let value: f64 = field.parse().with_context(|| {
                format!("{}: row {}, column '{}'", path.display(), row + 1, header[j])
            })?;
            columns[j].push(value);
        }
    }
    Ok(NumericTable { header, columns })
}

/// Per-learner out-of-fold scalar predictions next to the hardness column.
pub fn write_ih_csv(
    path: &Path,
    ih: &[f64],
    learner_names: &[String],
    scalar_predictions: &[Vec<f64>],
) -> Result<()> {
    let mut out = String::from("instance_id,ih");
    for name in learner_names {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for i in 0..ih.len() {
        out.push_str(&i.to_string());
        out.push(',');
        out.push_str(&format_sig(ih[i], 9));
        for per_learner in scalar_predictions {
            out.push(',');
            out.push_str(&format_sig(per_learner[i], 9));
        }
        out.push('\n');
    }
    atomic_write(path, out.as_bytes())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IhMetadata {
    pub pool: Vec<String>,
    pub folds: usize,
    pub seed: u64,
    pub gamma: Option<f64>,
    pub warnings: Vec<String>,
}

/// Output path helpers: outputs are named after the input file stem.
pub fn stem_of(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dataset".to_string())
}

pub fn profile_path(out_dir: &Path, stem: &str) -> PathBuf {
    out_dir.join(format!("{stem}.profile.csv"))
}

pub fn ih_csv_path(out_dir: &Path, stem: &str) -> PathBuf {
    out_dir.join(format!("{stem}.ih.csv"))
}

pub fn ih_meta_path(out_dir: &Path, stem: &str) -> PathBuf {
    out_dir.join(format!("{stem}.ih.json"))
}
