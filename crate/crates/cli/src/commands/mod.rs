//! Command implementations. Each returns the number of per-file failures;
//! configuration problems surface as [`ConfigProblem`] and map to a
//! distinct exit code.

pub mod gen;
pub mod ih;
pub mod measure;
pub mod report;

use std::fmt;
use std::path::Path;

use anyhow::{Context, Result};

use hardness_core::dataset::{load_csv, Dataset, TargetSpec, TaskKind};

/// A problem with the requested configuration, as opposed to a failure
/// while processing files.
#[derive(Debug)]
pub struct ConfigProblem(pub String);

impl fmt::Display for ConfigProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigProblem {}

pub fn config_error<T>(message: impl Into<String>) -> Result<T> {
    Err(ConfigProblem(message.into()).into())
}

/// Resolves the target column: an explicit name, an explicit index, or the
/// last header column when unspecified.
pub fn resolve_target(path: &Path, target: Option<&str>) -> Result<TargetSpec> {
    match target {
        Some(t) => Ok(match t.parse::<usize>() {
            Ok(idx) => TargetSpec::Index(idx),
            Err(_) => TargetSpec::Name(t.to_string()),
        }),
        None => {
            let mut reader = csv::ReaderBuilder::new()
                .has_headers(true)
                .from_path(path)
                .with_context(|| format!("opening {}", path.display()))?;
            let headers = reader.headers()?;
            let last = headers
                .iter()
                .next_back()
                .ok_or_else(|| anyhow::anyhow!("{}: empty header", path.display()))?;
            Ok(TargetSpec::Name(last.to_string()))
        }
    }
}

pub fn load_dataset(path: &Path, target: Option<&str>, kind: TaskKind) -> Result<Dataset> {
    let spec = resolve_target(path, target)?;
    Ok(load_csv(path, &spec, kind)?)
}

/// Prints collected per-file errors and returns how many there were.
pub fn report_failures(failures: &[(String, String)]) -> usize {
    for (path, message) in failures {
        eprintln!("error: {path}: {message}");
    }
    failures.len()
}
