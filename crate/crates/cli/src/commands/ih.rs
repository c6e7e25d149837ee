//! `ih`: cross-validated instance hardness per input dataset, written as a
//! CSV of per-learner out-of-fold predictions plus a metadata sidecar.

use std::fs;
use std::path::Path;

use anyhow::Result;
use rayon::prelude::*;

use hardness_core::ih::{ih_classification, ih_regression, make_cv_plan};
use hardness_core::models::pool::{default_classification_pool, default_regression_pool};
use hardness_core::TaskKind;

use crate::commands::{config_error, load_dataset, report_failures};
use crate::config::RunConfig;
use crate::io::{ih_csv_path, ih_meta_path, stem_of, write_ih_csv, write_json, IhMetadata};

fn process_one(config: &RunConfig, input: &Path) -> Result<Vec<String>> {
    let kind = config.kind.to_core();
    let ds = load_dataset(input, config.target.as_deref(), kind)?;
    ds.validate_for_measures()?;
    let plan = make_cv_plan(&ds, config.folds, config.seed)?;
    let result = match kind {
        TaskKind::Classification => {
            let mut pool = default_classification_pool();
            pool.truncate(config.pool_size);
            ih_classification(&ds, &pool, &plan)?
        }
        TaskKind::Regression => {
            let mut pool = default_regression_pool();
            pool.truncate(config.pool_size);
            ih_regression(&ds, &pool, &plan)?
        }
    };
    let stem = stem_of(input);
    let scalars = result.scalar_predictions(ds.labels());
    write_ih_csv(
        &ih_csv_path(&config.out, &stem),
        &result.ih,
        &result.learner_names,
        &scalars,
    )?;
    write_json(
        &ih_meta_path(&config.out, &stem),
        &IhMetadata {
            pool: result.learner_names.clone(),
            folds: result.folds,
            seed: result.seed,
            gamma: result.gamma,
            warnings: result.warnings.clone(),
        },
    )?;
    Ok(result.warnings)
}

pub fn run(config: &RunConfig) -> Result<usize> {
    if config.inputs.is_empty() {
        return config_error("ih needs at least one input CSV");
    }
    if config.pool_size == 0 || config.pool_size > 5 {
        return config_error(format!(
            "pool size must lie in 1..=5 (got {})",
            config.pool_size
        ));
    }
    if config.folds < 2 {
        return config_error("fold count must be at least 2");
    }
    fs::create_dir_all(&config.out)?;

    let results: Vec<(String, Result<Vec<String>>)> = config
        .inputs
        .par_iter()
        .map(|input| (input.display().to_string(), process_one(config, input)))
        .collect();

    let mut failures = Vec::new();
    let mut written = 0;
    for (path, result) in results {
        match result {
            Ok(warnings) => {
                written += 1;
                for warning in warnings {
                    eprintln!("warning: {path}: {warning}");
                }
            }
            Err(err) => failures.push((path, format!("{err:#}"))),
        }
    }
    write_json(&config.out.join("ih.config.json"), config)?;
    println!("wrote {written} hardness tables to {}", config.out.display());
    Ok(report_failures(&failures))
}
