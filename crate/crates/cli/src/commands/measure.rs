//! `measure`: one hardness-profile CSV per input dataset. A failing file is
//! reported and skipped; the sweep keeps going and the exit code flags the
//! partial failure.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::Result;
use rayon::prelude::*;
use serde::Serialize;

use hardness_core::dataset::scale;
use hardness_core::geometry::{build_mst, pairwise_distances};
use hardness_core::hm::reg::cfe_trace;
use hardness_core::hm::{class::classification_profile, reg::regression_profile};
use hardness_core::hm::{CLASSIFICATION_MEASURES, REGRESSION_MEASURES};
use hardness_core::TaskKind;

use crate::commands::{config_error, load_dataset, report_failures};
use crate::config::RunConfig;
use crate::io::{atomic_write, profile_path, stem_of, write_json, write_profile_csv};

#[derive(Serialize)]
struct TraceRoundFile {
    round: usize,
    feature: usize,
    correlation: f64,
    removed: Vec<usize>,
}

#[derive(Serialize)]
struct TraceFile {
    rounds: Vec<TraceRoundFile>,
    survivors: Vec<usize>,
}

fn dump_mst(ds: &hardness_core::Dataset, path: &Path) -> Result<()> {
    let view = scale(ds);
    let mst = build_mst(&pairwise_distances(&view.features))?;
    let mut out = String::from("i,j,weight\n");
    for (i, j, weight) in &mst.edges {
        let _ = writeln!(out, "{i},{j},{weight}");
    }
    atomic_write(path, out.as_bytes())?;
    Ok(())
}

fn validate_measures(config: &RunConfig) -> Result<()> {
    let catalog: &[&str] = match config.kind.to_core() {
        TaskKind::Classification => &CLASSIFICATION_MEASURES,
        TaskKind::Regression => &REGRESSION_MEASURES,
    };
    if let Some(subset) = &config.measures {
        for name in subset {
            if !catalog.contains(&name.as_str()) {
                return config_error(format!(
                    "unknown measure '{name}' for {} data (expected one of {})",
                    config.kind.to_core().as_str(),
                    catalog.join(", ")
                ));
            }
        }
    }
    Ok(())
}

fn process_one(config: &RunConfig, input: &Path) -> Result<Vec<String>> {
    let kind = config.kind.to_core();
    let ds = load_dataset(input, config.target.as_deref(), kind)?;
    let profile = match kind {
        TaskKind::Classification => classification_profile(&ds, &config.class_params())?,
        TaskKind::Regression => regression_profile(&ds, &config.reg_params())?,
    };
    let stem = stem_of(input);
    write_profile_csv(
        &profile_path(&config.out, &stem),
        &profile,
        config.measures.as_deref(),
    )?;
    if config.dump_cfe_trace && kind == TaskKind::Regression {
        let trace = cfe_trace(&ds)?;
        let file = TraceFile {
            rounds: trace
                .rounds
                .iter()
                .enumerate()
                .map(|(idx, round)| TraceRoundFile {
                    round: idx + 1,
                    feature: round.feature,
                    correlation: round.correlation,
                    removed: round.removed.clone(),
                })
                .collect(),
            survivors: trace
                .removal_round
                .iter()
                .enumerate()
                .filter(|(_, r)| r.is_none())
                .map(|(i, _)| i)
                .collect(),
        };
        write_json(&config.out.join(format!("{stem}.cfe_trace.json")), &file)?;
    }
    if config.dump_mst {
        dump_mst(&ds, &config.out.join(format!("{stem}.mst.csv")))?;
    }
    Ok(profile.warnings().to_vec())
}

pub fn run(config: &RunConfig) -> Result<usize> {
    validate_measures(config)?;
    if config.inputs.is_empty() {
        return config_error("measure needs at least one input CSV");
    }
    if config.k == 0 {
        return config_error("--k must be at least 1");
    }
    if config.min_leaf_dcp == 0 {
        return config_error("--min-leaf-dcp must be at least 1");
    }
    if config.hb_bins == 0 {
        return config_error("--hb-bins must be at least 1");
    }
    if !(config.de_quantile > 0.0 && config.de_quantile <= 1.0) {
        return config_error(format!(
            "--de-quantile must lie in (0, 1] (got {})",
            config.de_quantile
        ));
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
    write_json(&config.out.join("measure.config.json"), config)?;
    println!("wrote {written} profiles to {}", config.out.display());
    Ok(report_failures(&failures))
}
