//! `gen`: write one synthetic sweep to disk — dataset CSVs, per-dataset
//! sidecars, and a manifest that records every seed.

use std::fs;

use anyhow::Result;

use hardness_core::dataset::{write_csv, DatasetSidecar};
use hardness_core::rng::GENERATOR_NAME;
use hardness_core::synth::{gen_sweep, SweepSpec};
use hardness_core::TaskKind;

use crate::commands::config_error;
use crate::config::RunConfig;
use crate::io::{write_json, Manifest, ManifestEntry, SidecarFile};

pub fn run(config: &RunConfig) -> Result<usize> {
    let out = &config.out;
    if out.exists() {
        let occupied = fs::read_dir(out)?.next().is_some();
        if occupied && !config.force {
            return config_error(format!(
                "output directory {} already has contents; pass --force to overwrite",
                out.display()
            ));
        }
    }
    fs::create_dir_all(out)?;

    let kind = config.kind.to_core();
    let spec = match kind {
        TaskKind::Classification => SweepSpec {
            n: config.n,
            ..SweepSpec::default_classification(config.seed)
        },
        TaskKind::Regression => SweepSpec {
            n: config.n,
            ..SweepSpec::default_regression(config.seed)
        },
    };
    if let Err(err) = spec.validate() {
        return config_error(err.to_string());
    }
    let datasets = gen_sweep(&spec)?;

    let mut entries = Vec::with_capacity(datasets.len());
    for (idx, ds) in datasets.iter().enumerate() {
        let file_name = format!("{}.csv", ds.name);
        write_csv(ds, out.join(&file_name))?;
        write_json(
            &out.join(format!("{}.meta.json", ds.name)),
            &SidecarFile::from_core(&DatasetSidecar::describe(ds)),
        )?;
        entries.push(ManifestEntry {
            name: ds.name.clone(),
            parameter: spec.params[idx],
            seed: spec.base_seed + idx as u64,
            path: file_name,
        });
    }
    let manifest = Manifest {
        rng: GENERATOR_NAME.to_string(),
        kind: kind.as_str().to_string(),
        n: spec.n,
        base_seed: spec.base_seed,
        datasets: entries,
    };
    write_json(&out.join("manifest.json"), &manifest)?;
    write_json(&out.join("gen.config.json"), config)?;
    println!(
        "wrote {} datasets and manifest.json to {}",
        datasets.len(),
        out.display()
    );
    Ok(0)
}
