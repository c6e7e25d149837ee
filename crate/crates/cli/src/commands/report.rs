//! `report`: aggregate a sweep's profiles and hardness tables into
//! five-number summaries, trend statistics, and one boxplot SVG per
//! measure.

use std::fmt::Write as _;
use std::fs;

use anyhow::Result;
use serde::{Deserialize, Serialize};

use hardness_core::stats::{five_num, mean, median, spearman};

use crate::commands::config_error;
use crate::config::RunConfig;
use crate::io::{
    atomic_write, format_sig, ih_csv_path, profile_path, read_manifest, read_numeric_csv,
    write_json, NumericTable,
};
use crate::svg::render_boxplot;

#[derive(Debug, Serialize, Deserialize)]
pub struct MeasureSummary {
    pub measure: String,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DatasetReport {
    pub name: String,
    pub parameter: f64,
    pub measures: Vec<MeasureSummary>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TrendEntry {
    pub measure: String,
    pub spearman: f64,
}

/// Whole-sweep aggregation: per-dataset summaries, the per-measure trend of
/// the median against the sweep parameter, and the pooled per-instance rank
/// correlation of every measure against the hardness score.
#[derive(Debug, Serialize, Deserialize)]
pub struct SweepReport {
    pub kind: String,
    pub datasets: Vec<DatasetReport>,
    pub trend: Vec<TrendEntry>,
    pub ih_correlation: Vec<TrendEntry>,
}

fn summarize(measure: &str, values: &[f64]) -> MeasureSummary {
    let f = five_num(values);
    MeasureSummary {
        measure: measure.to_string(),
        min: f.min,
        q1: f.q1,
        median: f.median,
        q3: f.q3,
        max: f.max,
        mean: mean(values),
    }
}

struct LoadedDataset {
    name: String,
    parameter: f64,
    profile: NumericTable,
    ih: Vec<f64>,
}

pub fn run(config: &RunConfig) -> Result<usize> {
    let Some(manifest_path) = &config.manifest else {
        return config_error("report needs --manifest");
    };
    let profiles_dir = config
        .profiles
        .clone()
        .ok_or_else(|| crate::commands::ConfigProblem("report needs --profiles".into()))?;
    let ih_dir = config
        .ih
        .clone()
        .ok_or_else(|| crate::commands::ConfigProblem("report needs --ih".into()))?;
    let manifest = read_manifest(manifest_path)?;

    let mut loaded = Vec::new();
    for entry in &manifest.datasets {
        let profile_file = profile_path(&profiles_dir, &entry.name);
        if !profile_file.exists() {
            return config_error(format!("missing profile {}", profile_file.display()));
        }
        let ih_file = ih_csv_path(&ih_dir, &entry.name);
        if !ih_file.exists() {
            return config_error(format!("missing hardness table {}", ih_file.display()));
        }
        let profile = read_numeric_csv(&profile_file)?;
        if profile.n_rows() == 0 {
            return config_error(format!("{}: no instances", profile_file.display()));
        }
        let ih_table = read_numeric_csv(&ih_file)?;
        let ih = ih_table
            .column("ih")
            .ok_or_else(|| anyhow::anyhow!("{}: no 'ih' column", ih_file.display()))?
            .to_vec();
        if ih.len() != profile.n_rows() {
            return config_error(format!(
                "{}: {} instances but {} hardness rows",
                entry.name,
                profile.n_rows(),
                ih.len()
            ));
        }
        loaded.push(LoadedDataset {
            name: entry.name.clone(),
            parameter: entry.parameter,
            profile,
            ih,
        });
    }
    if loaded.is_empty() {
        return config_error("manifest lists no datasets");
    }
    fs::create_dir_all(&config.out)?;

    // measure columns, in profile order, shared by all datasets
    let measure_names: Vec<String> = loaded[0]
        .profile
        .header
        .iter()
        .filter(|h| *h != "instance_id")
        .cloned()
        .collect();

    let mut datasets = Vec::new();
    for ds in &loaded {
        let mut measures = Vec::new();
        for name in &measure_names {
            let values = ds
                .profile
                .column(name)
                .ok_or_else(|| anyhow::anyhow!("{}: no '{name}' column", ds.name))?;
            measures.push(summarize(name, values));
        }
        measures.push(summarize("IH", &ds.ih));
        datasets.push(DatasetReport {
            name: ds.name.clone(),
            parameter: ds.parameter,
            measures,
        });
    }

    // trend of the median against the sweep parameter
    let parameters: Vec<f64> = loaded.iter().map(|d| d.parameter).collect();
    let mut trend = Vec::new();
    if loaded.len() >= 2 {
        for name in measure_names.iter().map(String::as_str).chain(["IH"]) {
            let medians: Vec<f64> = loaded
                .iter()
                .map(|d| {
                    if name == "IH" {
                        median(&d.ih)
                    } else {
                        median(d.profile.column(name).expect("validated above"))
                    }
                })
                .collect();
            trend.push(TrendEntry {
                measure: name.to_string(),
                spearman: spearman(&parameters, &medians)?,
            });
        }
    }

    // pooled per-instance correlation of each measure against the hardness
    let pooled_ih: Vec<f64> = loaded.iter().flat_map(|d| d.ih.iter().copied()).collect();
    let mut ih_correlation = Vec::new();
    for name in &measure_names {
        let pooled: Vec<f64> = loaded
            .iter()
            .flat_map(|d| d.profile.column(name).expect("validated above").iter().copied())
            .collect();
        ih_correlation.push(TrendEntry {
            measure: name.clone(),
            spearman: spearman(&pooled, &pooled_ih)?,
        });
    }

    // boxplot per measure plus one for the hardness itself
    let labels: Vec<String> = loaded.iter().map(|d| format!("{}", d.parameter)).collect();
    for name in measure_names.iter().map(String::as_str).chain(["IH"]) {
        let groups: Vec<Vec<f64>> = loaded
            .iter()
            .map(|d| {
                if name == "IH" {
                    d.ih.clone()
                } else {
                    d.profile.column(name).expect("validated above").to_vec()
                }
            })
            .collect();
        let svg = render_boxplot(name, &labels, &groups);
        atomic_write(&config.out.join(format!("boxplot_{name}.svg")), svg.as_bytes())?;
    }

    // summary table
    let mut summary = String::from("dataset,parameter,measure,min,q1,median,q3,max,mean\n");
    for ds in &datasets {
        for m in &ds.measures {
            let _ = writeln!(
                summary,
                "{},{},{},{},{},{},{},{},{}",
                ds.name,
                ds.parameter,
                m.measure,
                format_sig(m.min, 9),
                format_sig(m.q1, 9),
                format_sig(m.median, 9),
                format_sig(m.q3, 9),
                format_sig(m.max, 9),
                format_sig(m.mean, 9),
            );
        }
    }
    atomic_write(&config.out.join("summary.csv"), summary.as_bytes())?;

    let report = SweepReport {
        kind: manifest.kind.clone(),
        datasets,
        trend,
        ih_correlation,
    };
    write_json(&config.out.join("report.json"), &report)?;
    write_json(&config.out.join("report.config.json"), config)?;
    println!(
        "wrote report.json, summary.csv and {} boxplots to {}",
        measure_names.len() + 1,
        config.out.display()
    );
    Ok(0)
}
