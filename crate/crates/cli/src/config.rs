//! Resolved run configuration. Every command serializes its full
//! configuration (defaults included) next to its outputs, so a run can be
//! reproduced from the output directory alone.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Classification,
    Regression,
}

impl Kind {
    pub fn to_core(self) -> hardness_core::TaskKind {
        match self {
            Kind::Classification => hardness_core::TaskKind::Classification,
            Kind::Regression => hardness_core::TaskKind::Regression,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub kind: Kind,
    pub out: PathBuf,
    pub inputs: Vec<PathBuf>,
    pub manifest: Option<PathBuf>,
    pub profiles: Option<PathBuf>,
    pub ih: Option<PathBuf>,
    pub n: usize,
    pub seed: u64,
    pub folds: usize,
    pub pool_size: usize,
    /// Subset of measure columns to emit; `None` means the full catalog.
    pub measures: Option<Vec<String>>,
    pub hb_bins: usize,
    pub de_quantile: f64,
    pub k: usize,
    pub min_leaf_dcp: usize,
    /// Target column name or index; `None` selects the last column.
    pub target: Option<String>,
    pub force: bool,
    pub dump_cfe_trace: bool,
    pub dump_mst: bool,
}

impl RunConfig {
    /// A configuration with every knob at its documented default.
    pub fn new(command: &str, kind: Kind, out: PathBuf) -> Self {
        RunConfig {
            command: command.to_string(),
            kind,
            out,
            inputs: Vec::new(),
            manifest: None,
            profiles: None,
            ih: None,
            n: 500,
            seed: 0,
            folds: 10,
            pool_size: 5,
            measures: None,
            hb_bins: 10,
            de_quantile: 0.15,
            k: 5,
            min_leaf_dcp: 5,
            target: None,
            force: false,
            dump_cfe_trace: false,
            dump_mst: false,
        }
    }

    pub fn class_params(&self) -> hardness_core::hm::class::ClassParams {
        hardness_core::hm::class::ClassParams {
            k: self.k,
            dcp_min_leaf: self.min_leaf_dcp,
            de_quantile: self.de_quantile,
        }
    }

    pub fn reg_params(&self) -> hardness_core::hm::reg::RegParams {
        hardness_core::hm::reg::RegParams {
            k: self.k,
            hb_bins: self.hb_bins,
            de_quantile: self.de_quantile,
            ..Default::default()
        }
    }
}
