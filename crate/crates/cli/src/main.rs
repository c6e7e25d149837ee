//! `hardness`: generate synthetic difficulty sweeps, score per-instance
//! hardness measures and cross-validated instance hardness, and aggregate
//! sweep reports.
//!
//! Exit codes: 0 on success, 1 when some input files failed, 2 for
//! configuration errors. `HARDNESS_THREADS` caps the worker count.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hardness_cli::commands;
use hardness_cli::{ConfigProblem, Kind, RunConfig};

#[derive(Parser)]
#[command(name = "hardness", version, about = "Per-instance hardness analysis for tabular datasets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic difficulty sweep with a manifest
    Gen {
        /// Task family of the sweep
        #[arg(long, value_enum)]
        kind: Kind,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        /// Instances per dataset
        #[arg(long, default_value_t = 500)]
        n: usize,
        /// Base seed; dataset i uses seed + i
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Overwrite an existing, non-empty output directory
        #[arg(long)]
        force: bool,
    },
    /// Compute hardness-measure profiles for dataset CSVs
    Measure {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        out: PathBuf,
        /// Comma-separated subset of measure columns to emit
        #[arg(long, value_delimiter = ',')]
        measures: Option<Vec<String>>,
        /// Neighborhood size for kDN and the leave-one-out regressor
        #[arg(long, default_value_t = 5)]
        k: usize,
        /// Minimum leaf size of the disjunct-purity tree
        #[arg(long = "min-leaf-dcp", default_value_t = 5)]
        min_leaf_dcp: usize,
        /// Distance quantile for the proximity graph threshold
        #[arg(long = "de-quantile", default_value_t = 0.15)]
        de_quantile: f64,
        /// Histogram bin count for the output-distribution measure
        #[arg(long = "hb-bins", default_value_t = 10)]
        hb_bins: usize,
        /// Target column name or index (default: last column)
        #[arg(long)]
        target: Option<String>,
        /// Dump the feature-elimination trace per regression dataset
        #[arg(long = "dump-cfe-trace")]
        dump_cfe_trace: bool,
        /// Dump the spanning tree edges per dataset
        #[arg(long = "dump-mst")]
        dump_mst: bool,
        /// Input dataset CSVs
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Score instance hardness with a cross-validated learner pool
    Ih {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 10)]
        folds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use only the first N learners of the default pool
        #[arg(long = "pool-size", default_value_t = 5)]
        pool_size: usize,
        /// Target column name or index (default: last column)
        #[arg(long)]
        target: Option<String>,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Aggregate a sweep into summaries, trends, and boxplot SVGs
    Report {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Sweep manifest written by `gen`
        #[arg(long)]
        manifest: PathBuf,
        /// Directory holding the `measure` outputs
        #[arg(long)]
        profiles: PathBuf,
        /// Directory holding the `ih` outputs
        #[arg(long)]
        ih: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn resolved_config(command: Command) -> RunConfig {
    match command {
        Command::Gen { kind, out, n, seed, force } => {
            let mut config = RunConfig::new("gen", kind, out);
            config.n = n;
            config.seed = seed;
            config.force = force;
            config
        }
        Command::Measure {
            kind,
            out,
            measures,
            k,
            min_leaf_dcp,
            de_quantile,
            hb_bins,
            target,
            dump_cfe_trace,
            dump_mst,
            inputs,
        } => {
            let mut config = RunConfig::new("measure", kind, out);
            config.measures = measures;
            config.k = k;
            config.min_leaf_dcp = min_leaf_dcp;
            config.de_quantile = de_quantile;
            config.hb_bins = hb_bins;
            config.target = target;
            config.dump_cfe_trace = dump_cfe_trace;
            config.dump_mst = dump_mst;
            config.inputs = inputs;
            config
        }
        Command::Ih { kind, out, folds, seed, pool_size, target, inputs } => {
            let mut config = RunConfig::new("ih", kind, out);
            config.folds = folds;
            config.seed = seed;
            config.pool_size = pool_size;
            config.target = target;
            config.inputs = inputs;
            config
        }
        Command::Report { kind, manifest, profiles, ih, out } => {
            let mut config = RunConfig::new("report", kind, out);
            config.manifest = Some(manifest);
            config.profiles = Some(profiles);
            config.ih = Some(ih);
            config
        }
    }
}

fn init_thread_pool() {
    if let Ok(value) = std::env::var("HARDNESS_THREADS") {
        match value.parse::<usize>() {
            Ok(threads) if threads >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
            }
            _ => eprintln!("warning: ignoring invalid HARDNESS_THREADS value '{value}'"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_thread_pool();
    let config = resolved_config(cli.command);
    let outcome = match config.command.as_str() {
        "gen" => commands::gen::run(&config),
        "measure" => commands::measure::run(&config),
        "ih" => commands::ih::run(&config),
        "report" => commands::report::run(&config),
        _ => unreachable!("clap restricts the command set"),
    };
    match outcome {
        Ok(0) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<ConfigProblem>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
