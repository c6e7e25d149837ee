//! Library side of the `hardness` command-line tool: resolved run
//! configurations, file formats, SVG rendering, and the command
//! implementations the binary dispatches to.

pub mod commands;
pub mod config;
pub mod io;
pub mod svg;

pub use commands::ConfigProblem;
pub use config::{Kind, RunConfig};
