//! Experiment runner behind the `kernstab` binary: argument resolution, the experiments,
//! CSV tables and SVG plots.

pub mod config;
pub mod experiments;
pub mod report;
pub mod svg;

pub use config::{Cli, Command, CommandKind, CommonArgs, ExperimentConfig, Layout, UsageError};
pub use experiments::{run, Outcome};
pub use report::{Summary, Table};
