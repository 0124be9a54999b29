//! Experiment runner for the `winding` binary. Each subcommand is a function
//! from a parameter struct to an [`ExperimentReport`].

pub mod commands;
pub mod report;
pub mod stats;

pub use report::{Check, ExperimentReport};
