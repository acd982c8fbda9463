//! Batch front end for the `qkernel` library: one subcommand per module and
//! a `figures` command that regenerates every figure as image + CSV.

pub mod args;
pub mod commands;
pub mod figures;
pub mod plot;
pub mod report;

pub use report::{Check, RunReport};
