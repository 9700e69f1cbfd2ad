//! Experiment runner for the open KPZ verification suite: config
//! ingestion, subcommand dispatch, artifact persistence, and the
//! reproducibility manifest.

pub mod commands;
pub mod config;
pub mod manifest;
