//! Command line, file formats and parallel drivers around `qunimodal-core`.

pub mod cache;
pub mod cli;
pub mod envelope;
pub mod error;
pub mod parallel;
pub mod repro;

pub use qunimodal_core as core;
