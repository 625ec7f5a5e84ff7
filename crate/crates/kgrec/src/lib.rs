//! File formats, persistence and the command-line pipeline for the
//! `kgrec-core` recommender.
//!
//! The pipeline reads a paper-corpus CSV and two knowledge graphs (master and
//! slave) stored as node/edge CSV pairs, composes target and exclude texts
//! from the graphs, trains a PV-DM model over the candidates and a Naive
//! Bayes sentiment model, and writes a ranked recommendation report.
//! Reports can then be scored against the corpus relevance labels.

pub mod config;
pub mod error;
pub mod io;
pub mod pipeline;
pub mod report;

pub use config::{Overrides, PipelineConfig};
pub use error::{Error, ExitCode, FileError, FileErrorKind};
pub use kgrec_core;
pub use report::RecommendationReport;
