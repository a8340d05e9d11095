//! Lexical-structure comparison of two bibliographic corpora: per-document
//! title length, readability and vocabulary richness, group statistics and
//! title co-word networks.

pub mod error;
pub mod ingest;
pub mod metrics;
pub mod report;
pub mod semnet;
pub mod stats;
pub mod textproc;

pub use error::{Error, Result};
pub use ingest::{BibRecord, Corpus};
pub use metrics::LexicalRecord;
pub use report::{run_compare, ComparisonReport, RunConfig};
