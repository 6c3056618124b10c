//! File formats, reports and the command-line driver for `blueforge-core`.

use std::path::PathBuf;

pub mod cli;
pub mod factor;
pub mod format;

pub use cli::{run, Outcome};
pub use factor::CachedFactorizer;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] blueforge_core::Error),
}
