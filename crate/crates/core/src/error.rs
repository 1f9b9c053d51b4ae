//! Crate-wide error type.

use std::path::PathBuf;

/// Errors produced by glyphflow operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("degenerate boundary band: {0}")]
    DegenerateBand(String),

    #[error("annotation error: {0}")]
    Annotation(String),

    #[error("placement failed: {0}")]
    Placement(String),

    #[error("layout parse error at line {line}, column {column}: {message}")]
    LayoutParse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown token {token} not present in the vocabulary")]
    UnknownToken { token: String },

    #[error("layout constraint violated: {0}")]
    LayoutConstraint(String),

    #[error("training diverged at step {step}: {detail}")]
    Divergence { step: usize, detail: String },

    #[error("checkpoint format error: {0}")]
    Checkpoint(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("image error on {path}: {source}")]
    Image {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },

    #[error("missing files: {}", .0.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(", "))]
    MissingFiles(Vec<PathBuf>),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
