use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("decode error in {path}: {message}")]
    Decode { path: PathBuf, message: String },

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error(
        "bradley-terry fit failed: comparison graph is disconnected, components {components:?}"
    )]
    Disconnected { components: Vec<Vec<usize>> },

    #[error("bradley-terry fit did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("undefined correlation: {0}")]
    UndefinedCorrelation(String),

    #[error("alignment error: missing items {missing:?}")]
    Alignment { missing: Vec<String> },

    #[error("manifest error: {0}")]
    Manifest(String),

    #[error("frame set mismatch: {0}")]
    FrameSet(String),

    #[error("csv error in {path}: {message}")]
    Csv { path: PathBuf, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn geometry(msg: impl Into<String>) -> Self {
        Error::Geometry(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
