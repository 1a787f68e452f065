use thiserror::Error;

use crate::lattice::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("{0}")]
    EmptySet(String),

    #[error("{0}")]
    InvalidInput(String),

    /// A checked property failed; `witness` is a vertex exhibiting the failure.
    #[error("{check} failed: {detail}{}", witness_suffix(.witness))]
    Assertion {
        check: String,
        detail: String,
        witness: Option<Vertex>,
    },

    #[error("search window of radius {radius} is too small: {detail}")]
    WindowOverflow { radius: i32, detail: String },

    #[error("(d={d}, n={n}) is outside the exhaustive envelope; {hint}")]
    Envelope { d: usize, n: usize, hint: String },

    #[error("cache conflict for {key}: stored {stored}, derived {derived}")]
    CacheConflict {
        key: String,
        stored: u64,
        derived: u64,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn witness_suffix(w: &Option<Vertex>) -> String {
    match w {
        Some(v) => format!(" (witness {v})"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn assertion(
        check: &str,
        detail: impl Into<String>,
        witness: Option<Vertex>,
    ) -> Self {
        Error::Assertion {
            check: check.to_string(),
            detail: detail.into(),
            witness,
        }
    }

    pub fn witness(&self) -> Option<&Vertex> {
        match self {
            Error::Assertion { witness, .. } => witness.as_ref(),
            _ => None,
        }
    }
}
