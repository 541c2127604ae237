use std::path::PathBuf;

use crate::objects::QuadKind;

/// Errors raised by constructions, searches, file loading and the pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid entry {value:?} at position {position}")]
    InvalidEntry { position: usize, value: char },

    #[error("matrix is not square: {rows} rows, row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },

    #[error("malformed formal entry {0:?}")]
    MalformedEntry(String),

    #[error("order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("composition not implemented for {0:?} sequences of this length")]
    NotImplementedForKind(QuadKind),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("construction failed verification: {0}")]
    ConstructionFailedVerification(String),

    #[error("no BHW array data for h = {0}")]
    MissingBhwData(usize),

    #[error("no constructive witness for {0}")]
    NoConstructiveWitness(String),

    #[error("bound exceeded: {what} = {value} > {limit}")]
    BoundExceeded { what: &'static str, value: usize, limit: usize },

    #[error("search budget exceeded after {nodes} nodes (estimated search space 2^{bits})")]
    BudgetExceeded { nodes: u64, bits: usize },

    #[error("missing data file {0}")]
    MissingData(PathBuf),

    #[error("data mismatch: {0}")]
    DataMismatch(String),

    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
