//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid architecture: {0}")]
    InvalidArch(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("no head for task {0}")]
    MissingHead(String),

    #[error("non-finite gradient at parameter index {0}")]
    NonFiniteGradient(usize),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("infeasible cohort spec: {0}")]
    InfeasibleCohort(String),

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("empty participant selection for task {0}")]
    EmptySelection(String),

    #[error("missing data: {0}")]
    MissingData(String),

    #[error("codec error: {0}")]
    Codec(String),

    #[error("protocol violation: {0}")]
    Protocol(String),

    #[error("authentication failed: {0}")]
    AuthFailed(String),

    #[error("connection failed after {attempts} attempts: {last}")]
    ConnectFailed { attempts: u32, last: String },

    #[error("round timed out waiting for {0}")]
    RoundTimeout(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
