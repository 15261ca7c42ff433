//! Error type shared by all analysis modules.

use thiserror::Error;

/// Errors reported by curve construction, transforms and bound assembly.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-contract input (bad resolution, empty grid, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Input does not describe a simple closed curve.
    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    /// Curve is numerically degenerate (near self-touching samples).
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),

    /// Evaluation point outside the closed unit disk.
    #[error("domain error: {0}")]
    Domain(String),

    /// An operation's mathematical precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Requested evaluation exceeds the constructed range of a majorant.
    #[error("range error: {0}")]
    Range(String),

    /// The Dini integral diverges; no Lipschitz certificate exists.
    #[error("certificate unavailable: {0}")]
    CertificateUnavailable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
