//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide error enumeration.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed user input (duplicate indices, non-finite samples, bad files).
    #[error("input error: {0}")]
    Input(String),

    /// A value is not representable in double precision; carries the
    /// base-e growth exponent that triggered the guard.
    #[error("overflow: magnitude exponent {exponent:.3} exceeds the representable range")]
    Overflow { exponent: f64 },

    /// A quadrature or iterative scheme failed to converge to the requested
    /// tolerance; carries the accuracy actually achieved.
    #[error("accuracy error: requested {requested:.3e}, achieved only {achieved:.3e}")]
    Accuracy { requested: f64, achieved: f64 },

    /// An internal cross-check failed, signalling an inconsistency upstream
    /// (e.g. a dispersion-branch bug detected through a realness residue).
    #[error("consistency error: {0}")]
    Consistency(String),

    /// Command-line / configuration errors (exit code 2).
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
