//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by cover geometry, kernel evaluation and quadrature.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A projection landed on a principal-branch cut; use path lifting instead.
    #[error("branch cut: {0}")]
    BranchCut(String),

    /// A path came within the exclusion margin of a puncture (z = 0 or z = 1).
    #[error("puncture: {0}")]
    Puncture(String),

    /// Path lifting exhausted its refinement budget.
    #[error("refinement budget exceeded: {0}")]
    Refinement(String),

    /// Adaptive quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    /// Argument within the exclusion margin of the dilogarithm cut [1, inf).
    #[error("on the cut [1, inf): {0}")]
    Cut(String),

    /// Malformed textual input (JSON or CLI argument).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
