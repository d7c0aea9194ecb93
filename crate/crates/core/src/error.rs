//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the kinematics and matching computations.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// Parameters outside the modelled regime (E <= m, m <= 0, V0 < 0, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A channel-coefficient or matching denominator fell below tolerance.
    #[error("singular denominator in {context} (|den| = {magnitude:.3e})")]
    SingularDenominator {
        context: &'static str,
        magnitude: f64,
    },
    /// The 4x4 matching system is numerically singular.
    #[error("singular matching system (condition estimate {cond:.3e})")]
    SingularMatrix { cond: f64 },
    /// An operation was called outside its stated precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
}
