use thiserror::Error;

/// Failure modes shared by every volume routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the formula.
    #[error("domain error: {0}")]
    Domain(String),
    /// The parameters do not describe a geometric object that exists.
    #[error("not realizable: {0}")]
    NotRealizable(String),
    /// Adaptive quadrature ran out of budget before reaching the tolerance.
    #[error(
        "quadrature did not converge: best estimate {best} (error {error_estimate:e}) after {evaluations} evaluations"
    )]
    Convergence {
        best: f64,
        error_estimate: f64,
        evaluations: usize,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn not_realizable(msg: impl Into<String>) -> Error {
    Error::NotRealizable(msg.into())
}
