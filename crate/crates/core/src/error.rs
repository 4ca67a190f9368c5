use thiserror::Error;

/// Errors raised while building or certifying the graph exteriors.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GexError {
    /// An argument outside the range where the family is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// The face pairing could not be assembled into a triangulation.
    #[error("construction error: {0}")]
    Construction(String),
    /// A structural or numerical invariant failed.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    /// The Euclidean developing of the cusp did not close up.
    #[error("developing error: {0}")]
    Developing(String),
    /// Adaptive quadrature hit its subdivision budget before reaching the tolerance.
    #[error(
        "quadrature did not converge: estimate {estimate} with error bound {error_bound} \
         after {subdivisions} subdivisions"
    )]
    Convergence {
        estimate: f64,
        error_bound: f64,
        subdivisions: usize,
    },
}

pub type Result<T, E = GexError> = std::result::Result<T, E>;

pub(crate) fn invariant(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(GexError::InvariantViolation(msg()))
    }
}
