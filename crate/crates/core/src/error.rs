use thiserror::Error;

/// Errors produced by the numerical routines and kernel constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A kernel family was requested with parameters that violate the
    /// condition under which its transform is known to have only real zeros.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A caller broke a documented precondition (bad bracket, mismatched inputs).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Quadrature did not settle after the allowed number of halvings.
    #[error("quadrature did not converge: last estimates {previous:e} and {last:e}")]
    NoConvergence { previous: f64, last: f64 },

    /// Any other numerical breakdown (root finder stalled, ambiguous scan cell).
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// True for errors caused by user input rather than by the numerics.
    pub fn is_user_error(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::Parameter(_) | Error::Precondition(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
