use thiserror::Error;

/// Errors produced by basis construction, assembly, optimization and solves.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An evaluation point lies outside the domain of definition.
    #[error("point outside domain: {0}")]
    Domain(String),

    /// The discrete linear system has no solution within tolerance.
    ///
    /// For the dual method this is the built-in guard against spurious
    /// solutions: the dual normal equations are consistent exactly when the
    /// primal problem has a solution.
    #[error("inconsistent linear system: relative residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    InconsistentSystem { residual: f64, tol: f64 },

    /// An iterate crossed a singularity of the dual-to-primal map.
    #[error("singular dual-to-primal map: {0}")]
    SingularDtp(String),

    /// An iterative optimizer failed to reach its tolerance.
    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),

    /// The problem data is degenerate (e.g. a singular reduced system).
    #[error("degenerate problem: {0}")]
    Degenerate(String),

    /// Internal consistency check failed; indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
