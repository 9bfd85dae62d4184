use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("no convergence in {what} after {iterations} iterations (last iterate {last})")]
    Convergence {
        what: &'static str,
        iterations: usize,
        last: Complex64,
    },

    #[error("matrix is singular to working precision (smallest pivot {pivot:e})")]
    Singular { pivot: f64 },

    #[error("degenerate configuration: scatterers {0} and {1} coincide")]
    Degenerate(usize, usize),

    #[error("zero on or near the contour: {0}")]
    Contour(String),

    #[error("iteration did not converge: {what} (residual {residual:e})")]
    Iteration { what: &'static str, residual: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("task failed for configuration index {index}: {source}")]
    Worker {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Short machine-readable tag used in CLI error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Convergence { .. } => "convergence",
            Error::Singular { .. } => "singular",
            Error::Degenerate(..) => "degenerate",
            Error::Contour(_) => "contour",
            Error::Iteration { .. } => "iteration",
            Error::Config(_) => "config",
            Error::Worker { .. } => "worker",
            Error::Io(_) => "io",
        }
    }
}
