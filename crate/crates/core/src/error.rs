use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid oscillation parameters: {0}")]
    InvalidParams(String),

    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("matrix is not Hermitian (max |A - A†| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("density matrix has trace {trace} (expected 1)")]
    BadTrace { trace: f64 },

    #[error("density matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPositive { eigenvalue: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error(
        "genuine tripartite routes disagree: residual average {residual_route}, bipartition average {entropy_route}"
    )]
    RouteDisagreement { residual_route: f64, entropy_route: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("at axis value {axis}: {source}")]
    AtPoint {
        axis: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn arg(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn at(self, axis: f64) -> Self {
        Error::AtPoint {
            axis,
            source: Box::new(self),
        }
    }
}
