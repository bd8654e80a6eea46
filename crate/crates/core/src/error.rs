use thiserror::Error;

/// Errors raised by the library and the experiment runner.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Medium parameters for which the inverse symbol is not defined.
    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),

    /// An inverse transform produced a non-negligible imaginary part.
    #[error("spectrum is not Hermitian: imaginary residual {residual:e} exceeds {limit:e}")]
    SymmetryViolation { residual: f64, limit: f64 },

    /// Two signals that must share a grid do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// The reference signal of a relative error has zero norm.
    #[error("relative error undefined: reference signal has zero norm")]
    ZeroReference,

    /// A runtime check on experiment results failed.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// Invalid experiment configuration.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::SymmetryViolation { .. } | Error::Invariant(_) => 3,
            Error::Domain(_) | Error::DegenerateParams(_) | Error::GridMismatch(_) | Error::ZeroReference => {
                3
            }
            Error::Io(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
