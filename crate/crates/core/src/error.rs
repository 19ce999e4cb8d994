//! Error type shared across the crate.

/// Errors produced by mesh construction, assembly and the linear solver.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Mesh text could not be parsed; `line` is 1-based.
    #[error("mesh parse error at line {line}: {msg}")]
    MeshParse { line: usize, msg: String },

    /// Parsed mesh violates a connectivity or orientation requirement.
    #[error("mesh validation error: {0}")]
    MeshValidation(String),

    /// Local moment system of an element is numerically unusable.
    #[error("degenerate element {element}: {msg}")]
    DegenerateElement { element: usize, msg: String },

    /// Factorization broke down; `pivot` is the elimination step.
    #[error("singular system at pivot {pivot}: {msg}")]
    SingularSystem { pivot: usize, msg: String },

    /// Eigenvalue diagnostic failed to converge.
    #[error("eigenvalue diagnostic failed: {0}")]
    EigenDiagnostic(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
