use jordan_core::Error;

/// Failures of the workbench. Usage, input and IO problems exit with 2; a
/// computation that fails inside the core exits with 1.
#[derive(Debug, thiserror::Error)]
pub enum WbError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] Error),
}

impl WbError {
    pub fn exit_code(&self) -> i32 {
        match self {
            WbError::Core(
                Error::InvalidLabel(_)
                | Error::InvalidVariant(..)
                | Error::Domain(_)
                | Error::Parse(_)
                | Error::ShapeMismatch { .. }
                | Error::AmbientMismatch { .. }
                | Error::RingMismatch,
            ) => 2,
            WbError::Core(_) => 1,
            _ => 2,
        }
    }
}
