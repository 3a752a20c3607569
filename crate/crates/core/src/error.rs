use thiserror::Error;

/// Errors produced by the evaluation engine.
///
/// The CLI maps [`Error::Usage`] to exit code 2 and everything else to
/// exit code 3.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("series is not invertible: constant term is zero")]
    NonInvertible,

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("divergent series: {0}")]
    Divergent(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An exact-path operation was handed something only the numeric path can handle.
    #[error("path error: {0}")]
    Path(String),

    #[error("p-adic reduction error: {0}")]
    Reduction(String),

    #[error("computation budget exceeded: {message} (largest feasible level N = {max_level})")]
    Budget { message: String, max_level: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
