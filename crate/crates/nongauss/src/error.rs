use thiserror::Error;

/// Errors produced by the library.
///
/// Variants distinguish caller mistakes (`Argument`, `Domain`, `Parse`) from
/// numerical failures that indicate an invalid or out-of-tolerance input
/// (`Numerical`, `SpectrumPairing`, `Calibration`, `BranchTracking`,
/// `Decomposition`, `Inversion`) and from internal cross-checks that failed
/// (`Consistency`).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("numerical validity: {0}")]
    Numerical(String),
    #[error("domain: {0}")]
    Domain(String),
    #[error("spectrum pairing: {0}")]
    SpectrumPairing(String),
    #[error("calibration: {0}")]
    Calibration(String),
    #[error("square-root branch tracking: {0}")]
    BranchTracking(String),
    #[error("variable decomposition: {0}")]
    Decomposition(String),
    #[error("distribution inversion: {0}")]
    Inversion(String),
    #[error("internal consistency: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
