use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("target bucket (charge {charge}, qweight {qweight}) exceeds cutoff {cutoff}")]
    CutoffOverflow { charge: i64, qweight: i64, cutoff: i64 },
    #[error("mode parity mismatch: {0}")]
    Parity(String),
    #[error("mixed extension tags")]
    MixedExtensions,
    #[error("lattice vector {0} is not in N")]
    NotInN(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
