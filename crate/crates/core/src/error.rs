use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group data: {0}")]
    InvalidGroup(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operation requires dimension 3, got {0}")]
    UnsupportedDimension(usize),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("ray sets of the two fans differ: {0}")]
    RaySetMismatch(String),
    #[error("invalid shift move: {0}")]
    InvalidShift(String),
    #[error("invalid theta: {0}")]
    InvalidTheta(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid reference fan: {0}")]
    InvalidReference(String),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
