use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input point list is empty")]
    EmptyInput,
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("point {index} has a non-finite coordinate")]
    NonFinite { index: usize },
    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },
    #[error("invalid stacking order: {0}")]
    InvalidOrder(String),
    #[error("disk index {index} out of range for {len} disks")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("instance too large for exhaustive search: n = {n}, limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("failed to place {placed} of {wanted} points after {attempts} attempts")]
    Placement {
        placed: usize,
        wanted: usize,
        attempts: usize,
    },
    #[error("unknown {kind} `{name}`; valid options: {}", valid.join(", "))]
    UnknownName {
        kind: &'static str,
        name: String,
        valid: Vec<&'static str>,
    },
    #[error("cannot fit exponent: {0}")]
    DegenerateFit(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
