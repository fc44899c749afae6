use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("no individuals observed")]
    EmptySample,

    #[error("need at least two categories, got {0}")]
    TooFewCategories(usize),

    #[error("sample total {declared} does not match the sum of counts {actual}")]
    TotalMismatch { declared: u64, actual: u64 },

    #[error("invalid {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("non-finite value in {term}")]
    NonFinite { term: &'static str },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("not a point on the simplex: {reason}")]
    NotSimplex { reason: &'static str },

    #[error("target entropy {target} outside achievable range [{min}, {max}]")]
    Calibration { target: f64, min: f64, max: f64 },

    #[error("unknown profile kind {0:?}")]
    UnknownProfile(String),

    #[error("profile does not match the scenario's kind or category count")]
    ProfileMismatch,

    #[error("empty input")]
    EmptyInput,

    #[error("missing cells: {}", .0.join(", "))]
    MissingCells(Vec<String>),

    #[error("replicate {replicate}: {source}")]
    Replicate {
        replicate: usize,
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn param(name: &'static str, value: f64) -> Self {
        Error::InvalidParameter { name, value }
    }

    pub(crate) fn at_replicate(self, replicate: usize) -> Self {
        Error::Replicate {
            replicate,
            source: Box::new(self),
        }
    }
}
