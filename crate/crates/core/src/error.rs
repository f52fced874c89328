use std::path::PathBuf;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiniError {
    #[error("alpha must be positive, got {0}")]
    AlphaNotPositive(String),

    #[error("v = {v} must exceed {floor}")]
    OrderBelowFloor { v: String, floor: &'static str },

    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),

    #[error("coefficient index must be at least 1")]
    ZeroIndex,

    #[error("tolerance {tol:e} not reached within {max_terms} terms (tail bound {tail:e})")]
    ToleranceNotReached { tol: f64, max_terms: usize, tail: f64 },

    #[error("majorant ratio {q} is not below 1; the geometric tail diverges")]
    RatioNotContracting { q: f64 },

    #[error("denominator modulus below {floor:e} at z = {at}")]
    DenominatorZero { at: Complex64, floor: f64 },

    #[error("point z = 0 is a removable singularity of this representation")]
    ZeroArgument,

    #[error("J_v(0) is unbounded for v = {0} < 0")]
    BesselPole(f64),

    #[error("invalid disk sampling: {0}")]
    InvalidSampling(String),

    #[error("could not parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

pub type Result<T> = std::result::Result<T, DiniError>;
