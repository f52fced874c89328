//! Normalized Dini functions: exact bound constants, certified series
//! evaluation, sampled checks of the bounds on the unit disk, and image
//! plots of the derived functions.

pub mod bounds;
pub mod dini;
pub mod error;
pub mod exec;
pub mod params;
pub mod plot;
pub mod rational;
pub mod sampling;
pub mod verifier;

pub use bounds::{bound_value, hypothesis, tail_bound, tail_bound_exact, BoundKind, HypothesisStatus, Theorem};
pub use dini::{
    corollary_fn, dini_coeff, eval_partial, eval_w, CorollaryFn, CorollaryId, DiniSeries, EvalResult, RatioKind,
    SeriesOptions,
};
pub use error::{DiniError, Result};
pub use exec::{Engine, Exec};
pub use params::{ComplexPoint, Deriv, Params};
pub use rational::Rational;
pub use sampling::{sample_disk, DiskSampling};
pub use verifier::{Verdict, VerificationReport};
