//! Bootstrap hypothesis testing.
//!
//! Implements tests of the form `T = sqrt(n) * ||phi(H_n)||` together with
//! their bootstrap counterparts `T* = sqrt(n) * ||phi(H*_n) - phi(R_n)||`,
//! where `H_n` is the empirical measure of the data and `R_n` is a resampling
//! scheme fitted to the data. Depending on the scheme, the corrected statistic
//! reduces to the *equivalent* form `sqrt(n)*||phi(H*_n)||` (schemes that
//! satisfy the null hypothesis) or the *centred* form
//! `sqrt(n)*||phi(H*_n) - phi(H_n)||` (empirical-style schemes).
//!
//! Four testing problems are covered:
//!
//! * independence of a bivariate sample (Kolmogorov-Smirnov type statistic),
//! * the slope in a linear regression (plain and studentised least squares),
//! * goodness-of-fit to a parametric family (sup or weighted-L2 distance,
//!   moment or minimum-distance estimators),
//! * goodness-of-fit of a copula family (empirical copula, Kendall-tau
//!   inversion).
//!
//! The [`engine`] module runs one complete test (observed statistic, `B`
//! bootstrap replicates, Monte Carlo p-value, decision) and the
//! [`simulation`] module sweeps data-generating processes, sample sizes and
//! scheme/statistic combinations to estimate rejection rates with exact
//! binomial confidence intervals.
//!
//! All randomness flows through counter-based [`rng::RngStream`] values, so
//! every result is reproducible bit-for-bit from a master seed regardless of
//! execution order or parallelism.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature only adds `std::error::Error` impls and lets float math use the
//! standard library instead of `libm`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod float;

pub mod dist;
pub mod empirical;
pub mod engine;
pub mod estimators;
pub mod functionals;
pub mod resampling;
pub mod rng;
pub mod simulation;

use core::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A sample must contain at least one observation.
    EmptySample,
    /// Samples must consist of finite values.
    NonFiniteValue,
    /// Evaluation grids must be nonempty.
    EmptyGrid,
    /// The norm kind does not match the requested operation.
    NormKindMismatch,
    /// L2 weights must be nonnegative with a positive finite sum.
    InvalidWeights,
    /// The design has zero variance in the regressor.
    DegenerateDesign,
    /// A marginal contains duplicate values where continuity is required.
    TiesDetected,
    /// A parameter (or Kendall tau) lies outside the attainable range.
    OutOfRange,
    /// The criterion evaluated to a non-finite value during a search.
    NonFiniteCriterion,
    /// The scheme cannot be combined with this functional.
    IncompatiblePair,
    /// The sample shape does not match the functional.
    ShapeMismatch,
    /// Every bootstrap replicate failed to produce a finite statistic.
    AllReplicatesNonFinite,
    /// A study or test specification failed validation.
    InvalidSpec(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptySample => write!(f, "sample must contain at least one observation"),
            Error::NonFiniteValue => write!(f, "sample contains a non-finite value"),
            Error::EmptyGrid => write!(f, "evaluation grid is empty"),
            Error::NormKindMismatch => write!(f, "norm kind does not match the operation"),
            Error::InvalidWeights => write!(f, "L2 weights must be nonnegative with positive sum"),
            Error::DegenerateDesign => write!(f, "regressor sample variance is zero"),
            Error::TiesDetected => write!(f, "marginal ties detected; ranks are undefined"),
            Error::OutOfRange => write!(f, "parameter outside the attainable range"),
            Error::NonFiniteCriterion => write!(f, "criterion is non-finite on the search region"),
            Error::IncompatiblePair => write!(f, "scheme is not defined for this functional"),
            Error::ShapeMismatch => write!(f, "sample shape does not match the functional"),
            Error::AllReplicatesNonFinite => {
                write!(f, "all bootstrap replicates were non-finite")
            }
            Error::InvalidSpec(msg) => write!(f, "invalid specification: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;
