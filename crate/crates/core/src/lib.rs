//! Logarithmic coefficients of Janowski-type `(j,k)`-symmetric starlike
//! functions.
//!
//! The class `ST[j,k](A,B)` consists of normalized functions `f` with
//! `z f'(z)/f(z)` subordinate to `(1 + A z^m)/(1 + B z^m)`, `m = j + k - 1`.
//! The logarithmic coefficients are defined by
//! `log(f(z)/z) = 2 sum_{n>=1} d_n z^{n m}`.
//!
//! The crate is layered bottom-up:
//!
//! - [`series`]: truncated complex power series (`log`, `exp`, complex powers).
//! - [`special`]: the polylogarithm `Li_v` on `[0, 1]` and Hurwitz zeta.
//! - [`class`]: class parameters, Schwarz seeds, the extremal function and
//!   members generated from a seed.
//! - [`logcoef`]: logarithmic-coefficient extraction and the weighted sums.
//! - [`bounds`]: closed-form bounds, member verification and sharpness.
//! - [`lemmas`]: the ℓ² subordination and weight-transfer lemmas as checkers.
//! - [`search`]: a deterministic extremal search over seed families.
//! - [`report`]: sweep configuration and JSON/CSV reports used by the CLI.

pub mod bounds;
pub mod class;
pub mod cnum;
pub mod lemmas;
pub mod logcoef;
pub mod report;
pub mod search;
pub mod series;
pub mod special;

pub use num_complex::Complex64;

pub use bounds::{
    check_sharpness, thm2_bound, thm3_bound, thm_a_bound, verify_member, BoundResult, CheckKind,
    CheckOutcome, SharpnessRow, Theorem, VerificationReport,
};
pub use class::{
    extremal_function, member_from_seed, q_function, seed_series, ClassMember, ClassParams,
    SchwarzSeed,
};
pub use logcoef::{extremal_log_coefficient, log_coefficients, LogCoeffVector};
pub use series::TruncatedSeries;
pub use special::{li, li_ratio};

/// Errors raised by the series algebra, the class constructors and the
/// bound checkers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("divisor has zero constant term")]
    ZeroConstantTerm,
    #[error("series must have constant term exactly 1")]
    NotUnitConstantTerm,
    #[error("series must have constant term exactly 0")]
    NonzeroConstantTerm,
    #[error("argument outside the supported domain: {0}")]
    DomainError(String),
    #[error("invalid class parameters: {0}")]
    InvalidParams(String),
    #[error("invalid Schwarz seed: {0}")]
    InvalidSeed(String),
    #[error("truncation order {order} is below the required {needed}")]
    TruncationTooSmall { order: usize, needed: usize },
    #[error("log(f/z) has coefficient of modulus {modulus:e} at exponent {exponent}, not a multiple of m")]
    SupportViolation { exponent: usize, modulus: f64 },
    #[error("weight exponent t = {0} exceeds 2")]
    WeightOutOfRange(f64),
    #[error("the bound excludes B = -1")]
    BExcluded,
    #[error("weighted series diverges at B = -1 for t = {0} >= 1")]
    DivergentSeries(f64),
    #[error("sharpness failed at n = {n}: {detail}")]
    SharpnessFailure { n: usize, detail: String },
    #[error("partial-sum dominance fails at K = {k}")]
    HypothesisViolated { k: usize },
}
