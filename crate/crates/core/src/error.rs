use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the remainder engine and everything built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("divisor must be nonconstant")]
    ConstantDivisor,
    #[error("invalid factored polynomial: {0}")]
    InvalidFactorization(String),
    #[error("root finding failed after {iterations} iterations")]
    RootFindingFailed { iterations: usize },
    #[error("ill-conditioned factorization: reconstruction mismatch {mismatch:e}")]
    IllConditioned { mismatch: f64 },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("not a unit at center {center}")]
    NotAUnit { center: Complex64 },
    #[error("germ is not defined at {center}")]
    NotDefinedAt { center: Complex64 },
    #[error("jet centers differ: {left} vs {right}")]
    CenterMismatch { left: Complex64, right: Complex64 },
    #[error("inconsistent remainder: residual {residual:e}")]
    InconsistentRemainder { residual: f64 },
    #[error("quotient is zero")]
    QuotientIsZero,
    #[error("{point} is not a root of the divisor")]
    NotARoot { point: Complex64 },
    #[error("confluent nodes; use crt_lift")]
    ConfluentNodes,
    #[error("residue data does not match divisor: {0}")]
    ResidueMismatch(String),
    #[error("annihilation check failed: residual {residual:e} above tolerance {tolerance:e}")]
    AnnihilationFailed { residual: f64, tolerance: f64 },
    #[error("quadrature failed: estimate {estimate}, error bound {error_bound:e}")]
    QuadratureFailed { estimate: Complex64, error_bound: f64 },
    #[error("insufficient forcing data: need {needed} terms, have {available}")]
    InsufficientForcing { needed: usize, available: usize },
    #[error("forcing sampled outside its table at t = {t}")]
    OutOfRange { t: f64 },
    #[error("grid too coarse for order {order}")]
    GridTooCoarse { order: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroDivisor => "zero_divisor",
            Error::ConstantDivisor => "constant_divisor",
            Error::InvalidFactorization(_) => "invalid_factorization",
            Error::RootFindingFailed { .. } => "root_finding_failed",
            Error::IllConditioned { .. } => "ill_conditioned",
            Error::NotMonic => "not_monic",
            Error::NotAUnit { .. } => "not_a_unit",
            Error::NotDefinedAt { .. } => "not_defined_at",
            Error::CenterMismatch { .. } => "center_mismatch",
            Error::InconsistentRemainder { .. } => "inconsistent_remainder",
            Error::QuotientIsZero => "quotient_is_zero",
            Error::NotARoot { .. } => "not_a_root",
            Error::ConfluentNodes => "confluent_nodes",
            Error::ResidueMismatch(_) => "residue_mismatch",
            Error::AnnihilationFailed { .. } => "annihilation_failed",
            Error::QuadratureFailed { .. } => "quadrature_failed",
            Error::InsufficientForcing { .. } => "insufficient_forcing",
            Error::OutOfRange { .. } => "out_of_range",
            Error::GridTooCoarse { .. } => "grid_too_coarse",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::InvalidInput(_) => "invalid_input",
        }
    }

    /// True for failures of the numerics on otherwise well-formed input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::RootFindingFailed { .. }
                | Error::IllConditioned { .. }
                | Error::NotAUnit { .. }
                | Error::InconsistentRemainder { .. }
                | Error::AnnihilationFailed { .. }
                | Error::QuadratureFailed { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
