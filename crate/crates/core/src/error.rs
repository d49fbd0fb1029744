use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("function is not bounded away from zero: grid minimum {min:e} below floor {floor:e}")]
    NotBoundedAway { min: f64, floor: f64 },

    #[error("residual {residual:e} does not meet tolerance {tol:e} at degree {degree}")]
    ToleranceNotMet { residual: f64, tol: f64, degree: usize },

    #[error("mismatched parameters: theta {lhs_theta} / {rhs_theta}, sigma {lhs_sigma} / {rhs_sigma}")]
    MismatchedParameters {
        lhs_theta: f64,
        rhs_theta: f64,
        lhs_sigma: f64,
        rhs_sigma: f64,
    },

    #[error("truncation half-size {l} is smaller than the support width {width}")]
    TooSmallL { l: usize, width: usize },

    #[error("element is not self-adjoint (deviation {deviation:e})")]
    NotSelfAdjoint { deviation: f64 },

    #[error("{what} = {value} is outside the admissible range {range}")]
    OutOfRange {
        what: &'static str,
        value: f64,
        range: String,
    },

    #[error("no averaging plan found: {reason}")]
    NoPlanFound { reason: String },

    #[error("function is not unimodular: |u| ranges over [{min}, {max}]")]
    NotUnimodular { min: f64, max: f64 },

    #[error("translates did not cover the circle after {k} steps")]
    NotCovered { k: usize },

    #[error("module vector is identically zero")]
    ZeroVector,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
