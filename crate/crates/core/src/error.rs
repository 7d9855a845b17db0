use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("weight parameter xi = {0} outside the supported range (-1, 100]")]
    InvalidWeight(f64),

    #[error("{what} overflowed the f64 range (xi = {xi}, k = {k})")]
    Range { what: &'static str, xi: f64, k: usize },

    #[error("invalid truncation policy: {0}")]
    InvalidPolicy(String),

    #[error("invalid quadrature grid: {0}")]
    InvalidGrid(String),

    #[error("non-finite integrand value {value} at node z = {re} + {im}i")]
    PoisonedSample { re: f64, im: f64, value: String },

    #[error("point {re} + {im}i is not inside the open unit disc")]
    OutsideDisc { re: f64, im: f64 },

    #[error("group element violates |alpha|^2 - |beta|^2 = 1 (defect {0:e})")]
    NotInGroup(f64),

    #[error("multiplier branch invalid for non-integer weight: need Re(alpha) > |beta| (Re(alpha) = {re_alpha}, |beta| = {abs_beta})")]
    BranchViolation { re_alpha: f64, abs_beta: f64 },

    #[error("shift constant {re} + {im}i lies within 1e-12 of a non-positive integer")]
    ForbiddenShift { re: f64, im: f64 },

    #[error("domain identification needs xi > 1, got {0}")]
    DomainXi(f64),

    #[error("finite-difference step must lie in (0, 1e-3], got {0}")]
    InvalidStep(f64),

    #[error("nonzero scalar commutator {re} + {im}i found at sample {sample}")]
    ScalarCommutator { sample: usize, re: f64, im: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
