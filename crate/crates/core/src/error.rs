//! Error type shared by all toolkit operations.

use thiserror::Error;

/// Errors raised by construction and classification operations.
///
/// Every variant has a stable machine-readable code (see [`CoreError::code`])
/// so front ends can report failures without string matching.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    /// Two values built over different phase spaces were combined.
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    /// A point or exponent vector has the wrong length for the space.
    #[error("dimension error: expected {expected} entries, got {got}")]
    DimensionError { expected: usize, got: usize },
    /// A form of unexpected degree was supplied.
    #[error("wrong degree: expected {expected}, got {got}")]
    WrongDegree { expected: String, got: usize },
    /// Interior product of a degree-0 form was requested.
    #[error("cannot contract a degree-0 form")]
    ContractScalar,
    /// `sharp` requires a constant-coefficient symplectic form.
    #[error("symplectic form has non-constant coefficients; sharp is undefined here")]
    NonconstantOmega,
    /// The candidate symplectic form is degenerate.
    #[error("degenerate 2-form: {0}")]
    DegenerateOmega(String),
    /// A verified postcondition failed; indicates an internal bug.
    #[error("postcondition failed: {0}")]
    PostconditionFailed(String),
    /// An iterated Lie derivative exceeded its configured budget.
    #[error("iteration budget exceeded: requested {requested}, budget {budget}")]
    IterationBudgetExceeded { requested: usize, budget: usize },
    /// Two independent classification routes disagreed; indicates a bug.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    /// `conserved_observable` was called with the wrong degree.
    #[error("degree mismatch: stated degree {stated}, computed {computed}")]
    DegreeMismatch { stated: String, computed: String },
    /// The 1-form does not generate a canonoid transformation.
    #[error("not canonoid: d_Gamma(beta) != 0")]
    NotCanonoid,
    /// The gauge condition del_Gamma(alpha) = 0 does not hold.
    #[error("gauge not fixed: del_Gamma(alpha) != 0")]
    GaugeNotFixed,
    /// beta != alpha + dG.
    #[error("not a decomposition: beta != alpha + dG")]
    NotDecomposition,
    /// The claimed inverse of a polynomial map fails to invert it.
    #[error("invalid inverse: {0}")]
    InvalidInverse(String),
}

impl CoreError {
    /// Stable machine-readable code for this error.
    pub fn code(&self) -> &'static str {
        match self {
            CoreError::SpaceMismatch(_) => "SpaceMismatch",
            CoreError::DimensionError { .. } => "DimensionError",
            CoreError::WrongDegree { .. } => "WrongDegree",
            CoreError::ContractScalar => "ContractScalar",
            CoreError::NonconstantOmega => "NonconstantOmega",
            CoreError::DegenerateOmega(_) => "DegenerateOmega",
            CoreError::PostconditionFailed(_) => "PostconditionFailed",
            CoreError::IterationBudgetExceeded { .. } => "IterationBudgetExceeded",
            CoreError::InternalInconsistency(_) => "InternalInconsistency",
            CoreError::DegreeMismatch { .. } => "DegreeMismatch",
            CoreError::NotCanonoid => "NotCanonoid",
            CoreError::GaugeNotFixed => "GaugeNotFixed",
            CoreError::NotDecomposition => "NotDecomposition",
            CoreError::InvalidInverse(_) => "InvalidInverse",
        }
    }
}

pub type Result<T> = std::result::Result<T, CoreError>;
