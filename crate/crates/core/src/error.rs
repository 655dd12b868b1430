use thiserror::Error;

/// Failures reported by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("argument out of supported range: {0}")]
    Range(String),
    #[error("singular denominator: {0}")]
    SingularDenominator(String),
    #[error("bracketing failure: {0}")]
    Bracketing(String),
    #[error("root not found: {0}")]
    RootNotFound(String),
    #[error("degenerate null space: {0}")]
    DegenerateNullSpace(String),
    #[error("near-zero denominator: {0}")]
    NearZeroDenominator(String),
    #[error("discriminant sign violation: {0}")]
    DiscriminantSign(String),
    #[error("branch inconsistency: {0}")]
    BranchInconsistency(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("inconsistent signs: {0}")]
    InconsistentSigns(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// True for failures of an iterative or adaptive procedure to converge.
    pub fn is_convergence_failure(&self) -> bool {
        matches!(
            self,
            Error::Bracketing(_) | Error::RootNotFound(_) | Error::NonConvergence(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
