use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("product did not converge after {terms} factors")]
    NonConvergent { terms: usize },
    #[error("pole hit at {at}")]
    PoleHit { at: String },
    #[error("parameters outside the validity domain: {0}")]
    DomainViolation(String),
    #[error("contour deformations overlap at centers {a} and {b}")]
    OverlappingDeformations { a: f64, b: f64 },
    #[error("deformation center {0} outside (-1/2, 1/2]")]
    CenterOutOfRange(f64),
    #[error("pole {pole} lies within {distance:e} of the contour")]
    PoleOnPath { pole: String, distance: f64 },
    #[error("pole audit failed: {0}")]
    AuditFailed(String),
    #[error("tolerance not reached after {evaluations} evaluations (value {value}, error {error:e})")]
    ToleranceNotReached { value: String, error: f64, evaluations: usize },
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("series product does not terminate: {0}")]
    NonTerminating(String),
    #[error("series orders are inconsistent: {0}")]
    InconsistentTruncation(String),
    #[error("unknown check id: {0}")]
    UnknownId(String),
    #[error("duplicate check id: {0}")]
    DuplicateId(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
