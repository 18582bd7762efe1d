use alloc::string::String;

/// Every failure the core can report.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: expected {expected:?}, got {got:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("ambient mismatch: subspace lives in {expected:?}, matrix is {got:?}")]
    AmbientMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("ring mismatch")]
    RingMismatch,
    #[error("structure error: {0}")]
    Structure(String),
    #[error("algebra has no identity element")]
    NoIdentity,
    #[error("spectrum is not rational")]
    IrrationalSpectrum,
    #[error("central idempotents could not be separated over the rationals")]
    IrrationalSplitting,
    #[error("invalid idempotent frame: {0}")]
    InvalidFrame(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid catalog label: {0}")]
    InvalidLabel(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("matrix is not a member of the algebra")]
    NotAMember,
    #[error("map is not a Jordan isomorphism: {0}")]
    NotIsomorphism(String),
    #[error("representation variant {0} is not valid for p = {1}")]
    InvalidVariant(&'static str, usize),
    #[error("search exceeds budget: {0}")]
    Budget(String),
}
