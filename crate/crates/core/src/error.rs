use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan type: {0}")]
    InvalidType(String),
    #[error("a coordinate basis must be specified")]
    MissingBasis,
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("not a diagram automorphism: {0}")]
    InvalidDiagramAut(String),
    #[error("not a sigma-orbit: {0}")]
    InvalidOrbit(String),
    #[error("invalid twisted setup: {0}")]
    InvalidSetup(String),
    #[error("invalid subsequence: {0}")]
    InvalidSequence(String),
    #[error("1 - c sigma is singular on the coroot space: c is not elliptic")]
    SingularFixedPointSystem,
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("Coxeter word {target} is not reachable from {start} by conjugation moves (explored {explored} elements)")]
    UnreachableCoxeter { start: String, target: String, explored: usize },
    #[error("reduction root must be alpha_1 or sigma^-1(alpha_r): {0}")]
    InvalidReductionRoot(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("q = {q} must exceed M = {m}")]
    QTooSmall { q: i64, m: i64 },
    #[error("characters belong to different groups")]
    MismatchedGroups,
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
