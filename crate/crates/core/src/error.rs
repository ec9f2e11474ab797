use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator matrix does not respect the source relations")]
    IllDefined,
    #[error("operands live over different rings")]
    RingMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("maps are not composable or their composite is nonzero")]
    NotComposableOrNonzeroComposite,
    #[error("d∘d ≠ 0 at degree {degree}")]
    NotAComplex { degree: i64 },
    #[error("components do not commute with the differentials at degree {degree}")]
    NotAChainMap { degree: i64 },
    #[error("construction did not stabilize within {bound} stages")]
    StageBoundExceeded { bound: usize },
    #[error("lifting-property and P-element characterizations disagree: {0}")]
    CharacterizationMismatch(String),
    #[error("torsion divisor {divisor} exceeds the pure-class torsion bound {bound}")]
    TorsionBoundExceeded { divisor: BigInt, bound: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
