use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is singular")]
    Singular,
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("tuple arity mismatch")]
    ArityMismatch,
    #[error("field mismatch between operands")]
    FieldMismatch,
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("eps1 and eps2 must be nonzero")]
    InvalidEpsilon,
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("singular linear-fractional map")]
    SingularMobius,
    #[error("matrices are linearly dependent")]
    LinearlyDependent,
    #[error("members mix symmetric and skew-symmetric types")]
    MixedSymmetryTypes,
    #[error("cube of the radical is nonzero")]
    RadicalCubeNonzero,
    #[error("semialgebra is not commutative")]
    NotCommutative,
    #[error("extracted matrices are neither all symmetric nor all skew-symmetric")]
    NotHomogeneousSymmetry,
    #[error("commutator dimension is {0}, expected 1 or 2")]
    WrongCommutatorDim(usize),
    #[error("not a two-step nilpotent Lie algebra: {0}")]
    NotLie(String),
    #[error("elementary divisors do not split over the configured field")]
    NonSplitting,
    #[error("label is not realizable by a linearly independent pair")]
    UnrealizableLabel,
    #[error("operation requires a prime field")]
    NotPrimeField,
    #[error("enumeration exceeds the desk-scale budget")]
    DeskScaleExceeded,
    #[error("polynomial factorization failed: {0}")]
    PolyFactor(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
