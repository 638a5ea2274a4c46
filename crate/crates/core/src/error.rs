use thiserror::Error;

use crate::fields::FieldSpec;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("modulus {0} is outside the supported range 2..=2^31-1")]
    ModulusOutOfRange(u64),
    #[error("cannot combine elements of {left} and {right}")]
    MixedFields { left: FieldSpec, right: FieldSpec },
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid element literal {literal:?} for field {spec}")]
    InvalidLiteral { literal: String, spec: FieldSpec },
    #[error("unknown field tag {0:?} (expected gf2, gf<p> or q)")]
    UnknownFieldTag(String),

    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("expected {expected} entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("field {0} is infinite; its solution sets cannot be enumerated")]
    InfiniteField(FieldSpec),
    #[error("enumeration would yield {count} items, above the cap of {cap}")]
    EnumerationTooLarge { count: u128, cap: u128 },
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("entry {0} is not an integer and cannot be reinterpreted")]
    NonIntegerEntry(String),
    #[error("vector has {found} components, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("universe must contain at least one element")]
    EmptyUniverse,
    #[error("operands live over different universes")]
    UniverseMismatch,
    #[error("universe of size {n} exceeds the cap of {cap}")]
    UniverseTooLarge { n: usize, cap: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("downward closure would hold up to {count} sets, above the cap of {cap}")]
    ClosureTooLarge { count: u128, cap: u128 },
    #[error("ground set of size {n} exceeds the cap of {cap}")]
    GroundTooLarge { n: usize, cap: usize },
    #[error("partition has {count} transversals, above the cap of {cap}")]
    TooManyTransversals { count: u128, cap: u128 },
    #[error("matrix is not a block-incidence matrix: {0}")]
    NotAPartitionMatrix(String),
    #[error("matroids are defined over different ground sets")]
    GroundMismatch,
    #[error("operation requires GF(2), got {0}")]
    WrongField(FieldSpec),
    #[error("matrix is not a binary dependence matrix")]
    NotBinaryDependence,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
