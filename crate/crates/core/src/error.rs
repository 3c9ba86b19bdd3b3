use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("matrix dimension mismatch: {0}")]
    Dimension(String),

    #[error("precision mismatch: operands carry different moduli ({0} vs {1})")]
    PrecisionMismatch(u32, u32),

    #[error("element is not a unit in the residue ring")]
    NonUnit,

    #[error("result not resolved at precision l^{0}")]
    PrecisionExhausted(u32),

    #[error("columns of S do not lie in the lattice spanned by L")]
    NotSublattice,

    #[error("1 is an eigenvalue of the automorphism; coinvariants are infinite")]
    EigenvalueOne,

    #[error("model invariant violated: {0}")]
    ModelInvariant(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("query is not realizable")]
    NotRealizable,
}

pub type Result<T> = std::result::Result<T, Error>;
