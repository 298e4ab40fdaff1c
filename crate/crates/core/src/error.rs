use thiserror::Error;

/// Errors surfaced by the exact-arithmetic and construction layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `p` must be an odd prime; 2 and composites are rejected.
    #[error("unsupported prime: {0}")]
    UnsupportedPrime(u64),

    /// Two cyclotomic numbers from different fields were combined.
    #[error("mismatched primes: {left} vs {right}")]
    PrimeMismatch { left: u64, right: u64 },

    /// Multiplicative inverse of zero.
    #[error("division by zero")]
    DivisionByZero,

    /// A multiplicity vector has the wrong length for its family.
    #[error("invalid multiplicity vector: expected {expected} entries, got {got}")]
    InvalidMultVec { expected: usize, got: usize },

    /// The empty representation (degree 0) has no matrices to assemble.
    #[error("empty representation: degree 0")]
    EmptyRepresentation,

    /// An irreducible-representation construction failed a hard check.
    #[error("irrep {index} failed verification: {check}")]
    Verification { index: usize, check: String },
}
