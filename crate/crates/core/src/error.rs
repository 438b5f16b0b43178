use thiserror::Error;

/// Errors produced by the library.
///
/// The CLI maps these onto its exit-code contract, so variants are grouped
/// by kind: input that failed to parse, inputs that violate a structural
/// invariant, size bounds, and operations that need a perfect algebra.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed field element {0:?}")]
    MalformedElement(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("denominator of {text:?} is not invertible modulo {p}")]
    DenominatorNotInvertible { text: String, p: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} is not below 2^61")]
    ModulusTooLarge(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parameter constraint violated: {0}")]
    ParameterConstraint(String),
    #[error("unknown catalogue entry {0:?}")]
    UnknownEntry(String),
    #[error("diagonal sums violate the merge constraint: {0}")]
    Infeasible(String),

    #[error("f2 is not monomial")]
    F2NotMonomial,
    #[error("f3 is not monomial")]
    F3NotMonomial,
    #[error("f2 and f3 have different permutation patterns")]
    PermutationMismatch,
    #[error("f1 does not match the value determined by f2 and f3")]
    F1Mismatch,

    #[error("dimension {n} exceeds the bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("enumeration size {size} exceeds the limit {limit}")]
    EnumerationTooLarge { size: u128, limit: u128 },

    #[error("operation requires a perfect evolution algebra")]
    NotPerfect,

    #[error("json: {0}")]
    Json(String),
}

impl Error {
    /// True for errors caused by unparseable input text or JSON.
    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::MalformedElement(_)
                | Error::ZeroDenominator(_)
                | Error::DenominatorNotInvertible { .. }
                | Error::Json(_)
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
