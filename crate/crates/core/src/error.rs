use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is reducible over the prime field")]
    ReducibleModulus(String),
    #[error("modulus has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field of order {0} exceeds the supported size")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported shape: {0}")]
    ShapeUnsupported(String),
    #[error("matrix is not of full row rank")]
    RankDeficient,
    #[error("matrix is not square")]
    NotSquare,
    #[error("search space of {0} candidates exceeds the configured cap")]
    SearchSpaceTooLarge(u128),
    #[error("code is not self-dual: {0}")]
    NotSelfDual(String),
    #[error("M·Mᵀ is not a scalar multiple of the identity")]
    NotOrthogonalScaled,
    #[error("{0} is not a unit of F_q[z]")]
    NotUnit(String),
    #[error("matrix is not a permutation matrix")]
    NotPermutation,
    #[error("scalars do not satisfy a^2 + b^2 = 0 with a, b nonzero")]
    BadScalars,
    #[error("vector does not satisfy f·fᵀ = -(a^-1)^2")]
    BadVector,
    #[error("-1 is not a square in F_{0}")]
    FieldObstruction(u64),
    #[error("operation requires the binary field")]
    NotBinary,
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("generator does not have the double upper triangular pattern")]
    NotTriangularPattern,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable kebab-case tag used in machine-readable CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not-prime",
            Error::ReducibleModulus(_) => "reducible-modulus",
            Error::DegreeMismatch { .. } => "degree-mismatch",
            Error::InvalidModulus(_) => "invalid-modulus",
            Error::FieldTooLarge(_) => "field-too-large",
            Error::DivisionByZero => "division-by-zero",
            Error::FieldMismatch => "field-mismatch",
            Error::DimensionMismatch(_) => "dimension-mismatch",
            Error::ShapeUnsupported(_) => "shape-unsupported",
            Error::RankDeficient => "rank-deficient",
            Error::NotSquare => "not-square",
            Error::SearchSpaceTooLarge(_) => "search-space-too-large",
            Error::NotSelfDual(_) => "not-self-dual",
            Error::NotOrthogonalScaled => "not-orthogonal-scaled",
            Error::NotUnit(_) => "not-unit",
            Error::NotPermutation => "not-permutation",
            Error::BadScalars => "bad-scalars",
            Error::BadVector => "bad-vector",
            Error::FieldObstruction(_) => "field-obstruction",
            Error::NotBinary => "not-binary",
            Error::MalformedInput(_) => "malformed-input",
            Error::NotTriangularPattern => "not-triangular-pattern",
            Error::Parse(_) => "parse",
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}
