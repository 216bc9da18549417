use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("π² refinement budget exceeded at {max_digits} digits")]
    RefinementBudgetExceeded { max_digits: u32 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index ({row}, {col}) out of range for a {size}×{size} matrix")]
    IndexOutOfRange { row: usize, col: usize, size: usize },

    #[error("Gram matrix of size {size} is singular")]
    SingularGram { size: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("partial-fraction shifts are not pairwise distinct")]
    DuplicateShifts,

    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("zero Toeplitz determinant at n = {n}")]
    ZeroDeterminantInRange { n: usize },

    #[error("Fisher–Hartwig parameters out of scope: {0}")]
    OutOfScopeParams(String),

    #[error("monotonicity certificate failed at k = {first_k}")]
    CertificateFailure { first_k: u64 },

    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),
}

pub type Result<T> = std::result::Result<T, Error>;
