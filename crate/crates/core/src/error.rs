use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("expected {expected} coefficients, got {got}")]
    BadCoefficients { expected: usize, got: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("fields do not match")]
    FieldMismatch,
    #[error("p-adic precision exhausted")]
    PrecisionExhausted,
    #[error("value is not a p-adic integer")]
    NotPAdicInteger,
    #[error("singular input: {0}")]
    SingularInput(String),
    #[error("no schedule index gives a vanishing coefficient")]
    NoZeroAchievable,
    #[error("point outside the map's domain: {0}")]
    DomainViolation(String),
    #[error("tau function vanishes at n = {0}")]
    ZeroTau(i64),
    #[error("determinant vanishes")]
    ZeroDeterminant,
    #[error("1 + delta*x*y vanishes identically at cell (n={n}, t={t})")]
    SymbolicSingular { n: usize, t: usize },
    #[error("degree {degree} exceeds cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },
    #[error("singular soliton matrix entry")]
    SingularEntry,
    #[error("sigma vanishes")]
    ZeroSigma,
    #[error("cycle decomposition needs delta = 0")]
    NotAutonomous,
}

pub type Result<T> = std::result::Result<T, MathError>;
