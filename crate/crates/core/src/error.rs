use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported root system {family}{rank}")]
    UnsupportedRootSystem { family: char, rank: usize },

    #[error("simple reflection index {0} out of range")]
    ReflectionIndex(usize),

    #[error("constant polynomial has no leader")]
    ConstantPolynomial,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("not a polynomial: denominator is not constant")]
    NotPolynomial,

    #[error("division by zero")]
    DivisionByZero,

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("matrix is not in the Lie algebra (residual at entry ({row},{col}))")]
    Residual { row: usize, col: usize },

    #[error("matrix does not normalize the torus")]
    NotNormalizing,

    #[error("system is not triangular: {0}")]
    NotTriangular(String),

    #[error("Weyl element is not resolving")]
    NotResolving,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("roots are linearly dependent")]
    DependentRoots,

    #[error("linear system unsolvable at grade {0}")]
    Unsolvable(i64),

    #[error("no complement at grade {0}")]
    NoComplement(i64),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
