use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },

    #[error("exponent vector has length {got}, expected {expected}")]
    ExponentLength { expected: usize, got: usize },

    #[error("polynomial is not exactly divisible by the given divisor")]
    NotDivisible,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("input is not symmetric{}", .degree.map(|d| format!(" at q^{d}")).unwrap_or_default())]
    NonSymmetric { degree: Option<usize> },

    #[error("partition {parts:?} is not weakly decreasing")]
    InvalidPartition { parts: Vec<i32> },

    #[error("partition has {got} parts, expected {expected}")]
    PartCountMismatch { expected: usize, got: usize },

    #[error("weight multiplicities need nonnegative parts, got {parts:?}")]
    NegativeParts { parts: Vec<i32> },

    #[error("denominator factor (1 - t^{alpha:?} q^{k}) cannot be expanded by q-degree")]
    FactorNotExpandable { alpha: Vec<i32>, k: i64 },

    #[error("substitution t_i -> t_i q produced negative q-power {qpow} for exponent {alpha:?}")]
    NegativeQPower { alpha: Vec<i32>, qpow: i64 },

    #[error("denominator factor with zero exponent and zero q-degree is identically zero")]
    ZeroFactor,

    #[error("no fit: coefficient of q^{degree} in the cleared numerator is nonzero")]
    NoFit { degree: usize },

    #[error("series order {order} too small: need at least {needed}")]
    InsufficientPrefix { order: usize, needed: usize },

    #[error("beta must lie strictly between 0 and 1")]
    BetaOutOfRange,

    #[error("invalid quadratic irrational: {0}")]
    InvalidIrrational(String),

    #[error("unsupported size: {0}")]
    UnsupportedSize(String),

    #[error("invalid group spec: {0}")]
    InvalidGroup(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
