use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed rational number {0:?}")]
pub struct ParseRationalError(pub String);

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("degenerate interpolation data: {0}")]
    Degenerate(String),
    #[error("no squarefree norm found after {0} shifts")]
    ShiftSearchExhausted(usize),
    #[error("parametrization appears non-proper: no resolution after {tried} parameters")]
    NonProper { tried: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
