use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("level M = {0} must be positive")]
    BadLevel(u64),
    #[error("precision cap must be at least 1, got {0}")]
    BadPrecision(u32),
    #[error("p = {p} and M = {m} are not coprime")]
    NotCoprime { p: u64, m: u64 },
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("element is not a unit (valuation {0})")]
    NonUnit(i32),
    #[error("division by an element with no known nonzero digit")]
    DivisionByZero,
    #[error("precision exhausted: result would be known only mod p^{0}")]
    PrecisionExhausted(i32),
}
