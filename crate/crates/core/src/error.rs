use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The divisor is not an exact factor. A normal negative answer.
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivideByZero,
    /// Trial division left a non-constant quotient.
    #[error("polynomial is not cyclotomic")]
    NotCyclotomic,
    #[error("polynomial is not of the form ±Φ_p1(±x)Φ_p2(±x^p1)...")]
    NotForm11,
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("invalid E-move (t'={t}, d'={d}): {reason}")]
    InvalidMove { t: u32, d: u64, reason: String },
    #[error("chain normalization exceeded {guard} iterations")]
    NonTermination { guard: u64 },
    #[error("N={n} exceeds the naive enumeration cap {cap}")]
    CapExceeded { n: u64, cap: u64 },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub(crate) fn bad_input(msg: impl Into<String>) -> Error {
    Error::BadInput(msg.into())
}
