use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Unsupported group, parabolic or curve description.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("Weyl group exceeds the cap of {cap} elements")]
    WeylGroupTooLarge { cap: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("order requested for the zero function")]
    ZeroFunction,

    #[error("pole of order {order} exceeds the requested limit order {k}")]
    PoleTooHigh { order: i64, k: i64 },

    #[error("function has a pole at 0; no power series expansion")]
    PoleAtZero,

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    /// An argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("exponent identically zero along the line for root {0:?}")]
    DegenerateExponent(Vec<i64>),

    #[error("work cap exceeded: about 2^{needed} tuples, cap 2^{cap}")]
    WorkCap { needed: u32, cap: u32 },

    #[error("cone is not unimodular")]
    NonUnimodular,

    #[error("point is not in the interior of the cone")]
    BoundaryPoint,

    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}
