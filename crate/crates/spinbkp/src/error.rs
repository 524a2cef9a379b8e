use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("series has a nonzero constant term")]
    NonZeroConstant,
    #[error("linear coefficient vanishes; series is not invertible under composition")]
    VanishingLinear,
    #[error("skew matrix has odd dimension {0}")]
    OddDimension(usize),
    #[error("modulus is not square-free")]
    NotSquareFree,
    #[error("truncation window excludes the residue exponent")]
    ResidueWindow,
    #[error("partition {0:?} is not strict")]
    NotStrict(Vec<u32>),
    #[error("partition {0:?} is not odd")]
    NotOdd(Vec<u32>),
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: u32, got: u32 },
    #[error("requested order {0} is outside the computed window")]
    OrderOutOfRange(i32),
    #[error("series did not become nilpotent under truncation")]
    NotNilpotent,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("missing data: {0}")]
    Missing(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("assumption violated in {module}: {msg}")]
    Assumption { module: &'static str, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
