use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not representable: {0}")]
    NotRepresentable(String),
    #[error("zero to precision: {0}")]
    ZeroToPrecision(String),
    #[error("bad order: {0}")]
    BadOrder(String),
    #[error("the two germs coincide to the available precision")]
    SameGerm,
    #[error("milnor computation not stabilized at cap {0}")]
    NotStabilized(usize),
    #[error("invalid center: {0}")]
    InvalidCenter(String),
    #[error("germ is regular")]
    Regular,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("connections are isomorphic")]
    Isomorphic,
    #[error("trace mismatch at step {step}: expected {expected}, got {got}")]
    TraceMismatch {
        step: usize,
        expected: String,
        got: String,
    },
    #[error("directions not separated at {0} bits")]
    TolClash(usize),
    #[error("ill-defined quotient: {0}")]
    IllDefined(String),
    #[error("permutation search too large: n = {0}")]
    TooLarge(usize),
    #[error("no gluing: {0}")]
    NoGluing(String),
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("exponent overflow")]
    ExponentOverflow,
}

impl Error {
    /// Exit status used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::ExponentOverflow => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::NotRepresentable(_) => "NotRepresentable",
            Error::ZeroToPrecision(_) => "ZeroToPrecision",
            Error::BadOrder(_) => "BadOrder",
            Error::SameGerm => "SameGerm",
            Error::NotStabilized(_) => "NotStabilized",
            Error::InvalidCenter(_) => "InvalidCenter",
            Error::Regular => "Regular",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::Isomorphic => "Isomorphic",
            Error::TraceMismatch { .. } => "TraceMismatch",
            Error::TolClash(_) => "TolClash",
            Error::IllDefined(_) => "IllDefined",
            Error::TooLarge(_) => "TooLarge",
            Error::NoGluing(_) => "NoGluing",
            Error::Parse { .. } => "ParseError",
            Error::ExponentOverflow => "ExponentOverflow",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
