use thiserror::Error;

/// Errors raised by the library. Every failure is reported, never silently absorbed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars from different field contexts were combined")]
    MixedContext,
    #[error("denominator vanishes under the given binding")]
    DenominatorVanishes,
    #[error("variable `{0}` is not bound")]
    UnboundVariable(String),
    #[error("grid index ({i}, {j}) is out of range")]
    IndexOutOfRange { i: usize, j: usize },
    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),
    #[error("operation needs a grid of family {0}")]
    WrongFamily(&'static str),
    #[error("the zero polynomial has no top component")]
    ZeroPolynomial,
    #[error("window is inconsistent with every perfect grid: {0}")]
    InconsistentWindow(String),
    #[error("window does not match any perfect-grid family: {0}")]
    NotPerfectWindow(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("malformed tableau: {0}")]
    MalformedTableau(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("scalar type cannot represent symbolic parameters")]
    NotParametric,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::MixedContext => "MixedContext",
            Error::DenominatorVanishes => "DenominatorVanishes",
            Error::UnboundVariable(_) => "UnboundVariable",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::DegenerateGrid(_) => "DegenerateGrid",
            Error::WrongFamily(_) => "WrongFamily",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::InconsistentWindow(_) => "InconsistentWindow",
            Error::NotPerfectWindow(_) => "NotPerfectWindow",
            Error::Hypothesis(_) => "Hypothesis",
            Error::MalformedTableau(_) => "MalformedTableau",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::NotParametric => "NotParametric",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
