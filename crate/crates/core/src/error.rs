use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mode system mismatch: {0} vs {1}")]
    ModeMismatch(String, String),
    #[error("mode index {index} out of range for {modes}")]
    ModeIndex { index: usize, modes: String },
    #[error("parity is undefined for a mixed-parity element")]
    UndefinedParity,
    #[error("not left-divisible by {0}")]
    NotLeftDivisible(String),
    #[error("q mismatch: {0} vs {1}")]
    QMismatch(String, String),
    #[error("q=1 not allowed")]
    QEqualsOne,
    #[error("delta=0 not allowed")]
    DeltaZero,
    #[error("unknown representation {0:?}")]
    UnknownRep(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("missing parameter {0:?}")]
    MissingParam(String),
    #[error("parameter {name}: {reason}")]
    BadParam { name: String, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
