use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root system {0}")]
    UnsupportedRootSystem(String),
    #[error("index {0} is not minuscule")]
    NotMinuscule(usize),
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("non-integral result: {0}")]
    NonIntegral(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("torus link unsupported: gcd({0},{1}) != 1")]
    TorusLink(i64, i64),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("normalization ambiguous: {0}")]
    AmbiguousNormalization(String),
    #[error("infeasible constraint system: {0}")]
    Infeasible(String),
    #[error("search budget exceeded; best bound {0}")]
    BudgetExceeded(String),
    #[error("non-unique minimum: {0} / {1}")]
    NonUnique(String, String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("inconsistent realizations: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
