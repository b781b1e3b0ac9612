use thiserror::Error;

/// Errors raised while parsing, evaluating, certifying or solving.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown variable `{name}` at byte {offset}: expressions have the single variable `x`")]
    MultipleVariables { name: String, offset: usize },

    #[error("exponent at byte {offset} depends on `x`; only constant exponents are supported")]
    NonConstantExponent { offset: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("derivative {derivative} at x = {x} is below the floor")]
    DerivativeZero { x: f64, derivative: f64 },

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
