use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: {msg}")]
    Syntax { offset: usize, msg: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("division by zero: denominator of `{0}` vanishes identically")]
    DivisionByZero(String),
    #[error("domain error in `{expr}`: {msg}")]
    Domain { expr: String, msg: String },
    #[error("symbol `{0}` has no binding")]
    Unbound(String),
    #[error("sampling exhausted: {0} consecutive draws hit domain errors")]
    SamplingExhausted(usize),
    #[error("exponent {0} out of supported range")]
    ExponentOverflow(String),
    #[error("expression nesting too deep to normalize")]
    TooDeep,
    #[error("`{0}` is not a valid identifier")]
    InvalidSymbolName(String),
    #[error("symbol `{0}` declared twice")]
    DuplicateSymbol(String),
}
