use thiserror::Error;

use crate::expr::ExprError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("format error at {path}: {msg}")]
    Format { path: String, msg: String },
    #[error("metric is not symmetric: g[{i}][{j}] != g[{j}][{i}]")]
    MetricAsymmetry { i: usize, j: usize },
    #[error("metric is degenerate: {detail}")]
    Degenerate { detail: String },
    #[error("chart has no one-form")]
    MissingOneForm,
    #[error("no sample range for symbol `{0}`")]
    MissingRange(String),
    #[error("inverse metric check failed at ({i},{j})")]
    InverseCheck { i: usize, j: usize },
    #[error("metric compatibility failed for the {kind} connection at component {component}")]
    MetricCompatibility { kind: String, component: String },
    #[error("invalid tensor slot {slot}: {reason}")]
    SlotInvalid { slot: usize, reason: String },
    #[error("curvature action requires a fully covariant tensor")]
    NotDownTensor,
    #[error("wedge metric must be symmetric; component ({i},{j}) differs from ({j},{i})")]
    AsymmetricTheta { i: usize, j: usize },
    #[error("generator is null on the sample domain: eta(eta#) vanishes, system is singular")]
    NullGenerator,
    #[error("structure coefficients verify failed: max residual {residual:e}")]
    SqeVerificationFailed { residual: f64 },
    #[error("inconsistent proportionality scalar between index tuples {first} and {second}")]
    RhoInconsistent { first: String, second: String },
    #[error("all wedge components degenerate; proportionality scalar undetermined")]
    RhoDegenerate,
    #[error("unknown builtin chart `{0}`")]
    UnknownBuiltin(String),
    #[error("cannot open `{path}`: {msg}")]
    Io { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
