use oqa_scalar::ScalarError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OqaError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("element is not invertible in A⊗A")]
    Singular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("automorphism error: {0}")]
    Automorphism(String),
    #[error("twist rejected: {0}")]
    Twist(String),
    #[error("trace rejected: {0}")]
    Trace(String),
    #[error("structure has no twist element; closed diagrams need one (an invertible G with t_d(G) = t_u(G) = G and t_d∘t_u = conjugation by G)")]
    MissingTwist,
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("slice {slice}: {msg}")]
    Invalid { slice: usize, msg: String },
    #[error("move does not apply: {0}")]
    MoveMismatch(String),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("diagram error: {0}")]
    Diagram(String),
    #[error("classification clause {clause} fails: {detail}")]
    Classification { clause: String, detail: String },
    #[error("structure is invalid: {0}")]
    InvalidStructure(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, OqaError>;
