use thiserror::Error;

use crate::exactnum::Var;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arity mismatch: expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("unknown variable {0}")]
    UnknownVariable(Var),

    #[error("variable family mismatch: {0}")]
    FamilyMismatch(String),

    #[error("unsupported dimension {n} for {what}")]
    UnsupportedDimension { what: &'static str, n: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("degenerate parameter: u = 0")]
    DegenerateParameter,

    #[error("singular matrix encountered during elimination")]
    Singular,

    #[error("{what} is not orthogonal: {detail}")]
    NotOrthogonal { what: String, detail: String },

    #[error("polynomial division is not exact")]
    NotDivisible,

    #[error("matrix entry depends nonlinearly on {0}")]
    Nonlinear(Var),

    #[error("matrix entry ({i}, {j}) has a term free of u")]
    ConstantTerm { i: usize, j: usize },

    #[error("generator {0} is not antisymmetric")]
    NotAntisymmetric(String),

    #[error("bad adjoint indices ({i}, {j}) for dimension {n}")]
    BadIndices { n: usize, i: usize, j: usize },

    #[error("out of desk scale: {0}")]
    OutOfDeskScale(String),

    #[error("span deficiency: achieved rank {achieved}, expected {expected}")]
    SpanDeficiency { achieved: usize, expected: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
