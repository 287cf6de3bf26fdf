use thiserror::Error;

use crate::forms::LinearForm;
use crate::rootdata::TypeLabel;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan type {label} with rank {rank}")]
    InvalidType { label: TypeLabel, rank: usize },

    #[error("unknown type label `{0}`")]
    UnknownLabel(String),

    #[error("Cartan matrix is not symmetrizable")]
    NotSymmetrizable,

    #[error("root system did not close within {0} positive roots; not of finite type")]
    NotFinite(usize),

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("weight has {got} entries but the rank is {expected}")]
    WeightLength { expected: usize, got: usize },

    #[error("node {node} is out of range for rank {rank}")]
    NodeOutOfRange { node: usize, rank: usize },

    #[error("closure exceeded the cap of {0} forms")]
    ClosureCap(usize),

    #[error("enumeration exceeded the cap of {0} points")]
    EnumerationCap(usize),

    #[error("no explicit table for {what} of type {label}; use the closure source instead")]
    UnsupportedTable { label: TypeLabel, what: String },

    #[error("index k = {k} is out of range (expected 0..={max})")]
    IndexOutOfRange { k: usize, max: usize },

    #[error("pattern {0:?} is not admissible")]
    InvalidPattern(Vec<usize>),

    #[error("positivity fails for {} form(s), e.g. {}", .0.len(), .0[0])]
    Positivity(Vec<LinearForm>),

    #[error("system is not ample: {} form(s) are negative at the origin, e.g. {}", .0.len(), .0[0])]
    NotAmple(Vec<LinearForm>),

    #[error("coordinate x_{{{row};{col}}} has no finite upper bound")]
    Unbounded { row: usize, col: usize },

    #[error("cannot parse linear form `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
