use thiserror::Error;

use crate::perm::PermGroup;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Clone, Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An enumeration or orbit computation would exceed its configured cap.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// The automorphism search ran out of nodes. `partial` is the subgroup
    /// certified so far; it is a lower bound, not the full group.
    #[error("search budget of {budget} nodes exhausted (partial group order {partial_order})")]
    SearchBudget {
        budget: u64,
        partial_order: String,
        partial: Box<PermGroup>,
    },

    #[error("codes are not nested: {0}")]
    NotNested(String),

    #[error("permutation is not an automorphism of {0}")]
    NotAutomorphism(String),

    #[error("matrix is singular")]
    Singular,

    #[error("stabilizer validation failed: {}", .0.join("; "))]
    InvalidStabilizer(Vec<String>),

    #[error("phase action undefined: {0}")]
    NotDoublyEven(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
