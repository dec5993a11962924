use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("group has at least {order} elements, more than the configured cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },

    #[error("size bound exceeded: {size} > {bound}")]
    SizeBoundExceeded { size: usize, bound: usize },

    #[error("operands live over different groups")]
    GroupMismatch,

    #[error("family is not closed under subconjugacy: class {missing} lies below class {member}")]
    FamilyNotClosed { member: usize, missing: usize },

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("unknown object {0}")]
    UnknownObject(String),

    #[error("monoidal product {left} ⊗ {right} lies outside the truncated object set")]
    Truncation { left: String, right: String },

    #[error("not functorial on the triple ({0}, {1}, {2})")]
    NonFunctorial(usize, usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
