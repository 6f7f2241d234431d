use alloc::string::String;
use core::fmt;

use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("a partition needs at least one slot")]
    EmptyPartition,
    #[error("partition {0} has a zero slot")]
    NotRegular(Partition),
    #[error("higher-product shape {0} must begin with 1")]
    BadShape(Partition),
    #[error("groups do not match the higher-product shape")]
    ShapeMismatch,
    #[error("{target} is not a component of {outer} * {inner}")]
    NotAComponent { target: Partition, outer: Partition, inner: Partition },
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("not a permutation")]
    NotAPermutation,
    #[error("unbound symbol `{0}`")]
    Unbound(String),
    #[error("degree mismatch for `{0}`")]
    DegreeMismatch(String),
    #[error("invalid model: {0}")]
    Model(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A parse failure at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: &str) -> Self {
        ParseError { position, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: {}", self.position, self.message)
    }
}

impl core::error::Error for ParseError {}
