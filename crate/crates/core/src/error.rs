use thiserror::Error;

/// Errors raised while building or interrogating groups and lattices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is empty or not square")]
    NotSquare,
    #[error("not a Latin square: {0}")]
    NotLatinSquare(String),
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("no identity element in table")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("order {order} exceeds cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("{0} is not classified planar")]
    NotPlanarGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
