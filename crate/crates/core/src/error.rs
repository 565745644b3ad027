use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("expected a square matrix, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("ambient rank mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("matrix literal: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cyclic order {0} is not at least 2")]
    InvalidOrder(String),
    #[error("matrix is not a well-defined endomorphism: column {column}: {detail}")]
    WellDefinedness { column: usize, detail: String },
    #[error("endomorphisms act on different groups")]
    GroupMismatch,
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("restriction precondition violated: {0}")]
    NotInvariant(String),
    #[error("no string witness: {0}")]
    NoWitness(String),
    #[error("group has free rank {0}; a finite group is required")]
    InfiniteGroup(usize),
    #[error("group literal: {0}")]
    Parse(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Descriptor parse failure with a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("unknown witness id {0:?}")]
    UnknownId(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("depth {requested} exceeds what this construction can represent ({available})")]
    DepthExceeded { requested: usize, available: usize },
    #[error("no witness: {0}")]
    NoWitness(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}
