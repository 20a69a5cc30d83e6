use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a tuple needs at least one coordinate")]
    EmptyTuple,
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("cube elements must be nonempty and strictly increasing")]
    InvalidCube,
    #[error("tuple {0} is not in the domain")]
    NotInDomain(String),
    #[error("tuple {0} is not in the cube")]
    NotInCube(String),
    #[error("cube {cube} is not contained in the domain of `{function}`")]
    CubeNotInDomain { function: String, cube: String },
    #[error("duplicate domain tuple {0}")]
    DuplicateTuple(String),
    #[error("duplicate member id `{0}`")]
    DuplicateId(String),
    #[error("{what} must be at least {min}, got {got}")]
    TooSmall {
        what: &'static str,
        min: usize,
        got: usize,
    },
    #[error("invalid universe spec: {0}")]
    InvalidSpec(String),
    #[error("cannot generate a family from an empty universe")]
    EmptyUniverse,
    #[error("value {0} does not fit the target integer type")]
    Overflow(String),
    #[error("multiplicity of {0} must be at least 1")]
    ZeroMultiplicity(String),
    #[error("unknown bijection `{0}` (expected zigzag, zigzagNeg or shifted:<offset>)")]
    UnknownBijection(String),
    #[error("{method} solver capacity exceeded: {detail}")]
    Capacity {
        method: &'static str,
        detail: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
