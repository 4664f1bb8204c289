use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown reflection `{0}`")]
    UnknownReflection(String),

    #[error("reflection index {0} out of range")]
    ReflectionIndex(usize),

    #[error("dimension mismatch: expected {expected} components, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid alternating word: {0}")]
    AlternatingWord(&'static str),

    #[error("invalid Coxeter datum: {0}")]
    Coxeter(String),

    #[error("invalid torus datum: {0}")]
    Torus(String),

    #[error("phase {phase} at position {index} has denominator not dividing the generator order {order}")]
    PhaseDenominator { index: usize, phase: String, order: u64 },

    #[error("reflection {0} is not in S_lambda; subset must lie in S_lambda")]
    NotInSLambda(String),

    #[error("enumeration bound exceeded: {count} > {bound}")]
    BoundExceeded { count: u128, bound: u64 },

    #[error("theory mismatch: {0}")]
    TheoryMismatch(String),

    #[error("invalid diagram automorphism: {0}")]
    Automorphism(String),

    #[error("automorphisms are not closed under composition")]
    AutomorphismsNotClosed,

    #[error("node sets differ")]
    NodeSetMismatch,

    #[error("invalid preset: {0}")]
    Preset(String),

    #[error("parse error: {0}")]
    Parse(String),
}
