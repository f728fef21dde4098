use thiserror::Error;

/// Errors raised by the algebraic kernels.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown variable `{0}` (registered: {1})")]
    UnknownVariable(String, String),

    #[error("variable registry is full ({0} variables)")]
    RegistryFull(usize),

    #[error("cannot parse scalar `{input}`: {reason}")]
    ScalarParse { input: String, reason: String },

    #[error("division by a non-monomial or zero scalar")]
    NotInvertible,

    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),

    #[error("invalid bubble profile: t_{k} = {value} exceeds {k}")]
    InvalidProfile { k: usize, value: usize },

    #[error("p + q = {0} does not match the strand count {1}")]
    ShuffleSize(usize, usize),

    #[error("{0:?} is not a ({1},{2})-shuffle")]
    NotAShuffle(Vec<usize>, usize, usize),

    #[error("generator index {index} out of range for {strands} strands")]
    GeneratorIndex { index: usize, strands: usize },

    #[error("cannot parse word `{0}`")]
    WordParse(String),

    #[error("tensor is not homogeneous of degree {0}")]
    Inhomogeneous(usize),

    #[error("basis index {index} out of range for dimension {dim}")]
    BasisIndex { index: usize, dim: usize },

    #[error("tensor factor is the unit; inputs must lie in the non-unit span")]
    UnitFactor,

    #[error("malformed algebra: {0}")]
    Algebra(String),

    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
