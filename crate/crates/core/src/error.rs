use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid generalized Cartan matrix: {}", .0.join("; "))]
    InvalidCartan(Vec<String>),

    #[error("Cartan matrix is not symmetrizable: {0}")]
    NotSymmetrizable(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("matrix is not a Weyl group element (no termination after {0} descent steps)")]
    NotWeylElement(usize),

    #[error("Weyl group level {level} has {size} elements, above the bound {bound}")]
    LevelTooLarge { level: usize, size: usize, bound: usize },

    #[error("enumeration insufficient: elements of length {needed} are required but only {enumerated} were enumerated")]
    EnumerationInsufficient { enumerated: usize, needed: usize },

    #[error("degree of height {height} exceeds the cutoff {cutoff}")]
    CutoffExceeded { height: i64, cutoff: i64 },

    #[error("weights are not Bruhat comparable: {0}")]
    NotComparable(String),

    #[error("weight is not in the required cone: {0}")]
    NotDominant(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
