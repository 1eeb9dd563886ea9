use thiserror::Error;

use crate::graph::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed graph document: {0}")]
    Parse(String),

    #[error("graph failed validation ({} violation(s))", .0.len())]
    Invalid(Vec<Violation>),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("edges {0} and {} are not composable", .0 + 1)]
    NonComposable(usize),

    #[error("could not factor {0} within the factorization budget")]
    WeightNotFactorable(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("word {index} is not a loop at vertex `{vertex}`")]
    VertexMismatch { index: usize, vertex: String },

    #[error("Fock basis would hold {0} entries, above the configured cap")]
    BasisTooLarge(usize),

    #[error("word of length {len} exceeds truncation depth {depth}")]
    WordExceedsDepth { len: usize, depth: usize },

    #[error("graph is not balanced (out-weight sums: {0})")]
    NotBalanced(String),

    #[error("balanced graphs have different loop parameters ({0} vs {1})")]
    DeltaMismatch(String, String),

    #[error("pairings live on different point sets ({0} vs {1})")]
    SizeMismatch(usize, usize),

    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
}

impl Error {
    /// True for errors caused by malformed or inconsistent input, as opposed
    /// to failures during computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::Invalid(_)
                | Error::UnknownEdge(_)
                | Error::UnknownVertex(_)
                | Error::NonComposable(_)
                | Error::VertexMismatch { .. }
                | Error::NotBalanced(_)
                | Error::DeltaMismatch(..)
                | Error::SizeMismatch(..)
                | Error::InvalidPairing(_)
        )
    }
}
