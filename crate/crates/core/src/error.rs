use thiserror::Error;

use crate::index::Index;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("tail position {t} out of range for index of depth {depth}")]
    TailOutOfRange { t: usize, depth: usize },

    #[error("word `{0}` does not end in y and has no index representative")]
    NotWy(String),

    #[error("index {0} has no non-positive entry before its last position")]
    NotReducible(Index),

    #[error("index {0} is not admissible")]
    NotAdmissible(Index),

    #[error("shuffle recursion exceeded depth limit {limit}")]
    RecursionLimit { limit: usize },

    #[error("parse error at position {position} in `{input}`: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },

    #[error("truncation order must be at least 1")]
    ZeroOrder,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
