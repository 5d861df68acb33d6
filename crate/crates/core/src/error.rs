use thiserror::Error;

use crate::graphs::{SailWitness, VertexId};

/// A path component that touches too many stars outside the base set of a
/// star-shaped decomposition, or a trunk bag that would hold `t` copies of
/// the same letter window. Either situation exhibits a sail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub reason: String,
    pub component: Vec<VertexId>,
    pub stars: Vec<VertexId>,
    pub witness: Option<SailWitness>,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid position {0}: positions are 1-based")]
    InvalidPosition(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what}: {requested} exceeds the cap of {cap}")]
    Limit {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("search bound {bound} too small: no interval for letter index {k}")]
    SearchBound { k: usize, bound: usize },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a tree: {0}")]
    Structural(String),

    #[error("obstruction: {}", .0.reason)]
    Obstruction(Box<Obstruction>),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn limit(what: &'static str, requested: usize, cap: usize) -> Self {
        Error::Limit {
            what,
            requested,
            cap,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
