use thiserror::Error;

use crate::poly::PolyError;
use crate::schubert::SchubertError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by pencil construction, system assembly and solving.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),

    #[error(transparent)]
    Schubert(#[from] SchubertError),

    #[error("{what}: expected {expected}, found {found}")]
    Dimension {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("feedback subspace needs at least one basis matrix")]
    EmptyBasis,

    #[error("feedback subspace basis is linearly dependent (rank {rank} < {d})")]
    DependentBasis { rank: usize, d: usize },

    #[error("subspace dimension {d} exceeds m*n = {max}")]
    SubspaceTooLarge { d: usize, max: usize },

    #[error("square system requires dim L = n, got d = {d}, n = {n}")]
    NonSquare { d: usize, n: usize },

    #[error("matrix is rank deficient: every maximal minor vanishes")]
    RankDeficient,

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("problem field `{field}`: {msg}")]
    Problem { field: String, msg: String },

    #[error("problem JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn problem(field: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Problem {
            field: field.into(),
            msg: msg.into(),
        }
    }
}
