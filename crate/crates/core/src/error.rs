use std::path::PathBuf;

use crate::graph::VertexId;

/// Errors raised by graph, project, matrix and proof operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("edge weight {0} is not a positive finite real")]
    InvalidWeight(f64),

    #[error("wager {0} is not a nonnegative finite real")]
    InvalidWager(f64),

    #[error("edge endpoint {0} is not a vertex of the graph")]
    UnknownVertex(VertexId),

    #[error("carrier constraint violated at vertex {vertex}: {reason}")]
    Carrier { vertex: VertexId, reason: String },

    #[error("projects have different carriers")]
    CarrierMismatch,

    #[error("project is not successful")]
    NotSuccessful,

    #[error("cut is undefined: the interaction is infinite")]
    CutUndefined,

    #[error("simplified graph is not total (infinite weight)")]
    NonTotal,

    #[error("delocation does not map carrier vertex {0}")]
    Delocation(VertexId),

    #[error("delocation is not injective: two vertices map to {0}")]
    NotInjective(VertexId),

    #[error("locativity violated: vertex {0} is both in the domain and the image")]
    Locativity(VertexId),

    #[error("matrix dimension {0} exceeds the supported bound of {max}", max = crate::matrix::MAX_DIM)]
    DimensionTooLarge(usize),

    #[error(
        "power iteration did not converge after {iterations} iterations (last estimate {last})"
    )]
    NoConvergence { iterations: usize, last: f64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Proof(#[from] crate::logic::ProofError),

    #[error("infinitely many alternating paths between interface vertices")]
    InfiniteReduction,

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn carrier(vertex: VertexId, reason: impl Into<String>) -> Self {
        Error::Carrier {
            vertex,
            reason: reason.into(),
        }
    }
}
