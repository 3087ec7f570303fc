use thiserror::Error;

use crate::lattice::LatticeVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polygon is not 2-dimensional (dimension {0})")]
    NotTwoDimensional(usize),

    #[error("empty point set")]
    EmptyPointSet,

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("the given polygon is not a face of the Newton polygon")]
    NotAFace,

    #[error("the given edge is not an edge of the Newton polygon")]
    NotAnEdge,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("support does not lie on a single line parallel to {0:?}")]
    SupportNotOnLine(LatticeVector),

    #[error("malformed mutation datum: {0}")]
    MalformedDatum(String),

    #[error("not mutable: slice at level {level} leaves remainder {remainder}")]
    NotMutable { level: i64, remainder: String },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("cone is not Gorenstein: no integral u with <u, a_i> = 1 on every ray")]
    NotGorenstein,

    #[error("expected exactly two summands, got {0}")]
    WrongSummandCount(usize),

    #[error("invalid JSON input: {0}")]
    Json(String),
}
