use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("grid has no triangles")]
    EmptyGrid,
    #[error("grid triangles are not edge-connected")]
    NotConnected,
    #[error("grid region is not convex: {0}")]
    NotConvex(String),
    #[error("edge {0} does not belong to the grid")]
    DanglingEdge(String),
    #[error("edge {0} has no value")]
    MissingEdge(String),
    #[error("triangle {0} has nonzero value sum")]
    NotACocirculation(String),
    #[error("cocirculation violates the rhombus inequality at {0}")]
    NotConcave(String),
    #[error("line system is not a pre-honeycomb: {0}")]
    NotPreHoneycomb(String),
    #[error("invalid honeycomb: {0}")]
    InvalidHoneycomb(String),
    #[error("honeycomb has no nonintegral edge")]
    NoNonintegralEdge,
    #[error("epsilon {0} is outside the admissible range")]
    EpsilonOutOfRange(String),
    #[error("fixed edge set is not a subset of the grid edges: {0}")]
    FNotSubsetOfEdges(String),
    #[error("no integer truncation point on ray {0}")]
    NonIntegerTruncationPoint(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("deformation step failed: {0}")]
    Deformation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by malformed input data rather than by the
    /// mathematical content of otherwise well-formed input.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse(_))
    }

    /// Stable variant name for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyGrid => "EmptyGrid",
            Error::NotConnected => "NotConnected",
            Error::NotConvex(_) => "NotConvex",
            Error::DanglingEdge(_) => "DanglingEdge",
            Error::MissingEdge(_) => "MissingEdge",
            Error::NotACocirculation(_) => "NotACocirculation",
            Error::NotConcave(_) => "NotConcave",
            Error::NotPreHoneycomb(_) => "NotPreHoneycomb",
            Error::InvalidHoneycomb(_) => "InvalidHoneycomb",
            Error::NoNonintegralEdge => "NoNonintegralEdge",
            Error::EpsilonOutOfRange(_) => "EpsilonOutOfRange",
            Error::FNotSubsetOfEdges(_) => "FNotSubsetOfEdges",
            Error::NonIntegerTruncationPoint(_) => "NonIntegerTruncationPoint",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::Deformation(_) => "Deformation",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
