use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a cochain complex: {0}")]
    InvalidComplex(String),

    #[error("malformed simplicial data: {0}")]
    MalformedComplex(String),

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("not a simplicial map: {0}")]
    NotSimplicial(String),

    #[error("invalid group action: {0}")]
    InvalidAction(String),

    #[error("not a cocycle: {0}")]
    NotACocycle(String),

    #[error("no canonical lift: degree {degree} is below height {height}")]
    NoCanonicalLift { degree: usize, height: usize },

    #[error("invalid datum: {0}")]
    InvalidDatum(String),

    #[error("local trivialization failed on level {level} piece {index} ({indices:?})")]
    LocalTrivialization { level: usize, index: usize, indices: Vec<usize> },

    #[error("insufficient nerve levels: need {needed}, have {available}")]
    InsufficientLevels { needed: usize, available: usize },

    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),

    #[error("schema violation at {pointer}: {message}")]
    Schema { pointer: String, message: String },

    #[error("i/o failure on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::DimensionMismatch(_) => "dimension_mismatch",
            Self::InvalidComplex(_) => "invalid_complex",
            Self::MalformedComplex(_) => "malformed_complex",
            Self::InvalidCover(_) => "invalid_cover",
            Self::NotSimplicial(_) => "not_simplicial",
            Self::InvalidAction(_) => "invalid_action",
            Self::NotACocycle(_) => "not_a_cocycle",
            Self::NoCanonicalLift { .. } => "no_canonical_lift",
            Self::InvalidDatum(_) => "invalid_datum",
            Self::LocalTrivialization { .. } => "local_trivialization",
            Self::InsufficientLevels { .. } => "insufficient_levels",
            Self::EndpointMismatch(_) => "endpoint_mismatch",
            Self::Schema { .. } => "schema",
            Self::Io { .. } => "io",
        }
    }
}
