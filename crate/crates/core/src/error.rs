use thiserror::Error;

/// Errors raised by the library. Every variant maps to a stable string code
/// used on the wire by the CLI and the HTTP service.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix has determinant {0}, expected 1")]
    Determinant(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("no associated form: the identity has vanishing coefficients")]
    NoAssociatedForm,

    #[error("{op} is defined for indefinite non-degenerate forms only, got {form}")]
    NotIndefinite { op: &'static str, form: String },

    #[error("{op} is defined for positive definite forms only, got {form}")]
    NotPositiveDefinite { op: &'static str, form: String },

    #[error("{op} is defined for definite forms only, got {form}")]
    NotDefinite { op: &'static str, form: String },

    #[error("degenerate direction: c = 0 in {0}")]
    DegenerateDirection(String),

    #[error("form {0} is not on the spine (a*c >= 0)")]
    NotOnSpine(String),

    #[error("form {to} is not on the spine of {from}")]
    NotOnSameSpine { from: String, to: String },

    #[error("{op} exceeded its step limit of {limit} on {form}")]
    StepLimit {
        op: &'static str,
        limit: u64,
        form: String,
    },

    #[error("query zero not supported")]
    ZeroQuery,

    #[error("no real geodesic: element is {0}")]
    NotHyperbolic(&'static str),

    #[error("vertical-line geodesic (r = 0)")]
    VerticalElementGeodesic,

    #[error("vertical geodesic (a = 0)")]
    VerticalFormGeodesic,

    #[error("at least two samples are required, got {0}")]
    TooFewSamples(usize),

    #[error("depth {depth} exceeds the configured maximum {max}")]
    DepthExceeded { depth: usize, max: usize },

    #[error("cell {0} is not part of the layout")]
    UnknownCell(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Determinant(_) => "determinant",
            Error::InvalidWord(_) => "invalid_word",
            Error::NoAssociatedForm => "no_associated_form",
            Error::NotIndefinite { .. } => "not_indefinite",
            Error::NotPositiveDefinite { .. } => "not_positive_definite",
            Error::NotDefinite { .. } => "not_definite",
            Error::DegenerateDirection(_) => "degenerate_direction",
            Error::NotOnSpine(_) => "not_on_spine",
            Error::NotOnSameSpine { .. } => "not_on_same_spine",
            Error::StepLimit { .. } => "step_limit",
            Error::ZeroQuery => "zero_query",
            Error::NotHyperbolic(_) => "not_hyperbolic",
            Error::VerticalElementGeodesic => "vertical_geodesic",
            Error::VerticalFormGeodesic => "vertical_geodesic",
            Error::TooFewSamples(_) => "too_few_samples",
            Error::DepthExceeded { .. } => "depth_exceeded",
            Error::UnknownCell(_) => "unknown_cell",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
