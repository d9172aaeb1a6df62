use thiserror::Error;

/// Errors produced by imgkit operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid image shape: {0}")]
    InvalidShape(String),

    #[error("{op} requires {expected}")]
    Channels {
        op: &'static str,
        expected: &'static str,
    },

    #[error("{op} requires {expected} input")]
    ElemKind {
        op: &'static str,
        expected: &'static str,
    },

    #[error("{axis} range {start}..{end} out of bounds for length {len}")]
    OutOfRange {
        axis: &'static str,
        start: usize,
        end: usize,
        len: usize,
    },

    #[error("{0}")]
    InvalidParameter(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("image too small: {0}")]
    ImageTooSmall(String),

    #[error("point at infinity")]
    PointAtInfinity,

    #[error("singular transform")]
    Singular,

    #[error("degenerate configuration")]
    Degenerate,

    #[error("need at least {needed} point pairs, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("no consensus")]
    NoConsensus,

    #[error("unsupported format")]
    UnsupportedFormat,

    #[error("unsupported depth")]
    UnsupportedDepth,

    #[error("truncated file")]
    Truncated,

    #[error("malformed header: {0}")]
    MalformedHeader(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
