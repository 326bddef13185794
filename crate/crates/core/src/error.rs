use thiserror::Error;

/// Errors surfaced by the induction, transform and metric operations.
///
/// Structural problems in loaded documents are *not* errors; they are
/// reported as [`crate::document::Violation`] values by
/// [`crate::document::validate_document`]. The variants here cover contract
/// breaches that make an operation meaningless (bad selector, mismatched
/// tree sizes, missing nuclearity) plus a defensive `Internal` case for
/// states the algorithms prove unreachable.
#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,

    #[error("matrix has {got} values, expected {n}x{n}")]
    MatrixShape { n: usize, got: usize },

    #[error("attention entry ({row},{col}) is {value}; entries must be finite and non-negative")]
    InvalidEntry { row: usize, col: usize, value: f64 },

    #[error("layer {layer} out of range 0..{max}")]
    LayerOutOfRange { layer: usize, max: usize },

    #[error("head {head} out of range 0..{max}")]
    HeadOutOfRange { head: usize, max: usize },

    #[error("document has no layers")]
    NoLayers,

    #[error("document segmentation invalid: {0}")]
    BadSegmentation(String),

    #[error("trees disagree on EDU count: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("internal node over span {lo}..{hi} lacks nuclearity")]
    MissingNuclearity { lo: usize, hi: usize },

    #[error("dependency tree invalid: {0}")]
    InvalidDependencyTree(String),

    #[error("constituency tree invalid: {0}")]
    InvalidConstituencyTree(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("n={n} out of supported range {min}..={max}")]
    OutOfRange { n: usize, min: usize, max: usize },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
