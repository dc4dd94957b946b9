use thiserror::Error;

/// Errors raised by the toolkit. Check failures are not errors; they are
/// reported as data in the various report types.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("size cap exceeded: {what} has size {size}, cap is {cap}")]
    SizeCap {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("decomposition impossible: {0}")]
    DecompositionImpossible(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("class label ambiguous: rounding residual {residual:e} exceeds {tolerance:e}")]
    LabelAmbiguous { residual: f64, tolerance: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
