//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by construction, fitting, and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// Dimensions of two operands do not agree.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// `NaN` and `+inf` are never representable as tropical scalars.
    #[error("value {0} is not representable: NaN and +inf are excluded")]
    NotRepresentable(f64),

    /// A value that must be finite was `-inf`, `+inf`, or NaN.
    #[error("value {0} must be finite")]
    NotFinite(f64),

    /// A matrix column contains no finite entry; the greatest subsolution
    /// coordinate would be unbounded.
    #[error("column {0} has no finite entry")]
    DegenerateColumn(usize),

    /// A matrix row contains no finite entry; the max-plus residual is
    /// unbounded below.
    #[error("row {0} has no finite entry")]
    DegenerateRow(usize),

    /// A polynomial needs at least one finite coefficient to be evaluated.
    #[error("polynomial has no finite coefficient")]
    NoFiniteCoefficient,

    /// Fitting requires at least one data point.
    #[error("dataset is empty")]
    EmptyDataset,

    /// Default initialization places the constant term on the zero exponent.
    #[error("exponent set has no zero exponent; pass initial coefficients explicitly")]
    MissingZeroExponent,

    /// An exponent set was built from invalid input.
    #[error("invalid exponent set: {0}")]
    InvalidExponentSet(String),

    /// A configuration value is out of range.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Text input (CSV, flags) failed to parse; `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A model file failed validation after deserialization.
    #[error("invalid model file: {0}")]
    InvalidModel(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
