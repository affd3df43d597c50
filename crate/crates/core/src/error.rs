use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the statistical kernels and domain constructors.
///
/// Pipeline-level failures (I/O, configuration, empty inputs) are reported
/// through [`crate::report::PipelineError`] instead.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("negative value {0} not allowed")]
    NegativeValue(f64),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("unknown_occupation: {0:?}")]
    UnknownOccupation(String),

    #[error("degenerate_series: {0}")]
    DegenerateSeries(&'static str),

    #[error("degenerate_margin: a row or column of the contingency table sums to zero")]
    DegenerateMargin,

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("invalid contingency table: {0}")]
    InvalidTable(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-antisymmetric edge set: both {0} and {1} directions present")]
    NotAntisymmetric(String, String),

    #[error("format error: {0}")]
    Format(String),
}
