use thiserror::Error;

/// Errors raised by the analysis routines.
///
/// Warnings (non-smooth derivative levels, the degenerate field-synthesis
/// branch) are not errors; they travel as flags on the returned values.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {reason}")]
    Parse { position: usize, reason: String },

    #[error("{x} lies outside the domain {domain}")]
    Domain { x: f64, domain: String },

    #[error("grid model has no interpolation and {x} is not a knot")]
    Undefined { x: f64 },

    #[error("step vector/point pair is not suitable: {0}")]
    Suitability(String),

    #[error("no suitable (x, h) pair exists on the window {0}")]
    EmptyWindow(String),

    #[error("function is affine at this resolution (defect {defect:e})")]
    AffineInput { defect: f64 },

    #[error("derivative has no pair of values separated by more than the tolerance")]
    Monotonicity,

    #[error("{x} is not an element of F")]
    NotInF { x: f64 },

    #[error("value {value} is outside the representable range (|v| <= {limit})")]
    Range { value: f64, limit: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("index set does not accumulate at 0: {0}")]
    Accumulation(String),

    #[error("generator value {value} at index {index} is not positive")]
    NonPositive { index: usize, value: f64 },

    #[error("no admissible (R, r) scale pair: {0}")]
    Scale(String),

    #[error("precision {precision} exceeds the exactness bound {bound} for base {base}")]
    Precision {
        precision: u32,
        base: u32,
        bound: u32,
    },

    #[error("{u} is not a power of {base}")]
    NotAPower { u: f64, base: u32 },

    #[error("sampling produced too few distinct prefixes: {0}")]
    Sample(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o: {0}")]
    Io(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn parse(position: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            position,
            reason: reason.into(),
        }
    }

    /// Short machine-readable tag used in CLI error documents.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::Domain { .. } => "DomainError",
            Error::Undefined { .. } => "UndefinedError",
            Error::Suitability(_) => "SuitabilityError",
            Error::EmptyWindow(_) => "EmptyWindowError",
            Error::AffineInput { .. } => "AffineInputError",
            Error::Monotonicity => "MonotonicityError",
            Error::NotInF { .. } => "NotInFError",
            Error::Range { .. } => "RangeError",
            Error::Precondition(_) => "PreconditionError",
            Error::Accumulation(_) => "AccumulationError",
            Error::NonPositive { .. } => "NonPositiveError",
            Error::Scale(_) => "ScaleError",
            Error::Precision { .. } => "PrecisionError",
            Error::NotAPower { .. } => "NotAPowerError",
            Error::Sample(_) => "SampleError",
            Error::Config(_) => "ConfigError",
            Error::Io(_) => "IoError",
            Error::Invariant(_) => "InvariantError",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
