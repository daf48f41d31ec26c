use thiserror::Error;

/// Errors produced by the library.
///
/// Numeric payloads are carried as `f64` regardless of the scalar type used for the
/// computation so that the error type stays non-generic.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{func}: argument {arg} outside the domain ({detail})")]
    Domain {
        func: &'static str,
        arg: f64,
        detail: &'static str,
    },

    #[error("{func}({arg}) overflows the floating-point range (|x| must be <= {limit})")]
    Overflow {
        func: &'static str,
        arg: f64,
        limit: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("negative discriminant in {which}: {value}")]
    Discriminant { which: &'static str, value: f64 },

    #[error("{0} is singular at the origin")]
    SingularOrigin(&'static str),

    #[error("series jets are incompatible: {0}")]
    JetMismatch(String),

    #[error("iteration depth {depth} exceeds the Taylor order {order}")]
    DepthExceedsOrder { depth: usize, order: usize },

    #[error("no sign change of the {what} on [{lo}, {hi}]")]
    NoSignChange { what: &'static str, lo: f64, hi: f64 },

    #[error("residual is complex-valued over the whole bracket [{lo}, {hi}]")]
    ComplexDomain { lo: f64, hi: f64 },

    #[error("node count mismatch: wanted level {expected}, bracket spans node counts {low}..{high}")]
    NodeCount {
        expected: usize,
        low: usize,
        high: usize,
    },

    #[error("{what} did not converge after {iterations} iterations (best estimate {estimate})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        estimate: f64,
    },

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("invalid dataset: {0}")]
    Validation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable tag used in CLI error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::Overflow { .. } => "overflow",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Discriminant { .. } => "discriminant",
            Error::SingularOrigin(_) => "singular_origin",
            Error::JetMismatch(_) => "jet_mismatch",
            Error::DepthExceedsOrder { .. } => "depth_exceeds_order",
            Error::NoSignChange { .. } => "no_sign_change",
            Error::ComplexDomain { .. } => "complex_domain",
            Error::NodeCount { .. } => "node_count",
            Error::NoConvergence { .. } => "no_convergence",
            Error::Parse { .. } => "parse",
            Error::Validation(_) => "validation",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
