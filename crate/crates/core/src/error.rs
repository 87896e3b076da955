use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("epsilon must be a rational in (0, 1/2], got {0}")]
    InvalidEpsilon(String),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("host graph is not complete")]
    HostNotComplete,

    #[error("graph on {n} vertices exceeds the exhaustive limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("blow-up factor {t} too small: part needs {needed} vertices")]
    BaseTooSmall { t: usize, needed: usize },

    #[error("n = {n} exceeds the configured search limit {limit}")]
    LimitExceeded { n: usize, limit: usize },

    #[error("no threshold found up to n = {0}")]
    NotFoundUpTo(usize),

    #[error("Ramsey value is infinite: {0}")]
    Infinite(String),

    #[error("part sizes cannot be 1/2-balanced: {0}")]
    UnbalanceableSizes(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("graph contains no non-monochromatic triangle")]
    NoNonMonoTriangle,

    #[error("graph contains a forbidden pattern: {0}")]
    ForbiddenPatternPresent(String),

    #[error("normalization did not terminate within {0} steps")]
    NonTermination(usize),

    #[error("not complete multipartite: {0}")]
    NotMultipartite(String),

    #[error("fixture mismatch: {0}")]
    FixtureMismatch(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
