use thiserror::Error;

/// Errors raised by the construction and certification pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("grading not of full rank")]
    GradingNotFullRank,
    #[error("grading not positive")]
    GradingNotPositive,
    #[error("usage error: {0}")]
    Usage(String),
    #[error("cone on rays {rays:?} (complement of support {support:?}) is not strongly convex")]
    NotStronglyConvex { support: Vec<usize>, rays: Vec<usize> },
    #[error("class lies outside the effective cone")]
    OutsideEffectiveCone,
    #[error("{0}")]
    GuardExceeded(String),
    #[error("empty projective set")]
    EmptyProjectiveSet,
    #[error("degenerate targets: {0}")]
    DegenerateTargets(String),
    #[error("no transversal plane found after {attempts} attempts")]
    MaxTriesExhausted { attempts: usize },
    #[error("intersection is not a single point: {0}")]
    NotAPoint(String),
    #[error("integer overflow during {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
