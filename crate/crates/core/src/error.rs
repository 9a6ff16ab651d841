use thiserror::Error;

/// Errors raised by the analyses in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A quantity is unbounded at the requested point.
    #[error("singularity: {0}")]
    Singularity(String),

    /// A query falls outside a tabulated range.
    #[error("{value} is outside the tabulated range [{min}, {max}]")]
    Range { value: f64, min: f64, max: f64 },

    /// An iterative solver hit its iteration cap. `last` holds the final iterate.
    #[error("no convergence after {iterations} iterations (last change {last_change:e})")]
    Convergence {
        iterations: usize,
        last_change: f64,
        last: Vec<f64>,
    },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("shape mismatch: expected {expected} entries, got {actual}")]
    Shape { expected: usize, actual: usize },

    /// Malformed input data.
    #[error("invalid input: {0}")]
    Validation(String),

    /// The pairwise majority relation is undefined because two alternatives tie.
    #[error("pairwise tie between {0} and {1}")]
    Tie(String, String),

    #[error("profile is not single-peaked (voters {0:?} fail)")]
    NotSinglePeaked(Vec<usize>),

    /// The median is an interval rather than a point.
    #[error("ambiguous median: {0}")]
    Ambiguous(String),

    #[error("evaluation budget exceeded: {required} evaluations needed, cap is {cap}")]
    Budget { required: u128, cap: u64 },

    /// Closed-form shortcuts need identical agents.
    #[error("agents are not identical")]
    NotSymmetric,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {value}")))
    }
}
