use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed scenario: {0}")]
    Parse(String),

    #[error("invalid scenario field `{field}`: {message}")]
    Validation { field: String, message: String },

    /// The verb does not apply to this kind of scenario.
    #[error("`{verb}` cannot run on a {kind} scenario")]
    WrongKind { verb: &'static str, kind: &'static str },

    #[error(transparent)]
    Compute(#[from] pubgoods::Error),

    /// A brute-force cross-check disagreed with the solver.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 2 for bad input or I/O, 1 for failures during computation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. }
            | CliError::Parse(_)
            | CliError::Validation { .. }
            | CliError::WrongKind { .. } => 2,
            CliError::Compute(_) | CliError::Verification(_) => 1,
        }
    }
}
