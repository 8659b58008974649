use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0} (pass --force to lift the guard)")]
    Guard(permprob_core::Error),

    #[error(transparent)]
    Core(permprob_core::Error),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("validation failed: {0} check(s) did not pass")]
    ValidationFailed(usize),

    #[error("bad input file: {0}")]
    Input(String),
}

impl CliError {
    /// 0 success, 1 validation or runtime failure, 2 usage error, 3 guard violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Guard(_) => 3,
            CliError::ValidationFailed(_) | CliError::Core(_) | CliError::Io { .. } | CliError::Input(_) => 1,
        }
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }
}

impl From<permprob_core::Error> for CliError {
    fn from(e: permprob_core::Error) -> Self {
        use permprob_core::Error as E;
        match e {
            e if e.is_guard() => CliError::Guard(e),
            e @ (E::InvalidDimension(_) | E::IndexOutOfRange { .. } | E::ProbabilityDomain(_) | E::GridTooSmall(_)) => {
                CliError::Usage(e.to_string())
            }
            e => CliError::Core(e),
        }
    }
}
