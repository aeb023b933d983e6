use thiserror::Error;

/// Failures surfaced to the shell, each tied to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("solver: {0}")]
    Solver(ladpref::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Solver(_) => 3,
        }
    }

    /// Core errors split into solver failures and input violations.
    pub fn from_core(e: ladpref::Error) -> Self {
        if is_solver(&e) {
            CliError::Solver(e)
        } else {
            CliError::Invalid(e.to_string())
        }
    }
}

fn is_solver(e: &ladpref::Error) -> bool {
    use ladpref::Error::*;
    match e {
        Infeasible | Unbounded | IterationLimit(_) => true,
        Criterion { source, .. } => is_solver(source),
        _ => false,
    }
}

impl From<ladpref::Error> for CliError {
    fn from(e: ladpref::Error) -> Self {
        Self::from_core(e)
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
