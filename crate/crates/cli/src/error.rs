use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown function `{0}` (see `list-fns`)")]
    UnknownFunction(String),
    #[error("unknown bound family `{0}`")]
    UnknownBound(String),
    #[error(transparent)]
    Core(#[from] simpson_cert::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot serialize report: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use simpson_cert::Error as E;
        match self {
            CliError::UnknownFunction(_) => 2,
            CliError::Core(E::Domain { .. } | E::InvalidInterval { .. }) => 3,
            CliError::Core(E::HypothesisFailed(_) | E::ToleranceUnreachable { .. }) => 4,
            _ => 1,
        }
    }
}
