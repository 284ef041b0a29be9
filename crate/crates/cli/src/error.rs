use std::io;

use thermoq_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("search failure: {0}")]
    Search(String),
    #[error("io error on {path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Search(_) => 4,
            CliError::Io { .. } => 1,
        }
    }

    pub fn io(path: impl Into<String>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidParameter { name, reason } => {
                CliError::Validation(format!("invalid config field `{}`: {reason}", field_name(name)))
            }
            CoreError::DimensionMismatch { .. }
            | CoreError::InvalidSubsystems(_)
            | CoreError::NotHermitian { .. }
            | CoreError::TraceNotUnit { .. }
            | CoreError::NotPositive { .. }
            | CoreError::OffResonant { .. } => CliError::Validation(e.to_string()),
            CoreError::DegenerateGenerator { .. }
            | CoreError::CoherentSteadyState { .. }
            | CoreError::NotStationary { .. }
            | CoreError::IntegrationFailed { .. } => CliError::Solver(e.to_string()),
            CoreError::SearchFailed(_) | CoreError::NoInteriorMaximum { .. } => CliError::Search(e.to_string()),
        }
    }
}

/// Config field that carries a core parameter (`T_c` is `t_c`, `E2` is `e2`).
pub fn field_name(core_name: &str) -> String {
    core_name.to_ascii_lowercase()
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
