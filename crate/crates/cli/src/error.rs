use thiserror::Error;

/// Exit status for configuration and usage problems.
pub const EXIT_CONFIG: i32 = 2;
/// Exit status for numerical-validity failures.
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error(transparent)]
    Model(#[from] rydline::Error),

    #[error("cannot write {path}: {source}")]
    Output {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use rydline::Error as E;
        match self {
            CliError::Config(_) | CliError::Usage(_) | CliError::Output { .. } => EXIT_CONFIG,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::Model(e) => match e {
                E::Domain(_) | E::UnknownUnit(_) | E::Parse(_) | E::DimensionMismatch { .. } => {
                    EXIT_CONFIG
                }
                E::Singularity
                | E::Truncation { .. }
                | E::NonPhysical(_)
                | E::ShapeMismatch { .. }
                | E::Integration { .. } => EXIT_NUMERICAL,
            },
        }
    }
}
