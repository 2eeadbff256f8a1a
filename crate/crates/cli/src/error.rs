use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Model(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Model(_) => 3,
            CliError::Runtime(_) => 4,
        }
    }
}

impl From<mrpals::airplane::BuildError> for CliError {
    fn from(e: mrpals::airplane::BuildError) -> Self {
        CliError::Model(e.to_string())
    }
}

impl From<mrpals::analysis::AnalysisError> for CliError {
    fn from(e: mrpals::analysis::AnalysisError) -> Self {
        use mrpals::analysis::AnalysisError as A;
        match e {
            A::UnknownProp(_) | A::Parse(_) | A::InvalidChoice { .. } => {
                CliError::Usage(e.to_string())
            }
            A::Exec { .. } | A::Budget { .. } => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(format!("i/o error: {e}"))
    }
}
