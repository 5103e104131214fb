use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input, including out-of-range indices.
    #[error("input error: {0}")]
    Input(String),
    /// Well-formed input that the command cannot accept.
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Io(_) => crate::EXIT_INPUT,
            CliError::Precondition(_) => crate::EXIT_PRECONDITION,
        }
    }
}
