use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Core(#[from] gbinv_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("corpus: {0}")]
    Corpus(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        CliError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
