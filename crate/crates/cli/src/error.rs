use thiserror::Error;

/// Input problems; every variant maps to exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },

    #[error("{path}: {location}: {message}")]
    Invalid { path: String, location: String, message: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] hodgegauge_core::Error),
}

impl CliError {
    pub fn parse(path: &str, e: &serde_json::Error) -> Self {
        let full = e.to_string();
        let message = match full.rfind(" at line ") {
            Some(i) => full[..i].to_string(),
            None => full,
        };
        CliError::Parse { path: path.to_string(), line: e.line(), column: e.column(), message }
    }
}
