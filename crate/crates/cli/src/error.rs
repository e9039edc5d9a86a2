use thiserror::Error;

/// Input problems; all of them map to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{file}:{line}:{column}: parse error: {msg}")]
    Parse { file: String, line: usize, column: usize, msg: String },

    #[error("{file}:{line}: unknown name {name:?} referenced from {from}")]
    UnknownName { file: String, line: usize, name: String, from: String },

    #[error("{file}:{line}: shape mismatch in {context}: {msg}")]
    Shape { file: String, line: usize, context: String, msg: String },

    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error(transparent)]
    Core(#[from] crossprod::Error),
}
