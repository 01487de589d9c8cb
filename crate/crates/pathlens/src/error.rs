use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{}:{line}: {message}", path.display())]
    Parse { path: PathBuf, line: u64, message: String },

    #[error("{}: {source}", path.display())]
    Invalid { path: PathBuf, source: pathlens_core::Error },

    #[error(transparent)]
    Core(#[from] pathlens_core::Error),

    #[error("config {}:{line}: {message}", path.display())]
    Config { path: PathBuf, line: usize, message: String },

    #[error("{0}")]
    Usage(String),
}

impl Error {
    /// Process exit code: 2 for usage and configuration problems, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Config { .. } => 2,
            _ => 1,
        }
    }
}
