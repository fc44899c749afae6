use std::path::PathBuf;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("config {path}: {message}")]
    Config { path: PathBuf, message: String },

    #[error("{path}: {message}")]
    Data { path: PathBuf, message: String },

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("run aborted: {0}")]
    Numerical(#[from] ebcount_core::Error),

    #[error("run aborted in scenario {id}: {source}")]
    Scenario {
        id: String,
        source: ebcount_core::Error,
    },
}

impl CliError {
    /// 0 success, 1 usage or config, 2 data, 3 numerical abort.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config { .. } => 1,
            CliError::Data { .. } | CliError::Read { .. } | CliError::Write { .. } => 2,
            CliError::Numerical(_) | CliError::Scenario { .. } => 3,
        }
    }

    pub(crate) fn config(path: impl Into<PathBuf>, message: impl ToString) -> Self {
        CliError::Config {
            path: path.into(),
            message: message.to_string(),
        }
    }

    pub(crate) fn data(path: impl Into<PathBuf>, message: impl ToString) -> Self {
        CliError::Data {
            path: path.into(),
            message: message.to_string(),
        }
    }
}
