use std::path::PathBuf;

/// Library-wide error type.
///
/// `Config` covers invalid run setups (bad thresholds, unusable policies,
/// infeasible tilts); `Input` covers malformed user data (unknown symbols,
/// word/matrix shape mismatches); `Model` covers violations of the
/// stochastic-model invariants; `TooLarge` guards the exhaustive oracles.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("model validation: {0}")]
    Model(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("configuration: {0}")]
    Config(String),

    #[error("parse error{}: {msg}", path.as_ref().map(|p| format!(" in {}", p.display())).unwrap_or_default())]
    Parse { path: Option<PathBuf>, msg: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("instance too large for exhaustive enumeration: {0}")]
    TooLarge(String),
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse {
            path: None,
            msg: msg.into(),
        }
    }

    /// Attach a file path to a parse error produced while reading that file.
    pub fn with_path(self, path: impl Into<PathBuf>) -> Self {
        match self {
            Error::Parse { msg, .. } => Error::Parse {
                path: Some(path.into()),
                msg,
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
