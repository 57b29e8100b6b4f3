use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cloudinv::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 0 ok, 2 input or validation, 3 degenerate image, 4 degenerate generator.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(cloudinv::Error::DegenerateImage { .. }) => 3,
            CliError::Core(
                cloudinv::Error::DegenerateGenerator | cloudinv::Error::DegenerateTarget,
            ) => 4,
            _ => 2,
        }
    }

    pub fn hint(&self) -> Option<&'static str> {
        match self {
            CliError::Core(cloudinv::Error::DegenerateImage { .. }) => {
                Some("the transformed cloud has all x-coordinates equal, so its slope is undefined")
            }
            CliError::Core(
                cloudinv::Error::DegenerateGenerator | cloudinv::Error::DegenerateTarget,
            ) => Some("the transformation acts trivially on (M, H): every function is invariant"),
            _ => None,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
