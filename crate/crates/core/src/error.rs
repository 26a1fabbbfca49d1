use thiserror::Error;

/// Errors surfaced by the library and mapped onto CLI exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("resource limit exceeded: {what} ({actual} > cap {cap})")]
    Resource {
        what: &'static str,
        actual: String,
        cap: u64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status for this error: 2 parse, 3 resource, 4 io.
    /// Domain errors only arise from programming mistakes at the CLI layer
    /// and share the parse code.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Domain(_) => 2,
            Error::Resource { .. } => 3,
            Error::Io(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
