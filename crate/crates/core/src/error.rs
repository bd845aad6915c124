use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A configured size limit was exceeded. Never silently truncated.
    #[error("resource limit exceeded for {group}: {what} exceeds {limit}")]
    ResourceLimit {
        group: String,
        what: &'static str,
        limit: usize,
    },
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
