use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// A continuous-model family contained a repeated endpoint value.
    #[error("interval family has duplicate endpoint {value}")]
    DuplicateEndpoint { value: f64 },

    /// An exact or brute-force routine was asked for an instance beyond its
    /// explosion guard.
    #[error("{what} supports n <= {max}, got {n}")]
    TooLarge {
        what: &'static str,
        n: usize,
        max: usize,
    },

    #[error("unknown {kind} '{name}'; valid names: {valid}")]
    UnknownName {
        kind: &'static str,
        name: String,
        valid: String,
    },

    /// A Monte Carlo trial failed; carries the stream seed so the failing
    /// draw sequence can be replayed.
    #[error("trial {trial} (stream seed {stream:#018x}) failed: {source}")]
    Trial {
        trial: u64,
        stream: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
