use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed input data; `row` is the 1-based data row (header excluded).
    #[error("parse error at row {row}: {message}")]
    Parse { row: u64, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    /// An input outside an operation's domain (empty sample, zero words, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("size error: requested {requested} records but {label} holds only {available}")]
    Size {
        label: String,
        requested: usize,
        available: usize,
    },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("consistency error: {0}")]
    Consistency(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    /// Wraps an error with the corpus and, when known, the document it came from.
    #[error("corpus {corpus}{}: {source}", doc_id.as_ref().map(|d| format!(", document {d}")).unwrap_or_default())]
    Context {
        corpus: String,
        doc_id: Option<String>,
        #[source]
        source: Box<Error>,
    },

    /// A self-audit of produced artifacts disagreed with the in-memory results.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn in_corpus(self, corpus: &str, doc_id: Option<&str>) -> Self {
        Error::Context {
            corpus: corpus.to_string(),
            doc_id: doc_id.map(str::to_string),
            source: Box::new(self),
        }
    }

    /// True for errors caused by the caller's input or configuration, as
    /// opposed to failures inside the tool itself.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::Internal(_) => false,
            Error::Context { source, .. } => source.is_input_error(),
            _ => true,
        }
    }
}
