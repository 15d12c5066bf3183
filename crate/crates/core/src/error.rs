use std::io;
use thiserror::Error;

/// Errors produced by parsing, configuration, and metric computation.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input data (CoNLL-U, JSONL, embedding file). Line numbers
    /// are 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Invalid configuration: unknown metric or key, inverted bounds, or a
    /// metric selection whose resource requirements are not met.
    #[error("configuration error: {0}")]
    Config(String),

    /// A syntactic metric was requested for a document without the required
    /// annotations.
    #[error("document {doc_id:?} lacks the annotations required by {metric}")]
    RequiresSyntax { doc_id: String, metric: &'static str },

    /// Syllable counting was asked of a word with no alphabetic character.
    #[error("no alphabetic character in word {0:?}")]
    NoAlphabetic(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
