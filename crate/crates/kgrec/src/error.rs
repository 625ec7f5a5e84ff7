use std::fmt;
use std::io;
use std::path::{Path, PathBuf};

use kgrec_core::{CorpusError, EmbedError, EvalError, KgError, RankError, SentimentError};

/// Where in an input file a problem was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Location {
    pub path: PathBuf,
    /// 1-based line number, when known.
    pub line: Option<u64>,
}

impl Location {
    pub fn file(path: &Path) -> Self {
        Location {
            path: path.to_path_buf(),
            line: None,
        }
    }

    pub fn line(path: &Path, line: Option<u64>) -> Self {
        Location {
            path: path.to_path_buf(),
            line,
        }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.path.display())?;
        if let Some(line) = self.line {
            write!(f, ", line {line}")?;
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum FileErrorKind {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("missing required column `{0}`")]
    MissingColumn(&'static str),
    #[error("malformed CSV: {0}")]
    Csv(String),
    #[error("{0}")]
    Value(String),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Kg(#[from] KgError),
    #[error(transparent)]
    Sentiment(#[from] SentimentError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format `{found}` (expected `{expected}`)")]
    Format { expected: String, found: String },
}

/// A problem with one input file.
#[derive(Debug, thiserror::Error)]
#[error("{location}: {kind}")]
pub struct FileError {
    pub location: Location,
    pub kind: FileErrorKind,
}

impl FileError {
    pub fn new(location: Location, kind: impl Into<FileErrorKind>) -> Self {
        FileError {
            location,
            kind: kind.into(),
        }
    }

    pub fn at(path: &Path, kind: impl Into<FileErrorKind>) -> Self {
        Self::new(Location::file(path), kind)
    }

    /// Wraps a csv error, keeping its line number when it has one.
    pub fn csv(path: &Path, err: csv::Error) -> Self {
        let line = err.position().map(|p| p.line());
        match err.into_kind() {
            csv::ErrorKind::Io(e) => Self::new(Location::line(path, line), e),
            kind => {
                let message = match kind {
                    csv::ErrorKind::Utf8 { err, .. } => format!("invalid UTF-8: {err}"),
                    csv::ErrorKind::UnequalLengths {
                        expected_len, len, ..
                    } => format!("expected {expected_len} fields, found {len}"),
                    csv::ErrorKind::Deserialize { err, .. } => err.to_string(),
                    other => format!("{other:?}"),
                };
                Self::new(Location::line(path, line), FileErrorKind::Csv(message))
            }
        }
    }
}

/// Process exit status for each error class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Usage = 1,
    Data = 2,
    Internal = 3,
}

/// Pipeline error. The message starts with the module that failed.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("config: {0}")]
    Config(String),
    #[error("{module}: {source}")]
    File {
        module: &'static str,
        source: Box<FileError>,
    },
    #[error("kg: {0}")]
    Kg(#[from] KgError),
    #[error("embed: {0}")]
    Embed(#[from] EmbedError),
    #[error("sentiment: {0}")]
    Sentiment(#[from] SentimentError),
    #[error("ranker: {0}")]
    Rank(#[from] RankError),
    #[error("eval: {0}")]
    Eval(#[from] EvalError),
    #[error("eval: {0}")]
    NoRelevance(String),
    #[error("output: cannot write {}: {source}", path.display())]
    Output { path: PathBuf, source: io::Error },
}

impl Error {
    pub fn file(module: &'static str, source: FileError) -> Self {
        Error::File {
            module,
            source: Box::new(source),
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            Error::Config(_) => ExitCode::Usage,
            Error::Output { .. } => ExitCode::Internal,
            Error::File { source, .. } if matches!(source.kind, FileErrorKind::Io(_)) => {
                ExitCode::Internal
            }
            _ => ExitCode::Data,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
