//! File formats. All CSV files are RFC 4180, UTF-8, with a header row.

pub mod corpus;
pub mod kg;
pub mod model;
pub mod sentiment;

use std::fs;
use std::path::Path;

use kgrec_core::Stoplist;

use crate::error::{FileError, FileErrorKind};

/// Fails with the first column of `required` missing from `headers`.
pub(crate) fn require_columns(
    headers: &csv::StringRecord,
    required: &[&'static str],
    path: &Path,
) -> Result<(), FileError> {
    match required.iter().find(|c| !headers.iter().any(|h| h == **c)) {
        Some(missing) => Err(FileError::at(path, FileErrorKind::MissingColumn(missing))),
        None => Ok(()),
    }
}

/// One token per line; `#` starts a comment.
pub fn load_stoplist(path: &Path) -> Result<Stoplist, FileError> {
    let text = fs::read_to_string(path).map_err(|e| FileError::at(path, e))?;
    Ok(Stoplist::parse(&text))
}
