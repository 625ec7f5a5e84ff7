//! Labeled sentiment CSV: `label,text` with label `positive` or `negative`.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use kgrec_core::textprep::{preprocess, Part};
use kgrec_core::{SentimentError, SentimentLabel, Stoplist};
use serde::Deserialize;

use super::require_columns;
use crate::error::{FileError, Location};

pub const COLUMNS: [&str; 2] = ["label", "text"];

/// Methodological sentences shipped with the tool, used when no corpus is
/// configured.
pub const SEED_CORPUS: &str = include_str!("../../data/sentiment_seed.csv");

#[derive(Deserialize)]
struct Row {
    label: String,
    text: String,
}

/// Reads labeled sentences and preprocesses each text.
pub fn read_labeled<R: Read>(
    reader: R,
    path: &Path,
    stoplist: &Stoplist,
) -> Result<Vec<(Vec<String>, SentimentLabel)>, FileError> {
    let mut rdr = csv::Reader::from_reader(reader);
    let headers = rdr.headers().map_err(|e| FileError::csv(path, e))?.clone();
    require_columns(&headers, &COLUMNS, path)?;
    let mut docs = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| FileError::csv(path, e))?;
        let at = Location::line(path, record.position().map(|p| p.line()));
        let row: Row = record
            .deserialize(Some(&headers))
            .map_err(|e| FileError::csv(path, e))?;
        let label: SentimentLabel = row
            .label
            .trim()
            .parse()
            .map_err(|e: SentimentError| FileError::new(at, e))?;
        let id = docs.len().to_string();
        let tokens = preprocess(&id, Part::P1, &row.text, stoplist).token_vec();
        docs.push((tokens, label));
    }
    Ok(docs)
}

pub fn load_labeled(
    path: &Path,
    stoplist: &Stoplist,
) -> Result<Vec<(Vec<String>, SentimentLabel)>, FileError> {
    let file = File::open(path).map_err(|e| FileError::at(path, e))?;
    read_labeled(file, path, stoplist)
}

pub fn seed_corpus(stoplist: &Stoplist) -> Vec<(Vec<String>, SentimentLabel)> {
    read_labeled(SEED_CORPUS.as_bytes(), Path::new("<seed corpus>"), stoplist)
        .expect("bundled seed corpus is valid")
}
