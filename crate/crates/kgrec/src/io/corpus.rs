//! Paper-corpus CSV: `id,title,abstract,keywords,source_db,relevant`.
//!
//! Keywords are `;`-separated. `relevant` is `1`, `0` or empty.

use std::collections::HashSet;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use kgrec_core::{Corpus, CorpusError, PaperRecord, SourceDb};
use serde::Deserialize;

use super::require_columns;
use crate::error::{FileError, FileErrorKind, Location};

pub const COLUMNS: [&str; 6] = [
    "id",
    "title",
    "abstract",
    "keywords",
    "source_db",
    "relevant",
];

#[derive(Deserialize)]
struct Row {
    id: String,
    title: String,
    #[serde(rename = "abstract")]
    abstract_text: String,
    keywords: String,
    source_db: String,
    relevant: String,
}

fn parse_relevant(cell: &str) -> Result<Option<bool>, String> {
    match cell.trim() {
        "" => Ok(None),
        "1" => Ok(Some(true)),
        "0" => Ok(Some(false)),
        other => Err(format!("relevant must be 1, 0 or empty, got `{other}`")),
    }
}

pub fn split_keywords(cell: &str) -> Vec<String> {
    cell.split(';')
        .map(str::trim)
        .filter(|k| !k.is_empty())
        .map(String::from)
        .collect()
}

/// Reads a corpus; `path` only labels errors.
pub fn read_papers<R: Read>(reader: R, path: &Path) -> Result<Corpus, FileError> {
    let mut rdr = csv::Reader::from_reader(reader);
    let headers = rdr.headers().map_err(|e| FileError::csv(path, e))?.clone();
    require_columns(&headers, &COLUMNS, path)?;

    let mut papers = Vec::new();
    let mut seen = HashSet::new();
    for record in rdr.records() {
        let record = record.map_err(|e| FileError::csv(path, e))?;
        let line = record.position().map(|p| p.line());
        let at = |kind: FileErrorKind| FileError::new(Location::line(path, line), kind);
        let row: Row = record
            .deserialize(Some(&headers))
            .map_err(|e| FileError::csv(path, e))?;
        if row.id.is_empty() {
            return Err(at(CorpusError::EmptyId {
                index: papers.len(),
            }
            .into()));
        }
        if row.title.trim().is_empty() {
            return Err(at(CorpusError::EmptyTitle { id: row.id }.into()));
        }
        if !seen.insert(row.id.clone()) {
            return Err(at(CorpusError::DuplicateId(row.id).into()));
        }
        let source_db: SourceDb = row
            .source_db
            .trim()
            .parse()
            .map_err(|e: CorpusError| at(e.into()))?;
        let relevant = parse_relevant(&row.relevant).map_err(|m| at(FileErrorKind::Value(m)))?;
        papers.push(PaperRecord {
            id: row.id,
            title: row.title,
            abstract_text: row.abstract_text,
            keywords: split_keywords(&row.keywords),
            source_db,
            relevant,
        });
    }
    Corpus::new(papers).map_err(|e| FileError::at(path, e))
}

pub fn load_papers(path: &Path) -> Result<Corpus, FileError> {
    let file = File::open(path).map_err(|e| FileError::at(path, e))?;
    read_papers(file, path)
}

pub fn write_papers<W: Write>(writer: W, papers: &[PaperRecord]) -> csv::Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(COLUMNS)?;
    for p in papers {
        let relevant = match p.relevant {
            Some(true) => "1",
            Some(false) => "0",
            None => "",
        };
        wtr.write_record([
            p.id.as_str(),
            &p.title,
            &p.abstract_text,
            &p.keywords.join(";"),
            p.source_db.as_str(),
            relevant,
        ])?;
    }
    wtr.flush()?;
    Ok(())
}
