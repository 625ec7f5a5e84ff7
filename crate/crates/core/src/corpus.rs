//! Candidate papers and the two-part abstract split used for scoring.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("paper id must not be empty (record {index})")]
    EmptyId { index: usize },
    #[error("paper `{id}` has an empty title")]
    EmptyTitle { id: String },
    #[error("duplicate paper id `{0}`")]
    DuplicateId(String),
    #[error("unknown source database `{0}` (expected google_scholar, ei, ieee or other)")]
    UnknownSource(String),
}

/// Bibliographic database a candidate was retrieved from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceDb {
    GoogleScholar,
    Ei,
    Ieee,
    Other,
}

impl SourceDb {
    pub const ALL: [SourceDb; 4] = [
        SourceDb::GoogleScholar,
        SourceDb::Ei,
        SourceDb::Ieee,
        SourceDb::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SourceDb::GoogleScholar => "google_scholar",
            SourceDb::Ei => "ei",
            SourceDb::Ieee => "ieee",
            SourceDb::Other => "other",
        }
    }
}

impl fmt::Display for SourceDb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SourceDb {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SourceDb::ALL
            .into_iter()
            .find(|db| db.as_str() == s)
            .ok_or_else(|| CorpusError::UnknownSource(s.to_string()))
    }
}

/// One candidate paper.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperRecord {
    pub id: String,
    pub title: String,
    pub abstract_text: String,
    pub keywords: Vec<String>,
    pub source_db: SourceDb,
    /// Ground-truth relevance, when the corpus carries judgments.
    pub relevant: Option<bool>,
}

/// A validated, ordered collection of papers with unique ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    papers: Vec<PaperRecord>,
}

impl Corpus {
    pub fn new(papers: Vec<PaperRecord>) -> Result<Self, CorpusError> {
        let mut seen = BTreeSet::new();
        for (index, paper) in papers.iter().enumerate() {
            if paper.id.is_empty() {
                return Err(CorpusError::EmptyId { index });
            }
            if paper.title.trim().is_empty() {
                return Err(CorpusError::EmptyTitle {
                    id: paper.id.clone(),
                });
            }
            if !seen.insert(paper.id.as_str()) {
                return Err(CorpusError::DuplicateId(paper.id.clone()));
            }
        }
        Ok(Corpus { papers })
    }

    pub fn papers(&self) -> &[PaperRecord] {
        &self.papers
    }

    pub fn len(&self) -> usize {
        self.papers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.papers.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&PaperRecord> {
        self.papers.iter().find(|p| p.id == id)
    }

    /// Number of papers per source database, in [`SourceDb::ALL`] order.
    pub fn counts_by_source(&self) -> [(SourceDb, usize); 4] {
        SourceDb::ALL.map(|db| (db, self.papers.iter().filter(|p| p.source_db == db).count()))
    }

    pub fn into_papers(self) -> Vec<PaperRecord> {
        self.papers
    }
}

/// A paper's text divided into the two scoring units.
///
/// `p1_text` is the first half of the abstract. `p2_text` is the second half
/// followed by the title and the keywords.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitAbstract {
    pub paper_id: String,
    pub p1_text: String,
    pub p2_text: String,
}

/// Segments text into sentences.
///
/// A sentence ends at `.`, `!` or `?` when followed by whitespace or the end
/// of the text. Trailing text without a terminator forms a final sentence.
/// Sentences are trimmed and blank ones are dropped.
pub fn split_sentences(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if matches!(c, '.' | '!' | '?') {
            let at_boundary = match chars.peek() {
                None => true,
                Some(&(_, next)) => next.is_whitespace(),
            };
            if at_boundary {
                let end = i + c.len_utf8();
                push_trimmed(&mut out, &text[start..end]);
                start = end;
            }
        }
    }
    push_trimmed(&mut out, &text[start..]);
    out
}

fn push_trimmed<'a>(out: &mut Vec<&'a str>, s: &'a str) {
    let s = s.trim();
    if !s.is_empty() {
        out.push(s);
    }
}

/// Splits a record's abstract at its sentence midpoint, rounding toward p1.
pub fn split_abstract(record: &PaperRecord) -> SplitAbstract {
    let sentences = split_sentences(&record.abstract_text);
    let cut = sentences.len().div_ceil(2);
    let (head, tail) = sentences.split_at(cut);

    let p1_text = head.join(" ");
    let p2_parts: Vec<&str> = tail
        .iter()
        .copied()
        .chain(core::iter::once(record.title.trim()))
        .chain(record.keywords.iter().map(|k| k.trim()))
        .filter(|s| !s.is_empty())
        .collect();

    SplitAbstract {
        paper_id: record.id.clone(),
        p1_text,
        p2_text: p2_parts.join(" "),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn record(abstract_text: &str, title: &str, keywords: &[&str]) -> PaperRecord {
        PaperRecord {
            id: "P1".into(),
            title: title.into(),
            abstract_text: abstract_text.into(),
            keywords: keywords.iter().map(|k| k.to_string()).collect(),
            source_db: SourceDb::Ieee,
            relevant: None,
        }
    }

    #[test]
    fn even_split() {
        let r = record("S one. S two! S three? S four.", "T", &["k1"]);
        let s = split_abstract(&r);
        assert_eq!(s.p1_text, "S one. S two!");
        assert_eq!(s.p2_text, "S three? S four. T k1");
    }

    #[test]
    fn odd_split_rounds_toward_p1() {
        let r = record("A a. B b. C c.", "T", &["x", "y"]);
        let s = split_abstract(&r);
        assert_eq!(s.p1_text, "A a. B b.");
        assert_eq!(s.p2_text, "C c. T x y");
    }

    #[test]
    fn empty_abstract() {
        let s = split_abstract(&record("", "T", &["a", "b"]));
        assert_eq!(s.p1_text, "");
        assert_eq!(s.p2_text, "T a b");
    }

    #[test]
    fn single_sentence_goes_to_p1() {
        let s = split_abstract(&record("Only one", "T", &[]));
        assert_eq!(s.p1_text, "Only one");
        assert_eq!(s.p2_text, "T");
    }

    #[test]
    fn terminator_needs_following_whitespace() {
        assert_eq!(
            split_sentences("Version 2.0 works. e.g.this stays?  Yes"),
            vec!["Version 2.0 works.", "e.g.this stays?", "Yes"]
        );
        assert_eq!(split_sentences("Wait... what?!"), vec!["Wait...", "what?!"]);
        assert!(split_sentences("   ").is_empty());
    }

    #[test]
    fn duplicate_ids_rejected() {
        let a = record("", "T", &[]);
        let err = Corpus::new(vec![a.clone(), a]).unwrap_err();
        assert_eq!(err, CorpusError::DuplicateId("P1".into()));
    }

    #[test]
    fn empty_id_and_title_rejected() {
        let mut r = record("", "T", &[]);
        r.id.clear();
        assert_eq!(
            Corpus::new(vec![r]).unwrap_err(),
            CorpusError::EmptyId { index: 0 }
        );
        let r = record("", "  ", &[]);
        assert!(matches!(
            Corpus::new(vec![r]),
            Err(CorpusError::EmptyTitle { .. })
        ));
    }

    #[test]
    fn source_db_parses() {
        assert_eq!("ei".parse::<SourceDb>().unwrap(), SourceDb::Ei);
        assert_eq!(
            "google_scholar".parse::<SourceDb>().unwrap(),
            SourceDb::GoogleScholar
        );
        assert!("acm".parse::<SourceDb>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn sentence() -> impl Strategy<Value = String> {
            (
                "[a-z]{1,6}( [a-z0-9]{1,6}){0,4}",
                prop::sample::select(vec!['.', '!', '?']),
            )
                .prop_map(|(body, end)| alloc::format!("{body}{end}"))
        }

        proptest! {
            #[test]
            fn halves_partition_sentences(
                sents in prop::collection::vec(sentence(), 0..12),
                title in "[A-Z][a-z]{0,8}",
            ) {
                let r = record(&sents.join(" "), &title, &["kw"]);
                let split = split_abstract(&r);
                let s = sents.len();
                let p1 = split_sentences(&split.p1_text);
                prop_assert_eq!(p1.len(), s.div_ceil(2));

                let suffix = alloc::format!("{} kw", title);
                let p2_abstract = split.p2_text.strip_suffix(suffix.as_str()).unwrap().trim();
                let p2 = split_sentences(p2_abstract);
                prop_assert_eq!(p2.len(), s / 2);

                let rebuilt: Vec<&str> = p1.into_iter().chain(p2).collect();
                let expected: Vec<&str> = sents.iter().map(|s| s.as_str()).collect();
                prop_assert_eq!(rebuilt, expected);
            }
        }
    }
}
