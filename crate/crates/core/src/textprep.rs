//! Text preprocessing: tokenization, stopword removal, Porter stemming and
//! part-of-speech tagging.
//!
//! [`preprocess`] runs the stages in a fixed order. Stopwords are matched on
//! surface forms, tokens are stemmed, stems that collide with a stopword are
//! dropped, and the survivors are tagged. No stage reorders tokens.

pub mod porter;

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

const ENGLISH_STOPWORDS: &str = include_str!("../data/stopwords_en.txt");

/// Which text unit a processed document came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Part {
    P1,
    P2,
    TargetText,
    ExcludeText,
}

impl Part {
    pub fn as_str(self) -> &'static str {
        match self {
            Part::P1 => "p1",
            Part::P2 => "p2",
            Part::TargetText => "target_text",
            Part::ExcludeText => "exclude_text",
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PosTag {
    Noun,
    Verb,
    Adj,
    Adv,
    Num,
    Other,
}

/// A preprocessed text unit: ordered `(token, tag)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcessedDoc {
    pub doc_id: String,
    pub part: Part,
    pub pairs: Vec<(String, PosTag)>,
}

impl ProcessedDoc {
    pub fn tokens(&self) -> impl Iterator<Item = &str> + '_ {
        self.pairs.iter().map(|(t, _)| t.as_str())
    }

    pub fn token_vec(&self) -> Vec<String> {
        self.tokens().map(String::from).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// A set of lowercase tokens to drop before embedding.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Stoplist {
    words: BTreeSet<String>,
}

impl Stoplist {
    /// The bundled English list.
    pub fn english() -> Self {
        Self::parse(ENGLISH_STOPWORDS)
    }

    /// Parses one token per line. `#` starts a comment; blank lines are
    /// ignored; entries are lowercased.
    pub fn parse(text: &str) -> Self {
        let words = text
            .lines()
            .map(|line| line.split('#').next().unwrap_or("").trim())
            .filter(|w| !w.is_empty())
            .map(|w| w.to_lowercase())
            .collect();
        Stoplist { words }
    }

    pub fn contains(&self, token: &str) -> bool {
        self.words.contains(token)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

impl<S: Into<String>> FromIterator<S> for Stoplist {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Stoplist {
            words: iter.into_iter().map(|w| w.into().to_lowercase()).collect(),
        }
    }
}

/// Splits text into lowercase alphanumeric tokens.
///
/// Anything that is not alphanumeric separates tokens, except a single hyphen
/// between two alphanumeric characters, which stays inside the token.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if c.is_alphanumeric() {
            current.extend(c.to_lowercase());
        } else if c == '-'
            && !current.is_empty()
            && chars.peek().is_some_and(|n| n.is_alphanumeric())
        {
            current.push('-');
        } else if !current.is_empty() {
            tokens.push(core::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

pub fn remove_stopwords(tokens: Vec<String>, stoplist: &Stoplist) -> Vec<String> {
    tokens
        .into_iter()
        .filter(|t| !stoplist.contains(t))
        .collect()
}

pub fn stem(tokens: &[String]) -> Vec<String> {
    tokens.iter().map(|t| porter::stem(t)).collect()
}

const ADVERBS: &[&str] = &[
    "also",
    "almost",
    "already",
    "always",
    "hence",
    "however",
    "moreover",
    "never",
    "often",
    "rather",
    "still",
    "therefore",
    "thus",
    "well",
    "furthermore",
    "even",
    "soon",
    "yet",
];
const ADJECTIVES: &[&str] = &[
    "new",
    "novel",
    "good",
    "bad",
    "high",
    "low",
    "large",
    "small",
    "short",
    "long",
    "poor",
    "great",
    "different",
    "better",
    "best",
    "worse",
    "worst",
    "many",
    "much",
];
const VERBS: &[&str] = &[
    "use", "propos", "propose", "improv", "improve", "show", "make", "take", "get", "find",
    "present", "achiev", "achieve", "address", "fail", "suffer", "lack",
];

/// Lexicon-then-suffix tagger. Tags are annotations and never change tokens.
pub fn tag_token(token: &str) -> PosTag {
    if ADVERBS.contains(&token) {
        return PosTag::Adv;
    }
    if ADJECTIVES.contains(&token) {
        return PosTag::Adj;
    }
    if VERBS.contains(&token) {
        return PosTag::Verb;
    }
    let has_digit = token.chars().any(|c| c.is_numeric());
    if has_digit {
        let numeric = token.chars().all(|c| c.is_numeric() || c == '-');
        return if numeric { PosTag::Num } else { PosTag::Other };
    }
    let len = token.chars().count();
    if len > 3 && (token.ends_with("ly") || token.ends_with("wise")) {
        return PosTag::Adv;
    }
    const ADJ_SUFFIXES: &[&str] = &["ous", "ful", "ive", "able", "ible", "less", "ical", "ish"];
    const VERB_SUFFIXES: &[&str] = &["ize", "ise", "ify", "ing", "ed"];
    if len > 4 && ADJ_SUFFIXES.iter().any(|s| token.ends_with(s)) {
        return PosTag::Adj;
    }
    if len > 4 && VERB_SUFFIXES.iter().any(|s| token.ends_with(s)) {
        return PosTag::Verb;
    }
    PosTag::Noun
}

pub fn pos_tag(tokens: Vec<String>) -> Vec<(String, PosTag)> {
    tokens
        .into_iter()
        .map(|t| {
            let tag = tag_token(&t);
            (t, tag)
        })
        .collect()
}

/// Full pipeline for one text unit.
pub fn preprocess(doc_id: &str, part: Part, text: &str, stoplist: &Stoplist) -> ProcessedDoc {
    let tokens = remove_stopwords(tokenize(text), stoplist);
    let stems = remove_stopwords(stem(&tokens), stoplist);
    ProcessedDoc {
        doc_id: doc_id.to_string(),
        part,
        pairs: pos_tag(stems),
    }
}
