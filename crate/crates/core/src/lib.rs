//! Core algorithms of a knowledge-graph-driven paper recommender.
//!
//! Candidate papers are split into two abstract halves, preprocessed and
//! embedded with a PV-DM paragraph-vector model. Each paper is compared to a
//! target description (a challenge plus the technologies that should solve
//! it) and to an exclude description (technologies the reader already
//! knows), with the first-half similarity weighted by the signed sentiment of
//! that half. Papers are ranked in two rounds: descending target similarity,
//! then ascending exclude similarity over the round-one head.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, persistence
//! and the command-line pipeline live in the `kgrec` crate.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod corpus;
pub mod embed;
pub mod eval;
pub mod kg;
pub mod ranker;
pub mod sentiment;
pub mod textprep;

pub use corpus::{Corpus, CorpusError, PaperRecord, SourceDb, SplitAbstract};
pub use embed::{cosine, DocVector, EmbedError, EmbedParams, EmbeddingModel};
pub use eval::{EvalError, EvalReport, RunResult};
pub use kg::{Graph, GraphRole, KgEdge, KgError, KgNode, NodeLabel, Relation};
pub use ranker::{RankError, RankedList, SimilarityScore};
pub use sentiment::{SentimentError, SentimentLabel, SentimentModel};
pub use textprep::{Part, PosTag, ProcessedDoc, Stoplist};
