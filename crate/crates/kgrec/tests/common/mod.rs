#![allow(dead_code)]

use std::path::{Path, PathBuf};

use kgrec::kgrec_core::textprep::{Part, PosTag, ProcessedDoc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn fixture(name: &str) -> PathBuf {
    fixtures().join(name)
}

pub fn doc(id: &str, tokens: &[String]) -> ProcessedDoc {
    ProcessedDoc {
        doc_id: id.to_string(),
        part: Part::P1,
        pairs: tokens.iter().map(|t| (t.clone(), PosTag::Noun)).collect(),
    }
}

/// 20 docs per topic of 40 tokens, topics drawing from disjoint 50-token
/// vocabularies. Topic `a` comes first.
pub fn two_topic_corpus(seed: u64) -> Vec<ProcessedDoc> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut docs = Vec::new();
    for topic in ['a', 'b'] {
        for i in 0..20 {
            let tokens: Vec<String> = (0..40)
                .map(|_| format!("{topic}{:02}", rng.random_range(0..50)))
                .collect();
            docs.push(doc(&format!("{topic}{i}"), &tokens));
        }
    }
    docs
}
