#![allow(dead_code)]

use kgrec_core::textprep::{Part, PosTag, ProcessedDoc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const VOCAB_PER_TOPIC: usize = 50;
pub const DOCS_PER_TOPIC: usize = 20;
pub const DOC_LEN: usize = 40;

pub fn doc(id: &str, tokens: &[String]) -> ProcessedDoc {
    ProcessedDoc {
        doc_id: id.to_string(),
        part: Part::P1,
        pairs: tokens.iter().map(|t| (t.clone(), PosTag::Noun)).collect(),
    }
}

pub fn topic_tokens(topic: char, len: usize, rng: &mut ChaCha8Rng) -> Vec<String> {
    (0..len)
        .map(|_| format!("{topic}{:02}", rng.random_range(0..VOCAB_PER_TOPIC)))
        .collect()
}

/// Topic `a` docs first, then topic `b`, each over its own 50-token vocabulary.
pub fn two_topic_corpus(seed: u64) -> Vec<ProcessedDoc> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ['a', 'b']
        .into_iter()
        .flat_map(|topic| (0..DOCS_PER_TOPIC).map(move |i| (topic, i)))
        .map(|(topic, i)| {
            doc(
                &format!("{topic}{i}"),
                &topic_tokens(topic, DOC_LEN, &mut rng),
            )
        })
        .collect()
}
