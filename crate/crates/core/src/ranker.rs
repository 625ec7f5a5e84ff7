//! Sentiment-weighted split-abstract similarity and two-round ranking.
//!
//! For a paper split into `p1` (first abstract half) and `p2` (second half,
//! title and keywords), and a description vector `t`:
//!
//! ```text
//! sim(p, t) = cos(p1, t) * emo(p1) + cos(p2, t)
//! ```
//!
//! Round one sorts by descending similarity to the target description and
//! keeps the first `k` papers. Round two re-sorts those by ascending
//! similarity to the exclude description; its first `n` entries are the
//! recommendation. Ties always fall back to ascending paper id.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::embed::{cosine, infer_vector, DocVector, EmbedError, EmbeddingModel};
use crate::sentiment::{emo, SentimentModel};

pub const DEFAULT_ROUND1_CUTOFF: usize = 20;
pub const DEFAULT_FINAL_SIZE: usize = 5;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RankError {
    #[error("no scores to rank")]
    EmptyInput,
    #[error("invalid cutoffs: need k >= n >= 1, got k = {k}, n = {n}")]
    InvalidCutoff { k: usize, n: usize },
    #[error("paper `{0}` is scored twice")]
    DuplicatePaper(String),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

/// Per-paper score components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityScore {
    pub paper_id: String,
    pub cos_p1_target: f64,
    pub cos_p2_target: f64,
    pub cos_p1_exclude: f64,
    pub cos_p2_exclude: f64,
    pub emo_p1: f64,
    pub sim_target: f64,
    pub sim_exclude: f64,
}

impl SimilarityScore {
    pub fn from_components(
        paper_id: impl Into<String>,
        cos_p1_target: f64,
        cos_p2_target: f64,
        cos_p1_exclude: f64,
        cos_p2_exclude: f64,
        emo_p1: f64,
    ) -> Self {
        SimilarityScore {
            paper_id: paper_id.into(),
            cos_p1_target,
            cos_p2_target,
            cos_p1_exclude,
            cos_p2_exclude,
            emo_p1,
            sim_target: cos_p1_target * emo_p1 + cos_p2_target,
            sim_exclude: cos_p1_exclude * emo_p1 + cos_p2_exclude,
        }
    }
}

/// Scores a paper from already-computed vectors and sentiment.
pub fn score_vectors(
    paper_id: impl Into<String>,
    p1: &DocVector,
    p2: &DocVector,
    emo_p1: f64,
    target: &DocVector,
    exclude: &DocVector,
) -> Result<SimilarityScore, RankError> {
    Ok(SimilarityScore::from_components(
        paper_id,
        cosine(p1, target)?,
        cosine(p2, target)?,
        cosine(p1, exclude)?,
        cosine(p2, exclude)?,
        emo_p1,
    ))
}

/// Everything needed to score candidates against one target/exclude pair.
/// Shared read-only, so distinct papers can be scored concurrently.
#[derive(Debug, Clone, Copy)]
pub struct Scorer<'a> {
    pub embedding: &'a EmbeddingModel,
    pub sentiment: &'a SentimentModel,
    pub target: &'a DocVector,
    pub exclude: &'a DocVector,
    pub infer_epochs: usize,
}

impl Scorer<'_> {
    /// Infers `p1`/`p2` vectors from preprocessed tokens and scores them.
    pub fn score_paper<S: AsRef<str>>(
        &self,
        paper_id: &str,
        p1_tokens: &[S],
        p2_tokens: &[S],
    ) -> Result<SimilarityScore, RankError> {
        let p1 = infer_vector(self.embedding, p1_tokens, self.infer_epochs);
        let p2 = infer_vector(self.embedding, p2_tokens, self.infer_epochs);
        let emo_p1 = emo(self.sentiment, p1_tokens);
        score_vectors(paper_id, &p1, &p2, emo_p1, self.target, self.exclude)
    }
}

/// Output of the two-round ranking.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedList {
    /// All papers by descending target similarity.
    pub round1: Vec<String>,
    pub round1_cutoff: usize,
    /// The round-one head by ascending exclude similarity.
    pub round2: Vec<String>,
    /// The first `n` of round two.
    #[serde(rename = "top5")]
    pub top: Vec<String>,
}

fn by_id(a: &SimilarityScore, b: &SimilarityScore) -> Ordering {
    a.paper_id.cmp(&b.paper_id)
}

pub fn rank(scores: &[SimilarityScore], k: usize, n: usize) -> Result<RankedList, RankError> {
    if scores.is_empty() {
        return Err(RankError::EmptyInput);
    }
    if n == 0 || k < n {
        return Err(RankError::InvalidCutoff { k, n });
    }
    let mut seen = BTreeSet::new();
    for s in scores {
        if !seen.insert(s.paper_id.as_str()) {
            return Err(RankError::DuplicatePaper(s.paper_id.clone()));
        }
    }

    let mut first: Vec<&SimilarityScore> = scores.iter().collect();
    first.sort_by(|a, b| {
        b.sim_target
            .total_cmp(&a.sim_target)
            .then_with(|| by_id(a, b))
    });

    let mut second: Vec<&SimilarityScore> = first.iter().take(k).copied().collect();
    second.sort_by(|a, b| {
        a.sim_exclude
            .total_cmp(&b.sim_exclude)
            .then_with(|| by_id(a, b))
    });

    let ids = |v: &[&SimilarityScore]| v.iter().map(|s| s.paper_id.clone()).collect::<Vec<_>>();
    let round2 = ids(&second);
    Ok(RankedList {
        round1: ids(&first),
        round1_cutoff: k,
        top: round2.iter().take(n).cloned().collect(),
        round2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn score(id: &str, target: f64, exclude: f64) -> SimilarityScore {
        SimilarityScore {
            paper_id: id.to_string(),
            cos_p1_target: 0.0,
            cos_p2_target: target,
            cos_p1_exclude: 0.0,
            cos_p2_exclude: exclude,
            emo_p1: 0.0,
            sim_target: target,
            sim_exclude: exclude,
        }
    }

    fn ids(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn zero_emotion_drops_first_term() {
        let s = SimilarityScore::from_components("p", 0.9, 0.3, -0.4, 0.2, 0.0);
        assert_eq!(s.sim_target, 0.3);
        assert_eq!(s.sim_exclude, 0.2);
    }

    #[test]
    fn negative_emotion_flips_first_term() {
        let s = SimilarityScore::from_components("p", 1.0, 0.0, 0.0, 0.0, -1.0);
        assert_eq!(s.sim_target, -1.0);
    }

    #[test]
    fn score_vectors_uses_cosines() {
        let v = |xs: &[f64]| DocVector::new(xs.to_vec()).unwrap();
        let s = score_vectors(
            "p",
            &v(&[1.0, 0.0]),
            &v(&[0.0, 1.0]),
            0.5,
            &v(&[1.0, 0.0]),
            &v(&[0.0, 2.0]),
        )
        .unwrap();
        assert_eq!(s.cos_p1_target, 1.0);
        assert_eq!(s.cos_p2_target, 0.0);
        assert_eq!(s.sim_target, 0.5);
        assert_eq!(s.sim_exclude, 1.0);
        assert!(matches!(
            score_vectors(
                "p",
                &v(&[1.0]),
                &v(&[0.0, 1.0]),
                0.5,
                &v(&[1.0, 0.0]),
                &v(&[0.0, 2.0])
            ),
            Err(RankError::Embed(EmbedError::DimensionMismatch { .. }))
        ));
    }

    #[test]
    fn two_rounds_by_hand() {
        let scores = vec![
            score("A", 0.9, 0.8),
            score("B", 0.5, 0.2),
            score("C", 0.1, 0.0),
        ];
        let r = rank(&scores, 2, 1).unwrap();
        assert_eq!(r.round1, ids(&["A", "B", "C"]));
        assert_eq!(r.round2, ids(&["B", "A"]));
        assert_eq!(r.top, ids(&["B"]));
    }

    #[test]
    fn ties_break_by_id() {
        let scores = vec![
            score("c", 0.5, 0.1),
            score("a", 0.5, 0.1),
            score("b", 0.5, 0.1),
        ];
        let r = rank(&scores, 5, 5).unwrap();
        assert_eq!(r.round1, ids(&["a", "b", "c"]));
        assert_eq!(r.round2, ids(&["a", "b", "c"]));
        assert_eq!(r.top.len(), 3);
    }

    #[test]
    fn rank_errors() {
        assert_eq!(rank(&[], 20, 5), Err(RankError::EmptyInput));
        let s = vec![score("a", 0.0, 0.0)];
        assert_eq!(rank(&s, 4, 5), Err(RankError::InvalidCutoff { k: 4, n: 5 }));
        assert_eq!(rank(&s, 4, 0), Err(RankError::InvalidCutoff { k: 4, n: 0 }));
        let dup = vec![score("a", 0.0, 0.0), score("a", 1.0, 0.0)];
        assert_eq!(rank(&dup, 5, 5), Err(RankError::DuplicatePaper("a".into())));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn scores() -> impl Strategy<Value = Vec<SimilarityScore>> {
            // Values on a 1/1024 grid so shifted sums stay exact.
            prop::collection::vec((-2048i32..2048, -2048i32..2048), 1..60).prop_map(|v| {
                v.into_iter()
                    .enumerate()
                    .map(|(i, (t, e))| {
                        score(
                            &alloc::format!("p{i:03}"),
                            f64::from(t) / 1024.0,
                            f64::from(e) / 1024.0,
                        )
                    })
                    .collect()
            })
        }

        proptest! {
            #[test]
            fn round2_permutes_round1_head(s in scores(), k in 5usize..30) {
                let r = rank(&s, k, 5).unwrap();
                let head: BTreeSet<&String> = r.round1.iter().take(k).collect();
                let second: BTreeSet<&String> = r.round2.iter().collect();
                prop_assert_eq!(r.round2.len(), k.min(s.len()));
                prop_assert_eq!(head, second.clone());
                prop_assert_eq!(r.top.len(), 5.min(r.round2.len()));
                prop_assert!(r.top.iter().all(|t| second.contains(t)));
            }

            #[test]
            fn shifting_targets_keeps_round1(s in scores(), c in -64i32..64) {
                let c = f64::from(c) / 8.0;
                let shifted: Vec<SimilarityScore> = s
                    .iter()
                    .map(|x| SimilarityScore { sim_target: x.sim_target + c, ..x.clone() })
                    .collect();
                prop_assert_eq!(rank(&s, 10, 5).unwrap().round1, rank(&shifted, 10, 5).unwrap().round1);
            }

            #[test]
            fn lowering_exclude_never_hurts(s in scores(), pick in any::<prop::sample::Index>(), delta in 0.0f64..1.0) {
                let k = 10;
                let before = rank(&s, k, 5).unwrap();
                let id = before.round2[pick.index(before.round2.len())].clone();
                let lowered: Vec<SimilarityScore> = s
                    .iter()
                    .map(|x| if x.paper_id == id {
                        SimilarityScore { sim_exclude: x.sim_exclude - delta, ..x.clone() }
                    } else {
                        x.clone()
                    })
                    .collect();
                let after = rank(&lowered, k, 5).unwrap();
                let pos = |r: &RankedList| r.round2.iter().position(|p| *p == id).unwrap();
                prop_assert!(pos(&after) <= pos(&before));
            }
        }
    }
}
