//! Multinomial Naive Bayes over two sentiment classes, used to weight the
//! first abstract half of a candidate by its signed polarity.

use alloc::collections::BTreeMap;
use alloc::string::String;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SentimentError {
    #[error("no training documents labeled `{0}`")]
    MissingClass(SentimentLabel),
    #[error("smoothing constant must be positive and finite, got {0}")]
    InvalidAlpha(String),
    #[error("unknown sentiment label `{0}` (expected positive or negative)")]
    UnknownLabel(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SentimentLabel {
    Positive,
    Negative,
}

impl SentimentLabel {
    fn slot(self) -> usize {
        match self {
            SentimentLabel::Positive => 0,
            SentimentLabel::Negative => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SentimentLabel::Positive => "positive",
            SentimentLabel::Negative => "negative",
        }
    }
}

impl core::fmt::Display for SentimentLabel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for SentimentLabel {
    type Err = SentimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "positive" => Ok(SentimentLabel::Positive),
            "negative" => Ok(SentimentLabel::Negative),
            other => Err(SentimentError::UnknownLabel(other.into())),
        }
    }
}

/// Posterior over the two classes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Posterior {
    pub positive: f64,
    pub negative: f64,
}

/// Trained classifier. Log-probabilities are stored per class as
/// `[positive, negative]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentimentModel {
    class_log_priors: [f64; 2],
    token_log_likelihoods: BTreeMap<String, [f64; 2]>,
    /// Shared pseudo-token for anything unseen in training.
    unk_log_likelihood: [f64; 2],
    alpha: f64,
}

impl SentimentModel {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Distinct training tokens, excluding the unknown pseudo-token.
    pub fn vocab_size(&self) -> usize {
        self.token_log_likelihoods.len()
    }

    pub fn log_prior(&self, label: SentimentLabel) -> f64 {
        self.class_log_priors[label.slot()]
    }

    /// `ln P(token | label)`, falling back to the unknown pseudo-token.
    pub fn log_likelihood(&self, token: &str, label: SentimentLabel) -> f64 {
        self.token_log_likelihoods
            .get(token)
            .unwrap_or(&self.unk_log_likelihood)[label.slot()]
    }

    pub fn unk_log_likelihood(&self, label: SentimentLabel) -> f64 {
        self.unk_log_likelihood[label.slot()]
    }

    /// Iterates `(token, [ln P(t|pos), ln P(t|neg)])`.
    pub fn likelihoods(&self) -> impl Iterator<Item = (&str, [f64; 2])> + '_ {
        self.token_log_likelihoods
            .iter()
            .map(|(t, l)| (t.as_str(), *l))
    }
}

/// Trains with Laplace (add-`alpha`) smoothing. The vocabulary is every token
/// seen in training plus one unknown pseudo-token per class.
pub fn train_nb<I, D, S>(labeled_docs: I, alpha: f64) -> Result<SentimentModel, SentimentError>
where
    I: IntoIterator<Item = (D, SentimentLabel)>,
    D: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(SentimentError::InvalidAlpha(alloc::format!("{alpha}")));
    }
    let mut doc_counts = [0u64; 2];
    let mut token_totals = [0u64; 2];
    let mut counts: BTreeMap<String, [u64; 2]> = BTreeMap::new();
    for (tokens, label) in labeled_docs {
        let slot = label.slot();
        doc_counts[slot] += 1;
        for t in tokens {
            counts.entry(String::from(t.as_ref())).or_insert([0, 0])[slot] += 1;
            token_totals[slot] += 1;
        }
    }
    for label in [SentimentLabel::Positive, SentimentLabel::Negative] {
        if doc_counts[label.slot()] == 0 {
            return Err(SentimentError::MissingClass(label));
        }
    }

    let total_docs = (doc_counts[0] + doc_counts[1]) as f64;
    let class_log_priors = doc_counts.map(|c| libm::log(c as f64 / total_docs));
    let smoothed_vocab = (counts.len() + 1) as f64 * alpha;
    let denominators = token_totals.map(|t| libm::log(t as f64 + smoothed_vocab));
    let log_lik = |count: u64, slot: usize| libm::log(count as f64 + alpha) - denominators[slot];

    let token_log_likelihoods = counts
        .into_iter()
        .map(|(t, c)| (t, [log_lik(c[0], 0), log_lik(c[1], 1)]))
        .collect();
    Ok(SentimentModel {
        class_log_priors,
        token_log_likelihoods,
        unk_log_likelihood: [log_lik(0, 0), log_lik(0, 1)],
        alpha,
    })
}

/// Class posterior for a bag of tokens, normalized in log space.
///
/// Tokens are counted first and summed in sorted order, so the result does
/// not depend on token order at all.
pub fn prob_classify<S: AsRef<str>>(model: &SentimentModel, tokens: &[S]) -> Posterior {
    let mut bag: BTreeMap<&str, u32> = BTreeMap::new();
    for t in tokens {
        *bag.entry(t.as_ref()).or_insert(0) += 1;
    }
    let mut scores = model.class_log_priors;
    for (t, n) in bag {
        for label in [SentimentLabel::Positive, SentimentLabel::Negative] {
            scores[label.slot()] += f64::from(n) * model.log_likelihood(t, label);
        }
    }
    let max = scores[0].max(scores[1]);
    let e = scores.map(|s| libm::exp(s - max));
    let z = e[0] + e[1];
    Posterior {
        positive: e[0] / z,
        negative: e[1] / z,
    }
}

/// Signed polarity `P(positive) - P(negative)` in `[-1, 1]`; 0 for no tokens.
pub fn emo<S: AsRef<str>>(model: &SentimentModel, tokens: &[S]) -> f64 {
    if tokens.is_empty() {
        return 0.0;
    }
    let p = prob_classify(model, tokens);
    p.positive - p.negative
}
