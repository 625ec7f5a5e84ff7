//! PV-DM paragraph vectors trained with negative sampling.
//!
//! For every in-vocabulary position the document vector and the word vectors
//! within `window` positions are averaged into a hidden vector `h`, which
//! predicts the center token against `negative` noise tokens drawn from the
//! unigram distribution raised to 0.75. All randomness comes from a ChaCha8
//! stream seeded by [`EmbedParams::seed`]; training is single-threaded so a
//! fixed seed reproduces the model bit for bit.

pub mod objective;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::textprep::ProcessedDoc;

pub const DEFAULT_INFER_EPOCHS: usize = 50;

/// Mixed into the model seed for inference so inference draws are
/// independent of the training stream.
const INFER_SEED_SALT: u64 = 0x9e37_79b9_7f4a_7c15;
const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;
const NOISE_EXPONENT: f64 = 0.75;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EmbedError {
    #[error("no documents to train on")]
    EmptyCorpus,
    #[error("vocabulary is empty after applying min_count {min_count}")]
    EmptyVocab { min_count: u64 },
    #[error("invalid embedding parameter: {0}")]
    InvalidParams(&'static str),
    #[error("vector dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("vector has a non-finite component")]
    NonFinite,
    #[error("duplicate document id `{0}`")]
    DuplicateDoc(String),
    #[error("inconsistent model data: {0}")]
    Inconsistent(&'static str),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbedParams {
    pub dim: usize,
    pub window: usize,
    pub negative: usize,
    pub epochs: usize,
    pub lr_start: f64,
    pub lr_end: f64,
    pub min_count: u64,
    pub seed: u64,
}

impl Default for EmbedParams {
    fn default() -> Self {
        EmbedParams {
            dim: 100,
            window: 5,
            negative: 5,
            epochs: 40,
            lr_start: 0.025,
            lr_end: 0.0001,
            min_count: 2,
            seed: 1,
        }
    }
}

impl EmbedParams {
    pub fn validate(&self) -> Result<(), EmbedError> {
        if self.dim == 0 {
            return Err(EmbedError::InvalidParams("dim must be positive"));
        }
        if self.window == 0 {
            return Err(EmbedError::InvalidParams("window must be positive"));
        }
        if self.epochs == 0 {
            return Err(EmbedError::InvalidParams("epochs must be positive"));
        }
        if self.min_count == 0 {
            return Err(EmbedError::InvalidParams("min_count must be positive"));
        }
        if !(self.lr_end > 0.0 && self.lr_start >= self.lr_end && self.lr_start.is_finite()) {
            return Err(EmbedError::InvalidParams(
                "learning rates must satisfy lr_start >= lr_end > 0",
            ));
        }
        Ok(())
    }
}

/// Dense, finite vector for a text unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct DocVector(Vec<f64>);

impl DocVector {
    pub fn new(values: Vec<f64>) -> Result<Self, EmbedError> {
        if values.iter().all(|v| v.is_finite()) {
            Ok(DocVector(values))
        } else {
            Err(EmbedError::NonFinite)
        }
    }

    pub fn zeros(dim: usize) -> Self {
        DocVector(vec![0.0; dim])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(dot(&self.0, &self.0))
    }
}

impl TryFrom<Vec<f64>> for DocVector {
    type Error = EmbedError;

    fn try_from(values: Vec<f64>) -> Result<Self, Self::Error> {
        DocVector::new(values)
    }
}

impl From<DocVector> for Vec<f64> {
    fn from(v: DocVector) -> Self {
        v.0
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Cosine similarity, defined as 0 when either vector has zero norm.
pub fn cosine(a: &DocVector, b: &DocVector) -> Result<f64, EmbedError> {
    cosine_slices(a.values(), b.values())
}

pub fn cosine_slices(a: &[f64], b: &[f64]) -> Result<f64, EmbedError> {
    if a.len() != b.len() {
        return Err(EmbedError::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let denom = libm::sqrt(dot(a, a)) * libm::sqrt(dot(b, b));
    if denom == 0.0 {
        return Ok(0.0);
    }
    Ok((dot(a, b) / denom).clamp(-1.0, 1.0))
}

/// Token inventory with corpus frequencies, indexed in first-appearance order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Vocab {
    tokens: Vec<String>,
    counts: Vec<u64>,
    index: BTreeMap<String, usize>,
}

impl Vocab {
    pub fn from_entries(entries: Vec<(String, u64)>) -> Result<Self, EmbedError> {
        let mut vocab = Vocab::default();
        for (token, count) in entries {
            if vocab.index.contains_key(&token) {
                return Err(EmbedError::Inconsistent("duplicate vocabulary token"));
            }
            vocab.index.insert(token.clone(), vocab.tokens.len());
            vocab.tokens.push(token);
            vocab.counts.push(count);
        }
        Ok(vocab)
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    pub fn token(&self, index: usize) -> &str {
        &self.tokens[index]
    }

    pub fn count(&self, index: usize) -> u64 {
        self.counts[index]
    }

    /// `(token, frequency)` in index order.
    pub fn entries(&self) -> impl Iterator<Item = (&str, u64)> + '_ {
        self.tokens
            .iter()
            .map(String::as_str)
            .zip(self.counts.iter().copied())
    }
}

pub fn build_vocab(docs: &[ProcessedDoc], min_count: u64) -> Result<Vocab, EmbedError> {
    if docs.is_empty() {
        return Err(EmbedError::EmptyCorpus);
    }
    let mut order: Vec<&str> = Vec::new();
    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    for token in docs.iter().flat_map(|d| d.tokens()) {
        let c = counts.entry(token).or_insert(0);
        if *c == 0 {
            order.push(token);
        }
        *c += 1;
    }
    let entries: Vec<(String, u64)> = order
        .into_iter()
        .map(|t| (t.to_string(), counts[t]))
        .filter(|&(_, c)| c >= min_count)
        .collect();
    if entries.is_empty() {
        return Err(EmbedError::EmptyVocab { min_count });
    }
    Vocab::from_entries(entries)
}

/// Row-major matrix of `rows` vectors of length `cols`.
#[derive(Debug, Clone, PartialEq)]
struct Matrix {
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    fn random(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Self {
        let data = (0..rows * cols)
            .map(|_| init_component(rng, cols))
            .collect();
        Matrix { cols, data }
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }
}

/// FNV-1a over the token indices, so each text starts inference from its
/// own point instead of a shared one.
fn content_hash(doc: &[usize]) -> u64 {
    doc.iter()
        .flat_map(|&i| (i as u64).to_le_bytes())
        .fold(FNV_OFFSET, |h, b| {
            (h ^ u64::from(b)).wrapping_mul(FNV_PRIME)
        })
}

fn init_component(rng: &mut ChaCha8Rng, dim: usize) -> f64 {
    (rng.random::<f64>() - 0.5) / dim as f64
}

/// Samples noise tokens proportionally to `count^0.75`.
#[derive(Debug, Clone)]
struct NoiseSampler {
    cumulative: Vec<f64>,
}

impl NoiseSampler {
    fn new(vocab: &Vocab) -> Self {
        let mut acc = 0.0;
        let cumulative = vocab
            .counts
            .iter()
            .map(|&c| {
                acc += libm::pow(c as f64, NOISE_EXPONENT);
                acc
            })
            .collect();
        NoiseSampler { cumulative }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> usize {
        let total = *self.cumulative.last().expect("non-empty vocabulary");
        let u = rng.random::<f64>() * total;
        self.cumulative
            .partition_point(|&c| c <= u)
            .min(self.cumulative.len() - 1)
    }
}

/// Everything a persisted model carries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParts {
    pub params: EmbedParams,
    /// `(token, frequency)` in index order.
    pub vocab: Vec<(String, u64)>,
    /// `|V| x dim`, row-major.
    pub word_vectors: Vec<f64>,
    /// `|V| x dim`, row-major; the negative-sampling output layer.
    pub output_vectors: Vec<f64>,
    pub doc_ids: Vec<String>,
    /// `|docs| x dim`, row-major.
    pub doc_vectors: Vec<f64>,
}

/// A trained PV-DM model. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingModel {
    params: EmbedParams,
    vocab: Vocab,
    words: Matrix,
    outputs: Matrix,
    doc_ids: Vec<String>,
    doc_index: BTreeMap<String, usize>,
    docs: Matrix,
    noise: NoiseSampler,
}

impl PartialEq for NoiseSampler {
    fn eq(&self, other: &Self) -> bool {
        self.cumulative == other.cumulative
    }
}

impl EmbeddingModel {
    pub fn params(&self) -> &EmbedParams {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.params.dim
    }

    pub fn vocab(&self) -> &Vocab {
        &self.vocab
    }

    pub fn word_vector(&self, token: &str) -> Option<&[f64]> {
        self.vocab.index_of(token).map(|i| self.words.row(i))
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    pub fn doc_vector(&self, doc_id: &str) -> Option<DocVector> {
        self.doc_index
            .get(doc_id)
            .map(|&i| DocVector(self.docs.row(i).to_vec()))
    }

    pub fn into_parts(self) -> ModelParts {
        ModelParts {
            params: self.params,
            vocab: self
                .vocab
                .tokens
                .into_iter()
                .zip(self.vocab.counts)
                .collect(),
            word_vectors: self.words.data,
            output_vectors: self.outputs.data,
            doc_ids: self.doc_ids,
            doc_vectors: self.docs.data,
        }
    }

    pub fn to_parts(&self) -> ModelParts {
        self.clone().into_parts()
    }

    /// Rebuilds a model, checking shapes and finiteness.
    pub fn from_parts(parts: ModelParts) -> Result<Self, EmbedError> {
        parts.params.validate()?;
        let dim = parts.params.dim;
        let vocab = Vocab::from_entries(parts.vocab)?;
        if vocab.is_empty() {
            return Err(EmbedError::EmptyVocab {
                min_count: parts.params.min_count,
            });
        }
        if vocab.counts.iter().any(|&c| c < parts.params.min_count) {
            return Err(EmbedError::Inconsistent("token frequency below min_count"));
        }
        let v = vocab.len();
        if parts.word_vectors.len() != v * dim || parts.output_vectors.len() != v * dim {
            return Err(EmbedError::Inconsistent("word matrix shape"));
        }
        if parts.doc_vectors.len() != parts.doc_ids.len() * dim {
            return Err(EmbedError::Inconsistent("document matrix shape"));
        }
        let all_finite = parts
            .word_vectors
            .iter()
            .chain(&parts.output_vectors)
            .chain(&parts.doc_vectors)
            .all(|x| x.is_finite());
        if !all_finite {
            return Err(EmbedError::NonFinite);
        }
        let doc_index = index_doc_ids(&parts.doc_ids)?;
        let noise = NoiseSampler::new(&vocab);
        Ok(EmbeddingModel {
            params: parts.params,
            vocab,
            words: Matrix {
                cols: dim,
                data: parts.word_vectors,
            },
            outputs: Matrix {
                cols: dim,
                data: parts.output_vectors,
            },
            doc_ids: parts.doc_ids,
            doc_index,
            docs: Matrix {
                cols: dim,
                data: parts.doc_vectors,
            },
            noise,
        })
    }

    fn encode(&self, tokens: impl IntoIterator<Item = impl AsRef<str>>) -> Vec<usize> {
        tokens
            .into_iter()
            .filter_map(|t| self.vocab.index_of(t.as_ref()))
            .collect()
    }
}

fn index_doc_ids(ids: &[String]) -> Result<BTreeMap<String, usize>, EmbedError> {
    let mut index = BTreeMap::new();
    for (i, id) in ids.iter().enumerate() {
        if index.insert(id.clone(), i).is_some() {
            return Err(EmbedError::DuplicateDoc(id.clone()));
        }
    }
    Ok(index)
}

/// Scratch buffers reused across steps.
struct Scratch {
    hidden: Vec<f64>,
    grad_hidden: Vec<f64>,
    targets: Vec<(usize, bool)>,
    context: Vec<usize>,
}

impl Scratch {
    fn new(dim: usize, negative: usize) -> Self {
        Scratch {
            hidden: vec![0.0; dim],
            grad_hidden: vec![0.0; dim],
            targets: Vec::with_capacity(negative + 1),
            context: Vec::new(),
        }
    }

    /// Number of vectors averaged into `hidden`.
    fn inputs(&self) -> f64 {
        (self.context.len() + 1) as f64
    }
}

/// Loss and hidden-layer gradient at position `pos` of `doc`, without
/// touching any parameter. Fills `scratch`.
#[allow(clippy::too_many_arguments)]
fn forward_backward(
    doc_vec: &[f64],
    words: &Matrix,
    outputs: &Matrix,
    noise: &NoiseSampler,
    doc: &[usize],
    pos: usize,
    params: &EmbedParams,
    rng: &mut ChaCha8Rng,
    scratch: &mut Scratch,
) -> f64 {
    let lo = pos.saturating_sub(params.window);
    let hi = (pos + params.window + 1).min(doc.len());
    scratch.context.clear();
    scratch
        .context
        .extend((lo..hi).filter(|&j| j != pos).map(|j| doc[j]));

    let center = doc[pos];
    scratch.targets.clear();
    scratch.targets.push((center, true));
    for _ in 0..params.negative {
        let t = noise.sample(rng);
        if t != center {
            scratch.targets.push((t, false));
        }
    }

    objective::mean_into(
        &mut scratch.hidden,
        doc_vec,
        scratch.context.iter().map(|&w| words.row(w)),
    );
    objective::output_pass(
        &scratch.hidden,
        &scratch.targets,
        |t| outputs.row(t),
        &mut scratch.grad_hidden,
    )
}

/// Moves output rows along `-dL/do = g * h` and context word rows along
/// `-dL/dh / inputs`, all gradients taken at the pre-step point.
fn update_shared(words: &mut Matrix, outputs: &mut Matrix, lr: f64, scratch: &Scratch) {
    for &(t, label) in &scratch.targets {
        let g = objective::label_error(&scratch.hidden, outputs.row(t), label);
        for (o, h) in outputs.row_mut(t).iter_mut().zip(&scratch.hidden) {
            *o += lr * g * h;
        }
    }
    let inputs = scratch.inputs();
    for &w in &scratch.context {
        for (x, gh) in words.row_mut(w).iter_mut().zip(&scratch.grad_hidden) {
            *x -= lr * gh / inputs;
        }
    }
}

fn update_doc(doc_vec: &mut [f64], lr: f64, scratch: &Scratch) {
    let inputs = scratch.inputs();
    for (x, gh) in doc_vec.iter_mut().zip(&scratch.grad_hidden) {
        *x -= lr * gh / inputs;
    }
}

/// Trains a PV-DM model over `docs`. Document vectors are keyed by
/// [`ProcessedDoc::doc_id`], which must be unique.
pub fn train_pvdm(
    docs: &[ProcessedDoc],
    params: &EmbedParams,
) -> Result<EmbeddingModel, EmbedError> {
    train_pvdm_with_losses(docs, params).map(|(m, _)| m)
}

/// As [`train_pvdm`], also returning the mean per-position loss of each epoch.
pub fn train_pvdm_with_losses(
    docs: &[ProcessedDoc],
    params: &EmbedParams,
) -> Result<(EmbeddingModel, Vec<f64>), EmbedError> {
    params.validate()?;
    let vocab = build_vocab(docs, params.min_count)?;
    let doc_ids: Vec<String> = docs.iter().map(|d| d.doc_id.clone()).collect();
    let doc_index = index_doc_ids(&doc_ids)?;

    let dim = params.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut words = Matrix::random(vocab.len(), dim, &mut rng);
    let mut doc_mat = Matrix::random(docs.len(), dim, &mut rng);
    let mut outputs = Matrix::zeros(vocab.len(), dim);
    let noise = NoiseSampler::new(&vocab);

    let encoded: Vec<Vec<usize>> = docs
        .iter()
        .map(|d| d.tokens().filter_map(|t| vocab.index_of(t)).collect())
        .collect();
    let positions: usize = encoded.iter().map(Vec::len).sum();
    let total_steps = (positions * params.epochs).max(1) as f64;

    let mut scratch = Scratch::new(dim, params.negative);
    let mut order: Vec<usize> = (0..docs.len()).collect();
    let mut epoch_losses = Vec::with_capacity(params.epochs);
    let mut step = 0usize;
    for _ in 0..params.epochs {
        order.shuffle(&mut rng);
        let mut epoch_loss = 0.0;
        for &d in &order {
            let doc = &encoded[d];
            for pos in 0..doc.len() {
                let lr = decayed_lr(params, step as f64 / total_steps);
                epoch_loss += forward_backward(
                    doc_mat.row(d),
                    &words,
                    &outputs,
                    &noise,
                    doc,
                    pos,
                    params,
                    &mut rng,
                    &mut scratch,
                );
                update_shared(&mut words, &mut outputs, lr, &scratch);
                update_doc(doc_mat.row_mut(d), lr, &scratch);
                step += 1;
            }
        }
        epoch_losses.push(if positions == 0 {
            0.0
        } else {
            epoch_loss / positions as f64
        });
    }

    let model = EmbeddingModel {
        params: params.clone(),
        vocab,
        words,
        outputs,
        doc_ids,
        doc_index,
        docs: doc_mat,
        noise,
    };
    Ok((model, epoch_losses))
}

fn decayed_lr(params: &EmbedParams, progress: f64) -> f64 {
    params.lr_start - (params.lr_start - params.lr_end) * progress
}

/// Infers a vector for unseen text with word and output vectors frozen.
///
/// Out-of-vocabulary tokens are skipped. Empty or all-OOV input yields the
/// zero vector. The RNG is seeded from the model seed and the in-vocabulary
/// tokens, so the same model and tokens always give the same vector.
pub fn infer_vector<S: AsRef<str>>(
    model: &EmbeddingModel,
    tokens: &[S],
    infer_epochs: usize,
) -> DocVector {
    let dim = model.dim();
    let doc = model.encode(tokens.iter());
    if doc.is_empty() || infer_epochs == 0 {
        return DocVector::zeros(dim);
    }
    let params = &model.params;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ INFER_SEED_SALT ^ content_hash(&doc));
    let mut doc_vec: Vec<f64> = (0..dim).map(|_| init_component(&mut rng, dim)).collect();

    let total_steps = (doc.len() * infer_epochs) as f64;
    let mut scratch = Scratch::new(dim, params.negative);
    let mut step = 0usize;
    for _ in 0..infer_epochs {
        for pos in 0..doc.len() {
            let lr = decayed_lr(params, step as f64 / total_steps);
            forward_backward(
                &doc_vec,
                &model.words,
                &model.outputs,
                &model.noise,
                &doc,
                pos,
                params,
                &mut rng,
                &mut scratch,
            );
            update_doc(&mut doc_vec, lr, &scratch);
            step += 1;
        }
    }
    DocVector(doc_vec)
}
