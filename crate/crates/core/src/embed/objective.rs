//! The PV-DM negative-sampling objective for a single prediction.
//!
//! With `h` the mean of the document vector and the context word vectors,
//! and targets `(o_t, y_t)` where `y_t = 1` for the center token and `0` for
//! noise tokens:
//!
//! ```text
//! L = sum_t softplus(-(2 y_t - 1) * o_t . h)
//! dL/do_t = -(y_t - sigmoid(o_t . h)) * h
//! dL/dh   = -sum_t (y_t - sigmoid(o_t . h)) * o_t
//! ```
//!
//! Each averaged input receives `dL/dh / n` where `n` counts the document
//! vector plus the context words.

use alloc::vec;
use alloc::vec::Vec;

use super::dot;

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + libm::exp(-x))
}

/// `ln(1 + e^x)` without overflow.
fn softplus(x: f64) -> f64 {
    x.max(0.0) + libm::log1p(libm::exp(-x.abs()))
}

/// Writes the mean of `doc` and `context` into `out`.
pub(crate) fn mean_into<'a>(
    out: &mut [f64],
    doc: &[f64],
    context: impl Iterator<Item = &'a [f64]>,
) {
    out.copy_from_slice(doc);
    let mut n = 1.0;
    for row in context {
        for (o, x) in out.iter_mut().zip(row) {
            *o += x;
        }
        n += 1.0;
    }
    for o in out.iter_mut() {
        *o /= n;
    }
}

/// `y - sigmoid(o . h)`; positive means the score should rise.
pub(crate) fn label_error(hidden: &[f64], output: &[f64], label: bool) -> f64 {
    let y = if label { 1.0 } else { 0.0 };
    y - sigmoid(dot(hidden, output))
}

fn target_loss(hidden: &[f64], output: &[f64], label: bool) -> f64 {
    let f = dot(hidden, output);
    if label {
        softplus(-f)
    } else {
        softplus(f)
    }
}

/// Loss over `targets` and `dL/dh` written into `grad_hidden`.
pub(crate) fn output_pass<'a>(
    hidden: &[f64],
    targets: &[(usize, bool)],
    row: impl Fn(usize) -> &'a [f64],
    grad_hidden: &mut [f64],
) -> f64 {
    grad_hidden.iter_mut().for_each(|g| *g = 0.0);
    let mut loss = 0.0;
    for &(t, label) in targets {
        let o = row(t);
        loss += target_loss(hidden, o, label);
        let g = label_error(hidden, o, label);
        for (gh, x) in grad_hidden.iter_mut().zip(o) {
            *gh -= g * x;
        }
    }
    loss
}

/// Analytic gradient of one prediction with respect to every input.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradient {
    pub loss: f64,
    pub doc: Vec<f64>,
    /// One entry per context slot, in input order.
    pub context: Vec<Vec<f64>>,
    /// One entry per output vector, in input order.
    pub outputs: Vec<Vec<f64>>,
}

/// Loss of one prediction. `outputs[i]` carries label `labels[i]`.
pub fn loss(doc: &[f64], context: &[&[f64]], outputs: &[&[f64]], labels: &[bool]) -> f64 {
    let mut hidden = vec![0.0; doc.len()];
    mean_into(&mut hidden, doc, context.iter().copied());
    outputs
        .iter()
        .zip(labels)
        .map(|(o, &y)| target_loss(&hidden, o, y))
        .sum()
}

/// Loss and gradient of one prediction; the same expressions drive training.
pub fn gradient(doc: &[f64], context: &[&[f64]], outputs: &[&[f64]], labels: &[bool]) -> Gradient {
    assert_eq!(outputs.len(), labels.len(), "one label per output vector");
    let dim = doc.len();
    let mut hidden = vec![0.0; dim];
    mean_into(&mut hidden, doc, context.iter().copied());
    let targets: Vec<(usize, bool)> = labels.iter().copied().enumerate().collect();
    let mut grad_hidden = vec![0.0; dim];
    let loss = output_pass(&hidden, &targets, |t| outputs[t], &mut grad_hidden);

    let n = (context.len() + 1) as f64;
    let per_input: Vec<f64> = grad_hidden.iter().map(|g| g / n).collect();
    let outputs_grad = outputs
        .iter()
        .zip(labels)
        .map(|(o, &y)| {
            let g = label_error(&hidden, o, y);
            hidden.iter().map(|h| -g * h).collect()
        })
        .collect();
    Gradient {
        loss,
        doc: per_input.clone(),
        context: vec![per_input; context.len()],
        outputs: outputs_grad,
    }
}
