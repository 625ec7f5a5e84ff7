//! Hit-count, precision and reciprocal-rank metrics over recommendation runs.
//!
//! For a run recommending `N` papers: FindN is the number of relevant papers
//! in the list, TopN is `FindN / N`, and the reciprocal rank is one over the
//! 1-based position of the first relevant paper (0 when there is none).

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("no runs to aggregate")]
    EmptyInput,
    #[error("list size must be at least 1")]
    ZeroListSize,
    #[error("runs use different list sizes ({first} and {other})")]
    MixedListSize { first: usize, other: usize },
    #[error("run `{run_id}` lists `{paper_id}` twice")]
    DuplicateEntry { run_id: String, paper_id: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunResult {
    run_id: String,
    top_list: Vec<String>,
    relevant: BTreeSet<String>,
}

impl RunResult {
    pub fn new(
        run_id: impl Into<String>,
        top_list: Vec<String>,
        relevant: impl IntoIterator<Item = String>,
    ) -> Result<Self, EvalError> {
        let run_id = run_id.into();
        let mut seen = BTreeSet::new();
        for p in &top_list {
            if !seen.insert(p) {
                return Err(EvalError::DuplicateEntry {
                    run_id,
                    paper_id: p.clone(),
                });
            }
        }
        Ok(RunResult {
            run_id,
            top_list,
            relevant: relevant.into_iter().collect(),
        })
    }

    pub fn run_id(&self) -> &str {
        &self.run_id
    }

    pub fn top_list(&self) -> &[String] {
        &self.top_list
    }

    pub fn relevant(&self) -> &BTreeSet<String> {
        &self.relevant
    }

    /// List size `N`.
    pub fn list_size(&self) -> usize {
        self.top_list.len()
    }
}

pub fn find_n(run: &RunResult) -> usize {
    run.top_list
        .iter()
        .filter(|p| run.relevant.contains(*p))
        .count()
}

/// Precision at `n` from a (possibly averaged) hit count.
pub fn top_n(find_n: f64, n: usize) -> Result<f64, EvalError> {
    if n == 0 {
        return Err(EvalError::ZeroListSize);
    }
    Ok(find_n / n as f64)
}

pub fn reciprocal_rank(run: &RunResult) -> f64 {
    run.top_list
        .iter()
        .position(|p| run.relevant.contains(p))
        .map_or(0.0, |i| 1.0 / (i + 1) as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub run_id: String,
    pub find_n: usize,
    pub top_n: f64,
    pub reciprocal_rank: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    /// Shared list size of every run.
    pub n: usize,
    pub per_run: Vec<RunMetrics>,
    pub avg_find_n: f64,
    pub avg_top_n: f64,
    pub avg_mrr: f64,
}

/// Per-run metrics and their means. All runs must share one list size.
pub fn aggregate(runs: &[RunResult]) -> Result<EvalReport, EvalError> {
    let first = runs.first().ok_or(EvalError::EmptyInput)?;
    let n = first.list_size();
    if n == 0 {
        return Err(EvalError::ZeroListSize);
    }
    if let Some(other) = runs.iter().find(|r| r.list_size() != n) {
        return Err(EvalError::MixedListSize {
            first: n,
            other: other.list_size(),
        });
    }

    let per_run: Vec<RunMetrics> = runs
        .iter()
        .map(|r| {
            let hits = find_n(r);
            Ok(RunMetrics {
                run_id: r.run_id.clone(),
                find_n: hits,
                top_n: top_n(hits as f64, n)?,
                reciprocal_rank: reciprocal_rank(r),
            })
        })
        .collect::<Result<_, EvalError>>()?;

    let count = per_run.len() as f64;
    let avg_find_n = per_run.iter().map(|m| m.find_n as f64).sum::<f64>() / count;
    Ok(EvalReport {
        n,
        avg_top_n: top_n(avg_find_n, n)?,
        avg_mrr: per_run.iter().map(|m| m.reciprocal_rank).sum::<f64>() / count,
        avg_find_n,
        per_run,
    })
}
