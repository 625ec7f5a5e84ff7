//! JSON reports and their plain-text tables.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use kgrec_core::{EmbedParams, EvalReport, RankedList, SimilarityScore};
use serde::{Deserialize, Serialize};

use crate::error::{Error, FileError, Result};

pub const RECOMMENDATION_FILE: &str = "recommendation.json";
pub const EVALUATION_FILE: &str = "evaluation.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunParams {
    pub seed: u64,
    pub k: usize,
    pub n: usize,
    pub alpha: f64,
    pub infer_epochs: usize,
    pub embed: EmbedParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecommendationReport {
    pub run_id: String,
    pub params: RunParams,
    pub challenge_id: String,
    pub target_tech_ids: Vec<String>,
    pub exclude_tech_ids: Vec<String>,
    pub target_text: String,
    pub exclude_text: String,
    /// One entry per candidate, in corpus order.
    pub scores: Vec<SimilarityScore>,
    #[serde(flatten)]
    pub ranking: RankedList,
}

impl RecommendationReport {
    pub fn score(&self, paper_id: &str) -> Option<&SimilarityScore> {
        self.scores.iter().find(|s| s.paper_id == paper_id)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Writes `value` as pretty JSON to `dir/name`, creating `dir`.
pub fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf> {
    let path = dir.join(name);
    let output = |source| Error::Output {
        path: path.clone(),
        source,
    };
    fs::create_dir_all(dir).map_err(output)?;
    fs::write(&path, to_json(value)).map_err(output)?;
    Ok(path)
}

pub fn read_recommendation(path: &Path) -> Result<RecommendationReport, FileError> {
    let text = fs::read_to_string(path).map_err(|e| FileError::at(path, e))?;
    serde_json::from_str(&text).map_err(|e| FileError::at(path, e))
}

/// The final list with its scores, best first.
pub fn recommendation_table(report: &RecommendationReport) -> String {
    let width = report
        .ranking
        .top
        .iter()
        .map(String::len)
        .chain(["paper_id".len()])
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>4}  {:<width$}  {:>10}  {:>11}  {:>7}",
        "rank", "paper_id", "sim_target", "sim_exclude", "emo_p1"
    );
    for (i, id) in report.ranking.top.iter().enumerate() {
        let s = report.score(id).expect("ranked papers are scored");
        let _ = writeln!(
            out,
            "{:>4}  {:<width$}  {:>10.4}  {:>11.4}  {:>7.4}",
            i + 1,
            id,
            s.sim_target,
            s.sim_exclude,
            s.emo_p1
        );
    }
    out
}

/// Runs as columns, metrics as rows, with a final column of averages.
pub fn evaluation_table(report: &EvalReport) -> String {
    let mut headers: Vec<&str> = report.per_run.iter().map(|r| r.run_id.as_str()).collect();
    headers.push("average");
    let width = headers.iter().map(|h| h.len()).max().unwrap_or(0).max(8);
    let top = format!("Top{}", report.n);
    let find = format!("Find{}", report.n);
    let rows: [(String, Vec<f64>, f64); 3] = [
        (
            format!("Average {top}"),
            report.per_run.iter().map(|r| r.top_n).collect(),
            report.avg_top_n,
        ),
        (
            format!("Average {find}"),
            report.per_run.iter().map(|r| r.find_n as f64).collect(),
            report.avg_find_n,
        ),
        (
            "Average MRR".to_string(),
            report.per_run.iter().map(|r| r.reciprocal_rank).collect(),
            report.avg_mrr,
        ),
    ];
    let label_width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);

    let mut out = String::new();
    let _ = write!(out, "{:<label_width$}", "");
    for h in &headers {
        let _ = write!(out, "  {h:>width$}");
    }
    out.push('\n');
    for (label, values, avg) in rows {
        let _ = write!(out, "{label:<label_width$}");
        for v in values.iter().chain([&avg]) {
            let _ = write!(out, "  {v:>width$.4}");
        }
        out.push('\n');
    }
    out
}
