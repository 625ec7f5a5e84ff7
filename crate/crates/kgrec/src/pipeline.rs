//! The four pipeline stages behind the subcommands.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use kgrec_core::corpus::split_abstract;
use kgrec_core::embed::{infer_vector, train_pvdm};
use kgrec_core::eval::aggregate;
use kgrec_core::kg::{
    align_entities, compose_exclude_text, compose_target_text, AliasMap, FrozenGraph,
};
use kgrec_core::ranker::{rank, Scorer};
use kgrec_core::sentiment::train_nb;
use kgrec_core::textprep::{preprocess, Part};
use kgrec_core::{
    Corpus, EvalReport, GraphRole, NodeLabel, ProcessedDoc, Relation, RunResult, SimilarityScore,
    SourceDb, Stoplist,
};
use rayon::prelude::*;

use crate::config::PipelineConfig;
use crate::error::{Error, Result};
use crate::io;
use crate::report::{read_recommendation, RecommendationReport, RunParams};

pub fn load_corpus(cfg: &PipelineConfig) -> Result<Corpus> {
    let path = cfg.require_path("corpus_path", &cfg.corpus_path)?;
    io::corpus::load_papers(path).map_err(|e| Error::file("corpus", e))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IngestSummary {
    pub papers: usize,
    pub by_source: [(SourceDb, usize); 4],
    pub labeled: usize,
    pub relevant: usize,
}

impl fmt::Display for IngestSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "papers: {}", self.papers)?;
        for (db, count) in self.by_source {
            writeln!(f, "  {:<15} {count}", db.as_str())?;
        }
        writeln!(
            f,
            "relevance labels: {} ({} relevant)",
            self.labeled, self.relevant
        )
    }
}

pub fn run_ingest(cfg: &PipelineConfig) -> Result<IngestSummary> {
    let corpus = load_corpus(cfg)?;
    let labels = || corpus.papers().iter().filter_map(|p| p.relevant);
    Ok(IngestSummary {
        papers: corpus.len(),
        by_source: corpus.counts_by_source(),
        labeled: labels().count(),
        relevant: labels().filter(|&r| r).count(),
    })
}

/// Aligned, frozen graphs.
#[derive(Debug, Clone)]
pub struct Graphs {
    pub master: FrozenGraph,
    pub slave: Option<FrozenGraph>,
}

impl Graphs {
    pub fn all(&self) -> Vec<&FrozenGraph> {
        std::iter::once(&self.master).chain(&self.slave).collect()
    }
}

fn load_graph(
    nodes: &Path,
    edges: &Path,
    role: GraphRole,
    aliases: Option<&AliasMap>,
) -> Result<FrozenGraph> {
    let graph = io::kg::import_graph(nodes, edges, role).map_err(|e| Error::file("kg", e))?;
    Ok(align_entities(graph, aliases).freeze())
}

pub fn load_graphs(cfg: &PipelineConfig) -> Result<Graphs> {
    let nodes = cfg.require_path("master_nodes", &cfg.master_nodes)?;
    let edges = cfg.require_path("master_edges", &cfg.master_edges)?;
    let slave_paths = cfg.slave_paths()?;
    let aliases = cfg
        .optional_path("alias_path", &cfg.alias_path)?
        .map(io::kg::load_aliases)
        .transpose()
        .map_err(|e| Error::file("kg", e))?;
    let master = load_graph(nodes, edges, GraphRole::Master, aliases.as_ref())?;
    let slave = slave_paths
        .map(|(n, e)| load_graph(n, e, GraphRole::Slave, aliases.as_ref()))
        .transpose()?;
    Ok(Graphs { master, slave })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSummary {
    pub role: GraphRole,
    pub nodes: BTreeMap<NodeLabel, usize>,
    pub edges: BTreeMap<Relation, usize>,
}

impl fmt::Display for GraphSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let total_nodes: usize = self.nodes.values().sum();
        let total_edges: usize = self.edges.values().sum();
        writeln!(
            f,
            "{} graph: {total_nodes} nodes, {total_edges} edges",
            self.role
        )?;
        for (label, count) in &self.nodes {
            writeln!(f, "  {:<20} {count}", label.as_str())?;
        }
        for (rel, count) in &self.edges {
            writeln!(f, "  {:<20} {count}", rel.as_str())?;
        }
        Ok(())
    }
}

pub fn run_kg(cfg: &PipelineConfig) -> Result<Vec<GraphSummary>> {
    let graphs = load_graphs(cfg)?;
    Ok(graphs
        .all()
        .into_iter()
        .map(|g| GraphSummary {
            role: g.role(),
            nodes: g.node_counts(),
            edges: g.edge_counts(),
        })
        .collect())
}

fn load_stoplist(cfg: &PipelineConfig) -> Result<Stoplist> {
    match cfg.optional_path("stopword_path", &cfg.stopword_path)? {
        Some(p) => io::load_stoplist(p).map_err(|e| Error::file("textprep", e)),
        None => Ok(Stoplist::english()),
    }
}

/// Document id of one half of a paper in the embedding model.
pub fn part_doc_id(paper_id: &str, part: Part) -> String {
    format!("{paper_id}#{part}")
}

/// Preprocessed `(p1, p2)` for every paper, in corpus order.
pub fn preprocess_corpus(
    corpus: &Corpus,
    stoplist: &Stoplist,
) -> Vec<(ProcessedDoc, ProcessedDoc)> {
    corpus
        .papers()
        .iter()
        .map(|paper| {
            let split = split_abstract(paper);
            let doc =
                |part, text: &str| preprocess(&part_doc_id(&paper.id, part), part, text, stoplist);
            (doc(Part::P1, &split.p1_text), doc(Part::P2, &split.p2_text))
        })
        .collect()
}

pub fn recommend(cfg: &PipelineConfig) -> Result<RecommendationReport> {
    let challenge_id = cfg.challenge()?.to_string();
    if cfg.exclude_tech_ids.is_empty() {
        return Err(Error::Config(
            "`exclude_tech_ids` must name at least one technology".into(),
        ));
    }
    let corpus = load_corpus(cfg)?;
    let graphs = load_graphs(cfg)?;
    let stoplist = load_stoplist(cfg)?;
    let sentiment_docs =
        match cfg.optional_path("sentiment_corpus_path", &cfg.sentiment_corpus_path)? {
            Some(p) => io::sentiment::load_labeled(p, &stoplist)
                .map_err(|e| Error::file("sentiment", e))?,
            None => io::sentiment::seed_corpus(&stoplist),
        };

    let sources = graphs.all();
    let target = compose_target_text(sources.as_slice(), &challenge_id, &cfg.target_tech_ids)?;
    let exclude = compose_exclude_text(sources.as_slice(), &cfg.exclude_tech_ids)?;

    let parts = preprocess_corpus(&corpus, &stoplist);
    let training: Vec<ProcessedDoc> = parts
        .iter()
        .flat_map(|(p1, p2)| [p1.clone(), p2.clone()])
        .collect();
    let embedding = train_pvdm(&training, &cfg.embed)?;
    let sentiment = train_nb(sentiment_docs, cfg.alpha)?;

    let infer = |text: &str, part| {
        let tokens =
            preprocess(part_doc_id("query", part).as_str(), part, text, &stoplist).token_vec();
        infer_vector(&embedding, &tokens, cfg.infer_epochs)
    };
    let target_vec = infer(&target.text, Part::TargetText);
    let exclude_vec = infer(&exclude.text, Part::ExcludeText);

    let scorer = Scorer {
        embedding: &embedding,
        sentiment: &sentiment,
        target: &target_vec,
        exclude: &exclude_vec,
        infer_epochs: cfg.infer_epochs,
    };
    let scores: Vec<SimilarityScore> = corpus
        .papers()
        .par_iter()
        .zip(parts.par_iter())
        .map(|(paper, (p1, p2))| scorer.score_paper(&paper.id, &p1.token_vec(), &p2.token_vec()))
        .collect::<std::result::Result<_, _>>()?;
    let ranking = rank(&scores, cfg.k, cfg.n)?;

    Ok(RecommendationReport {
        run_id: cfg.run_id.clone(),
        params: RunParams {
            seed: cfg.seed,
            k: cfg.k,
            n: cfg.n,
            alpha: cfg.alpha,
            infer_epochs: cfg.infer_epochs,
            embed: cfg.embed.clone(),
        },
        challenge_id,
        target_tech_ids: cfg.target_tech_ids.clone(),
        exclude_tech_ids: cfg.exclude_tech_ids.clone(),
        target_text: target.text,
        exclude_text: exclude.text,
        scores,
        ranking,
    })
}

/// Scores each recommendation report against the corpus relevance labels.
pub fn evaluate(cfg: &PipelineConfig, report_paths: &[impl AsRef<Path>]) -> Result<EvalReport> {
    if report_paths.is_empty() {
        return Err(Error::Config(
            "evaluate needs at least one report path".into(),
        ));
    }
    let corpus = load_corpus(cfg)?;
    let relevant: Vec<String> = corpus
        .papers()
        .iter()
        .filter(|p| p.relevant == Some(true))
        .map(|p| p.id.clone())
        .collect();
    if corpus.papers().iter().all(|p| p.relevant.is_none()) {
        return Err(Error::NoRelevance(
            "the corpus carries no relevance labels".into(),
        ));
    }
    let runs = report_paths
        .iter()
        .map(|p| {
            let path = p.as_ref();
            if !path.exists() {
                return Err(Error::Config(format!(
                    "report {} does not exist",
                    path.display()
                )));
            }
            let report = read_recommendation(path).map_err(|e| Error::file("eval", e))?;
            Ok(RunResult::new(
                report.run_id,
                report.ranking.top,
                relevant.iter().cloned(),
            )?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(aggregate(&runs)?)
}
