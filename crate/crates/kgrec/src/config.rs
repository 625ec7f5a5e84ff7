//! Pipeline configuration.
//!
//! The config file is a flat TOML document: one `key = value` per line,
//! `#` comments, strings quoted, lists either as arrays or as one
//! comma-separated string. Relative paths are resolved against the file's
//! directory. `--set key=value` overrides take unquoted values and resolve
//! paths against the working directory; `--seed` and `--out` win over both.

use std::fs;
use std::path::{Path, PathBuf};

use kgrec_core::embed::DEFAULT_INFER_EPOCHS;
use kgrec_core::ranker::{DEFAULT_FINAL_SIZE, DEFAULT_ROUND1_CUTOFF};
use kgrec_core::EmbedParams;
use serde::Deserialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Path,
    Str,
    List,
    Int,
    Float,
}

const KEYS: &[(&str, Kind)] = &[
    ("corpus_path", Kind::Path),
    ("master_nodes", Kind::Path),
    ("master_edges", Kind::Path),
    ("slave_nodes", Kind::Path),
    ("slave_edges", Kind::Path),
    ("alias_path", Kind::Path),
    ("stopword_path", Kind::Path),
    ("sentiment_corpus_path", Kind::Path),
    ("output_dir", Kind::Path),
    ("challenge_id", Kind::Str),
    ("run_id", Kind::Str),
    ("target_tech_ids", Kind::List),
    ("exclude_tech_ids", Kind::List),
    ("dim", Kind::Int),
    ("window", Kind::Int),
    ("negative", Kind::Int),
    ("epochs", Kind::Int),
    ("min_count", Kind::Int),
    ("infer_epochs", Kind::Int),
    ("k", Kind::Int),
    ("n", Kind::Int),
    ("seed", Kind::Int),
    ("lr_start", Kind::Float),
    ("lr_end", Kind::Float),
    ("alpha", Kind::Float),
];

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum IdList {
    Joined(String),
    Items(Vec<String>),
}

impl IdList {
    fn into_vec(self) -> Vec<String> {
        let items = match self {
            IdList::Joined(s) => s.split(',').map(String::from).collect(),
            IdList::Items(v) => v,
        };
        items
            .into_iter()
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect()
    }
}

/// Every key, all optional, as read from one source.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Layer {
    corpus_path: Option<PathBuf>,
    master_nodes: Option<PathBuf>,
    master_edges: Option<PathBuf>,
    slave_nodes: Option<PathBuf>,
    slave_edges: Option<PathBuf>,
    alias_path: Option<PathBuf>,
    stopword_path: Option<PathBuf>,
    sentiment_corpus_path: Option<PathBuf>,
    output_dir: Option<PathBuf>,
    challenge_id: Option<String>,
    run_id: Option<String>,
    target_tech_ids: Option<IdList>,
    exclude_tech_ids: Option<IdList>,
    dim: Option<usize>,
    window: Option<usize>,
    negative: Option<usize>,
    epochs: Option<usize>,
    min_count: Option<u64>,
    infer_epochs: Option<usize>,
    k: Option<usize>,
    n: Option<usize>,
    seed: Option<u64>,
    lr_start: Option<f64>,
    lr_end: Option<f64>,
    alpha: Option<f64>,
}

macro_rules! overlay {
    ($top:expr, $base:expr, $($field:ident),+ $(,)?) => {
        Layer { $($field: $top.$field.or($base.$field)),+ }
    };
}

impl Layer {
    fn resolve_paths(&mut self, base: &Path) {
        for p in [
            &mut self.corpus_path,
            &mut self.master_nodes,
            &mut self.master_edges,
            &mut self.slave_nodes,
            &mut self.slave_edges,
            &mut self.alias_path,
            &mut self.stopword_path,
            &mut self.sentiment_corpus_path,
            &mut self.output_dir,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
    }

    /// Fields of `self` win over `base`.
    fn over(self, base: Layer) -> Layer {
        overlay!(
            self,
            base,
            corpus_path,
            master_nodes,
            master_edges,
            slave_nodes,
            slave_edges,
            alias_path,
            stopword_path,
            sentiment_corpus_path,
            output_dir,
            challenge_id,
            run_id,
            target_tech_ids,
            exclude_tech_ids,
            dim,
            window,
            negative,
            epochs,
            min_count,
            infer_epochs,
            k,
            n,
            seed,
            lr_start,
            lr_end,
            alpha,
        )
    }
}

/// Command-line settings that sit on top of the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    /// `key=value` pairs, applied in order.
    pub set: Vec<String>,
    pub seed: Option<u64>,
    pub output_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub corpus_path: Option<PathBuf>,
    pub master_nodes: Option<PathBuf>,
    pub master_edges: Option<PathBuf>,
    pub slave_nodes: Option<PathBuf>,
    pub slave_edges: Option<PathBuf>,
    pub alias_path: Option<PathBuf>,
    pub stopword_path: Option<PathBuf>,
    pub sentiment_corpus_path: Option<PathBuf>,
    pub challenge_id: Option<String>,
    pub target_tech_ids: Vec<String>,
    pub exclude_tech_ids: Vec<String>,
    /// Embedding hyperparameters; `embed.seed` always equals `seed`.
    pub embed: EmbedParams,
    pub infer_epochs: usize,
    pub alpha: f64,
    pub k: usize,
    pub n: usize,
    pub seed: u64,
    pub output_dir: PathBuf,
    pub run_id: String,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self::from_layer(Layer::default()).expect("defaults are valid")
    }
}

fn config_error(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn parse_set(pair: &str) -> Result<Layer> {
    let (key, value) = pair
        .split_once('=')
        .ok_or_else(|| config_error(format!("override `{pair}` is not key=value")))?;
    let key = key.trim();
    let value = value.trim();
    let kind = KEYS
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, kind)| *kind)
        .ok_or_else(|| config_error(format!("unknown key `{key}`")))?;
    let bad = |what: &str| config_error(format!("`{key}` expects {what}, got `{value}`"));
    let v = match kind {
        Kind::Path | Kind::Str => toml::Value::String(value.to_string()),
        Kind::List => toml::Value::Array(
            IdList::Joined(value.to_string())
                .into_vec()
                .into_iter()
                .map(toml::Value::String)
                .collect(),
        ),
        Kind::Int => toml::Value::Integer(value.parse().map_err(|_| bad("an integer"))?),
        Kind::Float => toml::Value::Float(value.parse().map_err(|_| bad("a number"))?),
    };
    let mut table = toml::Table::new();
    table.insert(key.to_string(), v);
    toml::Value::Table(table)
        .try_into::<Layer>()
        .map_err(|e| config_error(format!("`{key}`: {e}")))
}

impl PipelineConfig {
    /// Reads `path` (if any) and applies `overrides`.
    pub fn load(path: Option<&Path>, overrides: &Overrides) -> Result<Self> {
        let mut layer = match path {
            Some(p) => {
                let text = fs::read_to_string(p)
                    .map_err(|e| config_error(format!("cannot read {}: {e}", p.display())))?;
                let mut file = Self::parse_layer(&text)
                    .map_err(|e| config_error(format!("{}: {e}", p.display())))?;
                file.resolve_paths(p.parent().unwrap_or(Path::new("")));
                file
            }
            None => Layer::default(),
        };
        for pair in &overrides.set {
            layer = parse_set(pair)?.over(layer);
        }
        let flags = Layer {
            seed: overrides.seed,
            output_dir: overrides.output_dir.clone(),
            ..Layer::default()
        };
        Self::from_layer(flags.over(layer))
    }

    /// Parses config text without touching the filesystem. Relative paths
    /// stay as written.
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_layer(Self::parse_layer(text).map_err(config_error)?)
    }

    fn parse_layer(text: &str) -> std::result::Result<Layer, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    fn from_layer(l: Layer) -> Result<Self> {
        let defaults = EmbedParams::default();
        let seed = l.seed.unwrap_or(defaults.seed);
        let embed = EmbedParams {
            dim: l.dim.unwrap_or(defaults.dim),
            window: l.window.unwrap_or(defaults.window),
            negative: l.negative.unwrap_or(defaults.negative),
            epochs: l.epochs.unwrap_or(defaults.epochs),
            lr_start: l.lr_start.unwrap_or(defaults.lr_start),
            lr_end: l.lr_end.unwrap_or(defaults.lr_end),
            min_count: l.min_count.unwrap_or(defaults.min_count),
            seed,
        };
        embed.validate().map_err(|e| config_error(e.to_string()))?;
        let cfg = PipelineConfig {
            corpus_path: l.corpus_path,
            master_nodes: l.master_nodes,
            master_edges: l.master_edges,
            slave_nodes: l.slave_nodes,
            slave_edges: l.slave_edges,
            alias_path: l.alias_path,
            stopword_path: l.stopword_path,
            sentiment_corpus_path: l.sentiment_corpus_path,
            challenge_id: l.challenge_id,
            target_tech_ids: l.target_tech_ids.map(IdList::into_vec).unwrap_or_default(),
            exclude_tech_ids: l.exclude_tech_ids.map(IdList::into_vec).unwrap_or_default(),
            embed,
            infer_epochs: l.infer_epochs.unwrap_or(DEFAULT_INFER_EPOCHS),
            alpha: l.alpha.unwrap_or(1.0),
            k: l.k.unwrap_or(DEFAULT_ROUND1_CUTOFF),
            n: l.n.unwrap_or(DEFAULT_FINAL_SIZE),
            seed,
            output_dir: l.output_dir.unwrap_or_else(|| PathBuf::from(".")),
            run_id: l.run_id.unwrap_or_else(|| "run".to_string()),
        };
        if cfg.n == 0 || cfg.k < cfg.n {
            return Err(config_error(format!(
                "need k >= n >= 1, got k = {}, n = {}",
                cfg.k, cfg.n
            )));
        }
        if !(cfg.alpha > 0.0 && cfg.alpha.is_finite()) {
            return Err(config_error("alpha must be positive"));
        }
        if cfg.infer_epochs == 0 {
            return Err(config_error("infer_epochs must be positive"));
        }
        Ok(cfg)
    }

    /// The path under `key`, which must be set and exist.
    pub fn require_path<'a>(&self, key: &str, value: &'a Option<PathBuf>) -> Result<&'a Path> {
        let p = value
            .as_deref()
            .ok_or_else(|| config_error(format!("`{key}` is required for this command")))?;
        Self::check_exists(key, p)?;
        Ok(p)
    }

    /// The path under `key` if set; it must exist.
    pub fn optional_path<'a>(
        &self,
        key: &str,
        value: &'a Option<PathBuf>,
    ) -> Result<Option<&'a Path>> {
        match value.as_deref() {
            Some(p) => Self::check_exists(key, p).map(|_| Some(p)),
            None => Ok(None),
        }
    }

    fn check_exists(key: &str, p: &Path) -> Result<()> {
        if p.exists() {
            Ok(())
        } else {
            Err(config_error(format!(
                "`{key}` points to missing file {}",
                p.display()
            )))
        }
    }

    pub fn challenge(&self) -> Result<&str> {
        self.challenge_id
            .as_deref()
            .ok_or_else(|| config_error("`challenge_id` is required for this command"))
    }

    /// Both slave files, neither, or an error when only one is set.
    pub fn slave_paths(&self) -> Result<Option<(&Path, &Path)>> {
        let nodes = self.optional_path("slave_nodes", &self.slave_nodes)?;
        let edges = self.optional_path("slave_edges", &self.slave_edges)?;
        match (nodes, edges) {
            (Some(n), Some(e)) => Ok(Some((n, e))),
            (None, None) => Ok(None),
            _ => Err(config_error(
                "set both `slave_nodes` and `slave_edges`, or neither",
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = PipelineConfig::default();
        assert_eq!((c.k, c.n, c.infer_epochs), (20, 5, 50));
        assert_eq!(c.embed, EmbedParams::default());
        assert_eq!(c.alpha, 1.0);
    }

    #[test]
    fn parses_flat_file() {
        let c = PipelineConfig::parse(
            "# run\ncorpus_path = \"papers.csv\"\nchallenge_id = \"C1\"\n\
             target_tech_ids = [\"T1\", \"T2\"]\nexclude_tech_ids = \"T3, T4\"\n\
             dim = 16\nlr_start = 0.05\nseed = 9\n",
        )
        .unwrap();
        assert_eq!(c.corpus_path, Some(PathBuf::from("papers.csv")));
        assert_eq!(c.target_tech_ids, ["T1", "T2"]);
        assert_eq!(c.exclude_tech_ids, ["T3", "T4"]);
        assert_eq!(c.embed.dim, 16);
        assert_eq!(c.embed.lr_start, 0.05);
        assert_eq!((c.seed, c.embed.seed), (9, 9));
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(matches!(
            PipelineConfig::parse("colour = 1"),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            PipelineConfig::parse("k = 2\nn = 5"),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            PipelineConfig::parse("dim = 0"),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            PipelineConfig::parse("alpha = -1.0"),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            PipelineConfig::parse("dim = \"big\""),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn flags_win_over_set_and_file() {
        let dir = std::env::temp_dir().join(format!("kgrec-config-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.toml");
        fs::write(
            &path,
            "seed = 1\nk = 10\ncorpus_path = \"c.csv\"\noutput_dir = \"out\"\n",
        )
        .unwrap();
        let overrides = Overrides {
            set: vec!["seed=2".into(), "k=30".into(), "target_tech_ids=A,B".into()],
            seed: Some(3),
            output_dir: None,
        };
        let c = PipelineConfig::load(Some(&path), &overrides).unwrap();
        assert_eq!(c.seed, 3);
        assert_eq!(c.embed.seed, 3);
        assert_eq!(c.k, 30);
        assert_eq!(c.target_tech_ids, ["A", "B"]);
        assert_eq!(c.corpus_path, Some(dir.join("c.csv")));
        assert_eq!(c.output_dir, dir.join("out"));
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn bad_overrides() {
        let load = |s: &str| {
            PipelineConfig::load(
                None,
                &Overrides {
                    set: vec![s.into()],
                    ..Overrides::default()
                },
            )
        };
        assert!(matches!(load("nope=1"), Err(Error::Config(_))));
        assert!(matches!(load("dim"), Err(Error::Config(_))));
        assert!(matches!(load("dim=x"), Err(Error::Config(_))));
        assert_eq!(
            load("challenge_id=42").unwrap().challenge_id.as_deref(),
            Some("42")
        );
    }
}
