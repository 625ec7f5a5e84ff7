//! Typed property graph for the master (in-domain) and slave (cross-domain)
//! knowledge graphs, entity alignment, and composition of the target and
//! exclude description texts.
//!
//! Schema: eight node classes and seven relations. Every relation has a fixed
//! set of legal `(source label, target label)` pairs, checked on insertion:
//!
//! | relation              | source                       | target     |
//! |-----------------------|------------------------------|------------|
//! | `has_author`          | Paper                        | Author     |
//! | `published_in`        | Paper                        | Venue      |
//! | `in_domain`           | Paper, Technology, Challenge | Domain     |
//! | `has_motivation`      | Paper                        | Motivation |
//! | `addresses_challenge` | Paper, Technology            | Challenge  |
//! | `proposes_technology` | Paper                        | Technology |
//! | `cites`               | Paper                        | Reference  |

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KgError {
    #[error("duplicate node id `{0}`")]
    DuplicateNode(String),
    #[error("node id must not be empty")]
    EmptyNodeId,
    #[error("edge {edge} references missing node `{missing}`")]
    DanglingEdge { edge: String, missing: String },
    #[error("ontology error: edge {edge} connects {src_label} to {dst_label}")]
    EndpointViolation {
        edge: String,
        src_label: NodeLabel,
        dst_label: NodeLabel,
    },
    #[error("node `{node_id}` is tagged {found} but the graph is {expected}")]
    RoleMismatch {
        node_id: String,
        expected: GraphRole,
        found: GraphRole,
    },
    #[error("unknown node label `{0}`")]
    UnknownLabel(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("unknown graph role `{0}` (expected master or slave)")]
    UnknownRole(String),
    #[error("alias `{alias}` maps to both `{first}` and `{second}`")]
    AmbiguousAlias {
        alias: String,
        first: String,
        second: String,
    },
    #[error("ontology error: node `{0}` is not in the graph")]
    MissingNode(String),
    #[error("ontology error: node `{node_id}` is a {found}, expected {expected}")]
    WrongLabel {
        node_id: String,
        expected: NodeLabel,
        found: NodeLabel,
    },
    #[error("node `{0}` has an empty description")]
    EmptyDescription(String),
    #[error("an exclude description needs at least one technology")]
    EmptyTechList,
}

macro_rules! string_enum {
    ($name:ident, $what:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = KgError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($text => Ok($name::$variant),)+
                    other => Err(KgError::$what(other.to_string())),
                }
            }
        }
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NodeLabel {
    Paper,
    Author,
    Venue,
    Domain,
    Motivation,
    Challenge,
    Technology,
    Reference,
}

string_enum!(NodeLabel, UnknownLabel {
    Paper => "Paper",
    Author => "Author",
    Venue => "Venue",
    Domain => "Domain",
    Motivation => "Motivation",
    Challenge => "Challenge",
    Technology => "Technology",
    Reference => "Reference",
});

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    HasAuthor,
    PublishedIn,
    InDomain,
    HasMotivation,
    AddressesChallenge,
    ProposesTechnology,
    Cites,
}

string_enum!(Relation, UnknownRelation {
    HasAuthor => "has_author",
    PublishedIn => "published_in",
    InDomain => "in_domain",
    HasMotivation => "has_motivation",
    AddressesChallenge => "addresses_challenge",
    ProposesTechnology => "proposes_technology",
    Cites => "cites",
});

impl Relation {
    /// Whether `src -[self]-> dst` is legal.
    pub fn allows(self, src: NodeLabel, dst: NodeLabel) -> bool {
        use NodeLabel::*;
        match self {
            Relation::HasAuthor => src == Paper && dst == Author,
            Relation::PublishedIn => src == Paper && dst == Venue,
            Relation::InDomain => matches!(src, Paper | Technology | Challenge) && dst == Domain,
            Relation::HasMotivation => src == Paper && dst == Motivation,
            Relation::AddressesChallenge => matches!(src, Paper | Technology) && dst == Challenge,
            Relation::ProposesTechnology => src == Paper && dst == Technology,
            Relation::Cites => src == Paper && dst == Reference,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphRole {
    Master,
    Slave,
}

string_enum!(GraphRole, UnknownRole {
    Master => "master",
    Slave => "slave",
});

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KgNode {
    pub node_id: String,
    pub label: NodeLabel,
    pub name: String,
    pub description: String,
    pub graph_role: GraphRole,
    pub aliases: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct KgEdge {
    pub src: String,
    pub dst: String,
    pub relation: Relation,
}

impl fmt::Display for KgEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -[{}]-> {}", self.src, self.relation, self.dst)
    }
}

/// A knowledge graph whose nodes all carry the same [`GraphRole`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    role: GraphRole,
    nodes: Vec<KgNode>,
    index: BTreeMap<String, usize>,
    edges: Vec<KgEdge>,
}

impl Graph {
    pub fn new(role: GraphRole) -> Self {
        Graph {
            role,
            nodes: Vec::new(),
            index: BTreeMap::new(),
            edges: Vec::new(),
        }
    }

    /// Builds a graph, validating every node and edge in order.
    pub fn from_parts(
        role: GraphRole,
        nodes: impl IntoIterator<Item = KgNode>,
        edges: impl IntoIterator<Item = KgEdge>,
    ) -> Result<Self, KgError> {
        let mut g = Graph::new(role);
        for n in nodes {
            g.add_node(n)?;
        }
        for e in edges {
            g.add_edge(e)?;
        }
        Ok(g)
    }

    pub fn role(&self) -> GraphRole {
        self.role
    }

    pub fn add_node(&mut self, node: KgNode) -> Result<(), KgError> {
        if node.node_id.is_empty() {
            return Err(KgError::EmptyNodeId);
        }
        if node.graph_role != self.role {
            return Err(KgError::RoleMismatch {
                node_id: node.node_id,
                expected: self.role,
                found: node.graph_role,
            });
        }
        if self.index.contains_key(&node.node_id) {
            return Err(KgError::DuplicateNode(node.node_id));
        }
        self.index.insert(node.node_id.clone(), self.nodes.len());
        self.nodes.push(node);
        Ok(())
    }

    pub fn add_edge(&mut self, edge: KgEdge) -> Result<(), KgError> {
        let label_of = |id: &str| {
            self.node(id)
                .map(|n| n.label)
                .ok_or_else(|| KgError::DanglingEdge {
                    edge: edge.to_string(),
                    missing: id.to_string(),
                })
        };
        let src_label = label_of(&edge.src)?;
        let dst_label = label_of(&edge.dst)?;
        if !edge.relation.allows(src_label, dst_label) {
            return Err(KgError::EndpointViolation {
                edge: edge.to_string(),
                src_label,
                dst_label,
            });
        }
        self.edges.push(edge);
        Ok(())
    }

    /// Adds every node and edge of `other`, retagging nodes with this
    /// graph's role. Used to supplement a graph with external knowledge.
    pub fn absorb(&mut self, other: Graph) -> Result<(), KgError> {
        for mut n in other.nodes {
            n.graph_role = self.role;
            self.add_node(n)?;
        }
        for e in other.edges {
            self.add_edge(e)?;
        }
        Ok(())
    }

    pub fn node(&self, id: &str) -> Option<&KgNode> {
        self.index.get(id).map(|&i| &self.nodes[i])
    }

    pub fn nodes(&self) -> &[KgNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[KgEdge] {
        &self.edges
    }

    /// Number of edges incident to `id`, counting both directions.
    pub fn degree(&self, id: &str) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.src == id) + usize::from(e.dst == id))
            .sum()
    }

    pub fn node_counts(&self) -> BTreeMap<NodeLabel, usize> {
        let mut counts = BTreeMap::new();
        for n in &self.nodes {
            *counts.entry(n.label).or_insert(0) += 1;
        }
        counts
    }

    pub fn edge_counts(&self) -> BTreeMap<Relation, usize> {
        let mut counts = BTreeMap::new();
        for e in &self.edges {
            *counts.entry(e.relation).or_insert(0) += 1;
        }
        counts
    }

    pub fn freeze(self) -> FrozenGraph {
        FrozenGraph(self)
    }
}

/// A graph that can no longer be mutated; shareable across threads by
/// reference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrozenGraph(Graph);

impl Deref for FrozenGraph {
    type Target = Graph;

    fn deref(&self) -> &Graph {
        &self.0
    }
}

impl FrozenGraph {
    pub fn into_inner(self) -> Graph {
        self.0
    }
}

/// Lowercases, drops punctuation and collapses whitespace.
pub fn normalize_name(name: &str) -> String {
    let cleaned: String = name
        .chars()
        .filter(|c| c.is_alphanumeric() || c.is_whitespace())
        .flat_map(char::to_lowercase)
        .collect();
    cleaned.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Alias to canonical-name table, keyed by normalized alias.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AliasMap {
    map: BTreeMap<String, String>,
}

impl AliasMap {
    /// Builds the table. The same alias may be listed twice only if both rows
    /// name the same canonical entity.
    pub fn from_pairs<A, C>(pairs: impl IntoIterator<Item = (A, C)>) -> Result<Self, KgError>
    where
        A: AsRef<str>,
        C: AsRef<str>,
    {
        let mut map: BTreeMap<String, String> = BTreeMap::new();
        for (alias, canonical) in pairs {
            let a = normalize_name(alias.as_ref());
            let c = normalize_name(canonical.as_ref());
            if a.is_empty() || c.is_empty() {
                continue;
            }
            match map.get(&a) {
                Some(existing) if *existing != c => {
                    return Err(KgError::AmbiguousAlias {
                        alias: alias.as_ref().to_string(),
                        first: existing.clone(),
                        second: c,
                    });
                }
                _ => {
                    map.insert(a, c);
                }
            }
        }
        Ok(AliasMap { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Canonical key for an already-normalized name.
    fn resolve(&self, normalized: String) -> String {
        match self.map.get(&normalized) {
            Some(c) => c.clone(),
            None => normalized,
        }
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Merges same-label nodes whose normalized names or aliases coincide,
/// directly or through `aliases`.
///
/// Each merged group keeps the smallest `node_id`, that node's name and role,
/// the union of all aliases, and the longest description (earliest id wins a
/// tie). Edges are re-pointed to survivors and exact duplicates dropped.
pub fn align_entities(graph: Graph, aliases: Option<&AliasMap>) -> Graph {
    let empty = AliasMap::default();
    let aliases = aliases.unwrap_or(&empty);
    let n = graph.nodes.len();
    let mut parent: Vec<usize> = (0..n).collect();

    let mut owner: BTreeMap<(NodeLabel, String), usize> = BTreeMap::new();
    for (i, node) in graph.nodes.iter().enumerate() {
        let keys = core::iter::once(&node.name).chain(&node.aliases);
        for key in keys {
            let norm = normalize_name(key);
            if norm.is_empty() {
                continue;
            }
            let canonical = aliases.resolve(norm);
            match owner.get(&(node.label, canonical.clone())) {
                Some(&j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
                None => {
                    owner.insert((node.label, canonical), i);
                }
            }
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }

    let mut survivor_of: BTreeMap<String, String> = BTreeMap::new();
    let mut survivors: Vec<(usize, KgNode)> = Vec::with_capacity(groups.len());
    for members in groups.values() {
        let mut members: Vec<&KgNode> = members.iter().map(|&i| &graph.nodes[i]).collect();
        members.sort_by(|a, b| a.node_id.cmp(&b.node_id));
        let head = members[0];

        let mut seen = BTreeSet::new();
        let merged_aliases: Vec<String> = members
            .iter()
            .flat_map(|m| m.aliases.iter())
            .filter(|a| seen.insert(a.as_str()))
            .cloned()
            .collect();
        let description = members
            .iter()
            .fold(&head.description, |best, m| {
                if m.description.chars().count() > best.chars().count() {
                    &m.description
                } else {
                    best
                }
            })
            .clone();

        for m in &members {
            survivor_of.insert(m.node_id.clone(), head.node_id.clone());
        }
        let position = graph.index[&head.node_id];
        survivors.push((
            position,
            KgNode {
                aliases: merged_aliases,
                description,
                ..head.clone()
            },
        ));
    }
    survivors.sort_by_key(|(pos, _)| *pos);

    let mut out = Graph::new(graph.role);
    for (_, node) in survivors {
        out.index.insert(node.node_id.clone(), out.nodes.len());
        out.nodes.push(node);
    }
    let mut seen_edges = BTreeSet::new();
    for e in graph.edges {
        let edge = KgEdge {
            src: survivor_of[&e.src].clone(),
            dst: survivor_of[&e.dst].clone(),
            relation: e.relation,
        };
        if seen_edges.insert(edge.clone()) {
            out.edges.push(edge);
        }
    }
    out
}

/// Anything that can resolve node ids.
pub trait NodeSource {
    fn lookup(&self, id: &str) -> Option<&KgNode>;
}

impl NodeSource for Graph {
    fn lookup(&self, id: &str) -> Option<&KgNode> {
        self.node(id)
    }
}

impl NodeSource for FrozenGraph {
    fn lookup(&self, id: &str) -> Option<&KgNode> {
        self.node(id)
    }
}

/// Searches the graphs in order; the first match wins.
impl<G: NodeSource> NodeSource for [&G] {
    fn lookup(&self, id: &str) -> Option<&KgNode> {
        self.iter().find_map(|g| g.lookup(id))
    }
}

/// A composed description and the nodes it was built from, in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionResult {
    pub text: String,
    pub source_node_ids: Vec<String>,
}

fn described<'a, S: NodeSource + ?Sized>(
    source: &'a S,
    id: &str,
    expected: NodeLabel,
) -> Result<&'a str, KgError> {
    let node = source
        .lookup(id)
        .ok_or_else(|| KgError::MissingNode(id.to_string()))?;
    if node.label != expected {
        return Err(KgError::WrongLabel {
            node_id: id.to_string(),
            expected,
            found: node.label,
        });
    }
    if node.description.trim().is_empty() {
        return Err(KgError::EmptyDescription(id.to_string()));
    }
    Ok(&node.description)
}

fn compose<S: NodeSource + ?Sized>(
    source: &S,
    challenge_id: Option<&str>,
    tech_ids: &[impl AsRef<str>],
) -> Result<CompositionResult, KgError> {
    let mut parts = Vec::with_capacity(tech_ids.len() + 1);
    let mut ids = Vec::with_capacity(tech_ids.len() + 1);
    if let Some(c) = challenge_id {
        parts.push(described(source, c, NodeLabel::Challenge)?);
        ids.push(c.to_string());
    }
    for t in tech_ids {
        parts.push(described(source, t.as_ref(), NodeLabel::Technology)?);
        ids.push(t.as_ref().to_string());
    }
    Ok(CompositionResult {
        text: parts.join(" "),
        source_node_ids: ids,
    })
}

/// The challenge description followed by each technology description.
pub fn compose_target_text<S: NodeSource + ?Sized>(
    source: &S,
    challenge_id: &str,
    tech_ids: &[impl AsRef<str>],
) -> Result<CompositionResult, KgError> {
    compose(source, Some(challenge_id), tech_ids)
}

/// The descriptions of the technologies to steer away from.
pub fn compose_exclude_text<S: NodeSource + ?Sized>(
    source: &S,
    tech_ids: &[impl AsRef<str>],
) -> Result<CompositionResult, KgError> {
    if tech_ids.is_empty() {
        return Err(KgError::EmptyTechList);
    }
    compose(source, None, tech_ids)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn node(id: &str, label: NodeLabel, name: &str, desc: &str) -> KgNode {
        KgNode {
            node_id: id.into(),
            label,
            name: name.into(),
            description: desc.into(),
            graph_role: GraphRole::Master,
            aliases: vec![],
        }
    }

    fn edge(src: &str, dst: &str, relation: Relation) -> KgEdge {
        KgEdge {
            src: src.into(),
            dst: dst.into(),
            relation,
        }
    }

    #[test]
    fn degree_after_load() {
        let g = Graph::from_parts(
            GraphRole::Master,
            vec![
                node("P", NodeLabel::Paper, "p", ""),
                node("A", NodeLabel::Author, "a", ""),
            ],
            vec![edge("P", "A", Relation::HasAuthor)],
        )
        .unwrap();
        assert_eq!(g.degree("P"), 1);
        assert_eq!(g.degree("A"), 1);
    }

    #[test]
    fn dangling_edge() {
        let err = Graph::from_parts(
            GraphRole::Master,
            vec![node("P", NodeLabel::Paper, "p", "")],
            vec![edge("P", "X", Relation::Cites)],
        )
        .unwrap_err();
        assert!(matches!(err, KgError::DanglingEdge { ref missing, .. } if missing == "X"));
    }

    #[test]
    fn endpoint_rule() {
        let err = Graph::from_parts(
            GraphRole::Master,
            vec![
                node("T", NodeLabel::Technology, "t", "d"),
                node("A", NodeLabel::Author, "a", ""),
            ],
            vec![edge("T", "A", Relation::HasAuthor)],
        )
        .unwrap_err();
        assert!(matches!(err, KgError::EndpointViolation { .. }));
    }

    #[test]
    fn every_relation_has_a_legal_pair() {
        for &r in Relation::ALL {
            let legal = NodeLabel::ALL
                .iter()
                .flat_map(|&s| NodeLabel::ALL.iter().map(move |&d| (s, d)))
                .filter(|&(s, d)| r.allows(s, d))
                .count();
            assert!(legal >= 1, "{r}");
            assert!(!r.allows(NodeLabel::Author, NodeLabel::Paper));
        }
    }

    #[test]
    fn role_and_duplicate_checks() {
        let mut g = Graph::new(GraphRole::Slave);
        let n = node("P", NodeLabel::Paper, "p", "");
        assert!(matches!(
            g.add_node(n.clone()),
            Err(KgError::RoleMismatch { .. })
        ));
        let n = KgNode {
            graph_role: GraphRole::Slave,
            ..n
        };
        g.add_node(n.clone()).unwrap();
        assert_eq!(g.add_node(n), Err(KgError::DuplicateNode("P".into())));
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_name("  LDA "), "lda");
        assert_eq!(
            normalize_name("Short-Text   Topic,  Model"),
            "shorttext topic model"
        );
    }

    fn lda_graph() -> Graph {
        Graph::from_parts(
            GraphRole::Master,
            vec![
                node("P1", NodeLabel::Paper, "paper one", ""),
                node("T2", NodeLabel::Technology, "LDA", "topic model"),
                node(
                    "T1",
                    NodeLabel::Technology,
                    "lda ",
                    "latent topic model for text",
                ),
                node(
                    "T3",
                    NodeLabel::Technology,
                    "Latent Dirichlet Allocation",
                    "",
                ),
                node("C1", NodeLabel::Challenge, "LDA", "not a technology"),
            ],
            vec![
                edge("P1", "T2", Relation::ProposesTechnology),
                edge("P1", "T1", Relation::ProposesTechnology),
                edge("P1", "T3", Relation::ProposesTechnology),
            ],
        )
        .unwrap()
    }

    #[test]
    fn align_by_normalized_name() {
        let g = align_entities(lda_graph(), None);
        assert_eq!(g.nodes().len(), 4);
        let t1 = g.node("T1").unwrap();
        assert_eq!(t1.description, "latent topic model for text");
        assert!(g.node("T2").is_none());
        // Challenge "LDA" has a different label and survives.
        assert!(g.node("C1").is_some());
        assert_eq!(
            g.edges(),
            &[
                edge("P1", "T1", Relation::ProposesTechnology),
                edge("P1", "T3", Relation::ProposesTechnology)
            ]
        );
    }

    #[test]
    fn align_by_alias_table() {
        let aliases = AliasMap::from_pairs([("latent dirichlet allocation", "LDA")]).unwrap();
        let g = align_entities(lda_graph(), Some(&aliases));
        assert_eq!(g.nodes().len(), 3);
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.degree("T1"), 1);
    }

    #[test]
    fn align_by_node_aliases() {
        let mut a = node("X2", NodeLabel::Author, "J. Smith", "");
        a.aliases = vec!["John Smith".into()];
        let mut b = node("X1", NodeLabel::Author, "john smith", "");
        b.aliases = vec!["Smith, J".into()];
        let g = Graph::from_parts(GraphRole::Master, vec![a, b], vec![]).unwrap();
        let g = align_entities(g, None);
        assert_eq!(g.nodes().len(), 1);
        assert_eq!(g.nodes()[0].node_id, "X1");
        assert_eq!(
            g.nodes()[0].aliases,
            vec!["Smith, J".to_string(), "John Smith".into()]
        );
    }

    #[test]
    fn align_without_overlap_is_identity() {
        let g = Graph::from_parts(
            GraphRole::Master,
            vec![
                node("P", NodeLabel::Paper, "p", ""),
                node("A", NodeLabel::Author, "a", ""),
                node("B", NodeLabel::Author, "b", ""),
            ],
            vec![
                edge("P", "A", Relation::HasAuthor),
                edge("P", "B", Relation::HasAuthor),
            ],
        )
        .unwrap();
        assert_eq!(align_entities(g.clone(), None), g);
    }

    #[test]
    fn ambiguous_alias() {
        let err = AliasMap::from_pairs([("lda", "LDA"), ("LDA ", "Linear Discriminant Analysis")])
            .unwrap_err();
        assert!(matches!(err, KgError::AmbiguousAlias { .. }));
        assert!(AliasMap::from_pairs([("lda", "X"), ("LDA", "x")]).is_ok());
    }

    fn compose_graph() -> Graph {
        Graph::from_parts(
            GraphRole::Master,
            vec![
                node(
                    "C",
                    NodeLabel::Challenge,
                    "c",
                    "short text sparse artifacts",
                ),
                node(
                    "T1",
                    NodeLabel::Technology,
                    "t1",
                    "topic model for short text",
                ),
                node("T2", NodeLabel::Technology, "t2", "biterm"),
                node("E", NodeLabel::Technology, "e", ""),
            ],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn compose_target_examples() {
        let g = compose_graph();
        let r = compose_target_text(&g, "C", &["T1"]).unwrap();
        assert_eq!(
            r.text,
            "short text sparse artifacts topic model for short text"
        );
        assert_eq!(r.source_node_ids, vec!["C".to_string(), "T1".into()]);

        let none: [&str; 0] = [];
        assert_eq!(
            compose_target_text(&g, "C", &none).unwrap().text,
            "short text sparse artifacts"
        );

        let a = compose_target_text(&g, "C", &["T1", "T2"]).unwrap().text;
        let b = compose_target_text(&g, "C", &["T2", "T1"]).unwrap().text;
        assert_ne!(a, b);
        let mut ta: Vec<&str> = a.split(' ').collect();
        let mut tb: Vec<&str> = b.split(' ').collect();
        ta.sort();
        tb.sort();
        assert_eq!(ta, tb);
    }

    #[test]
    fn compose_errors() {
        let g = compose_graph();
        assert!(matches!(
            compose_target_text(&g, "T1", &["T2"]),
            Err(KgError::WrongLabel { .. })
        ));
        assert_eq!(
            compose_target_text(&g, "C", &["E"]),
            Err(KgError::EmptyDescription("E".into()))
        );
        assert_eq!(
            compose_target_text(&g, "nope", &["T1"]),
            Err(KgError::MissingNode("nope".into()))
        );
        let none: [&str; 0] = [];
        assert_eq!(compose_exclude_text(&g, &none), Err(KgError::EmptyTechList));
    }

    #[test]
    fn compose_exclude_examples() {
        let g = compose_graph();
        assert_eq!(compose_exclude_text(&g, &["T2"]).unwrap().text, "biterm");
        assert_eq!(
            compose_exclude_text(&g, &["T2", "T1"]).unwrap().text,
            "biterm topic model for short text"
        );
    }

    #[test]
    fn compose_across_graphs() {
        let master = compose_graph();
        let mut slave = Graph::new(GraphRole::Slave);
        slave
            .add_node(KgNode {
                graph_role: GraphRole::Slave,
                ..node("S", NodeLabel::Technology, "s", "graph embedding")
            })
            .unwrap();
        let both: [&Graph; 2] = [&master, &slave];
        let r = compose_target_text(&both[..], "C", &["S"]).unwrap();
        assert_eq!(r.text, "short text sparse artifacts graph embedding");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        const NAMES: &[&str] = &[
            "LDA",
            "lda",
            "BTM",
            "b.t.m",
            "Word2Vec",
            "word2vec ",
            "GloVe",
            "x",
        ];
        const LABELS: &[NodeLabel] = &[
            NodeLabel::Paper,
            NodeLabel::Technology,
            NodeLabel::Challenge,
        ];

        fn graph() -> impl Strategy<Value = Graph> {
            let nodes = prop::collection::vec(
                (
                    prop::sample::select(LABELS),
                    prop::sample::select(NAMES),
                    "[a-z ]{0,12}",
                    prop::collection::vec(prop::sample::select(NAMES), 0..2),
                ),
                1..12,
            );
            (
                nodes,
                prop::collection::vec((0usize..12, 0usize..12), 0..20),
            )
                .prop_map(|(nodes, pairs)| {
                    let nodes: Vec<KgNode> = nodes
                        .into_iter()
                        .enumerate()
                        .map(|(i, (label, name, desc, aliases))| KgNode {
                            aliases: aliases.into_iter().map(String::from).collect(),
                            ..node(&alloc::format!("N{i:02}"), label, name, &desc)
                        })
                        .collect();
                    let mut g = Graph::from_parts(GraphRole::Master, nodes, vec![]).unwrap();
                    for (a, b) in pairs {
                        let (Some(s), Some(d)) =
                            (g.nodes().get(a).cloned(), g.nodes().get(b).cloned())
                        else {
                            continue;
                        };
                        for &r in Relation::ALL {
                            if r.allows(s.label, d.label) {
                                g.add_edge(edge(&s.node_id, &d.node_id, r)).unwrap();
                                break;
                            }
                        }
                    }
                    g
                })
        }

        proptest! {
            #[test]
            fn alignment_is_idempotent(g in graph()) {
                let aliases = AliasMap::from_pairs([("btm", "biterm"), ("word2vec", "w2v")]).unwrap();
                let once = align_entities(g, Some(&aliases));
                let twice = align_entities(once.clone(), Some(&aliases));
                prop_assert_eq!(&once, &twice);
            }

            #[test]
            fn alignment_keeps_ontology(g in graph()) {
                let out = align_entities(g, None);
                for e in out.edges() {
                    let s = out.node(&e.src).unwrap();
                    let d = out.node(&e.dst).unwrap();
                    prop_assert!(e.relation.allows(s.label, d.label));
                }
            }

            #[test]
            fn composed_length(descs in prop::collection::vec("[a-z]{1,8}( [a-z]{1,8}){0,3}", 1..6)) {
                let nodes: Vec<KgNode> = descs
                    .iter()
                    .enumerate()
                    .map(|(i, d)| node(&alloc::format!("T{i}"), NodeLabel::Technology, "t", d))
                    .collect();
                let ids: Vec<String> = nodes.iter().map(|n| n.node_id.clone()).collect();
                let g = Graph::from_parts(GraphRole::Master, nodes, vec![]).unwrap();
                let r = compose_exclude_text(&g, &ids).unwrap();
                let expected: usize = descs.iter().map(String::len).sum::<usize>() + descs.len() - 1;
                prop_assert_eq!(r.text.len(), expected);
            }
        }
    }
}
