//! Knowledge-graph CSV files.
//!
//! Nodes: `node_id,label,name,description,graph_role,aliases` with aliases
//! `;`-separated and an empty `graph_role` meaning the graph's own role.
//! Edges: `src,dst,relation`. Aliases: `alias,canonical`.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use kgrec_core::kg::AliasMap;
use kgrec_core::{Graph, GraphRole, KgEdge, KgError, KgNode, NodeLabel, Relation};
use serde::Deserialize;

use super::corpus::split_keywords;
use super::require_columns;
use crate::error::{FileError, Location};

pub const NODE_COLUMNS: [&str; 6] = [
    "node_id",
    "label",
    "name",
    "description",
    "graph_role",
    "aliases",
];
pub const EDGE_COLUMNS: [&str; 3] = ["src", "dst", "relation"];
pub const ALIAS_COLUMNS: [&str; 2] = ["alias", "canonical"];

#[derive(Deserialize)]
struct NodeRow {
    node_id: String,
    label: String,
    name: String,
    description: String,
    graph_role: String,
    aliases: String,
}

#[derive(Deserialize)]
struct EdgeRow {
    src: String,
    dst: String,
    relation: String,
}

#[derive(Deserialize)]
struct AliasRow {
    alias: String,
    canonical: String,
}

/// Deserializes each row of `reader`, handing it to `f` with its line.
fn for_each_row<R, T, F>(
    reader: R,
    path: &Path,
    columns: &[&'static str],
    mut f: F,
) -> Result<(), FileError>
where
    R: Read,
    T: for<'de> Deserialize<'de>,
    F: FnMut(T, Location) -> Result<(), FileError>,
{
    let mut rdr = csv::Reader::from_reader(reader);
    let headers = rdr.headers().map_err(|e| FileError::csv(path, e))?.clone();
    require_columns(&headers, columns, path)?;
    for record in rdr.records() {
        let record = record.map_err(|e| FileError::csv(path, e))?;
        let at = Location::line(path, record.position().map(|p| p.line()));
        let row: T = record
            .deserialize(Some(&headers))
            .map_err(|e| FileError::csv(path, e))?;
        f(row, at)?;
    }
    Ok(())
}

fn open(path: &Path) -> Result<File, FileError> {
    File::open(path).map_err(|e| FileError::at(path, e))
}

pub fn read_nodes<R: Read>(reader: R, path: &Path, graph: &mut Graph) -> Result<(), FileError> {
    let role = graph.role();
    for_each_row(reader, path, &NODE_COLUMNS, |row: NodeRow, at| {
        let fail = |e: KgError| FileError::new(at.clone(), e);
        let label: NodeLabel = row.label.trim().parse().map_err(fail)?;
        let graph_role = match row.graph_role.trim() {
            "" => role,
            r => r.parse().map_err(fail)?,
        };
        graph
            .add_node(KgNode {
                node_id: row.node_id,
                label,
                name: row.name,
                description: row.description,
                graph_role,
                aliases: split_keywords(&row.aliases),
            })
            .map_err(fail)
    })
}

pub fn read_edges<R: Read>(reader: R, path: &Path, graph: &mut Graph) -> Result<(), FileError> {
    for_each_row(reader, path, &EDGE_COLUMNS, |row: EdgeRow, at| {
        let fail = |e: KgError| FileError::new(at.clone(), e);
        let relation: Relation = row.relation.trim().parse().map_err(fail)?;
        graph
            .add_edge(KgEdge {
                src: row.src,
                dst: row.dst,
                relation,
            })
            .map_err(fail)
    })
}

/// Loads one graph; every node must carry `role` (or leave it empty).
pub fn import_graph(
    nodes_path: &Path,
    edges_path: &Path,
    role: GraphRole,
) -> Result<Graph, FileError> {
    let mut graph = Graph::new(role);
    read_nodes(open(nodes_path)?, nodes_path, &mut graph)?;
    read_edges(open(edges_path)?, edges_path, &mut graph)?;
    Ok(graph)
}

pub fn write_nodes<W: Write>(writer: W, graph: &Graph) -> csv::Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(NODE_COLUMNS)?;
    for n in graph.nodes() {
        wtr.write_record([
            n.node_id.as_str(),
            n.label.as_str(),
            &n.name,
            &n.description,
            n.graph_role.as_str(),
            &n.aliases.join(";"),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_edges<W: Write>(writer: W, graph: &Graph) -> csv::Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(EDGE_COLUMNS)?;
    for e in graph.edges() {
        wtr.write_record([e.src.as_str(), &e.dst, e.relation.as_str()])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn export_graph(graph: &Graph, nodes_path: &Path, edges_path: &Path) -> Result<(), FileError> {
    let write = |path: &Path, f: &dyn Fn(File) -> csv::Result<()>| {
        let file = File::create(path).map_err(|e| FileError::at(path, e))?;
        f(file).map_err(|e| FileError::csv(path, e))
    };
    write(nodes_path, &|f| write_nodes(f, graph))?;
    write(edges_path, &|f| write_edges(f, graph))
}

pub fn read_aliases<R: Read>(reader: R, path: &Path) -> Result<AliasMap, FileError> {
    let mut pairs = Vec::new();
    for_each_row(reader, path, &ALIAS_COLUMNS, |row: AliasRow, _| {
        pairs.push((row.alias, row.canonical));
        Ok(())
    })?;
    AliasMap::from_pairs(pairs).map_err(|e| FileError::at(path, e))
}

pub fn load_aliases(path: &Path) -> Result<AliasMap, FileError> {
    read_aliases(open(path)?, path)
}
