//! File formats: graph documents (JSON) and count tables (CSV and JSON).
//!
//! A graph document is `{"edges": [[x, y, "E"], [x, y, "N"], ...]}` with an
//! optional `"metadata"` value. The circle has no edges and is written as
//! `{"edges": [], "vertex": [x, y]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dualgraph::{DualGraph, GraphError};
use crate::enumerator::CountTable;
use crate::grid::{Dir, GridPoint, LatticeEdge};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("malformed graph document: {0}")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
enum DirTag {
    E,
    N,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    edges: Vec<(i32, i32, DirTag)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertex: Option<(i32, i32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metadata: Option<serde_json::Value>,
}

/// A parsed graph document; the graph has already been validated.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphDocument {
    pub graph: DualGraph,
    pub metadata: Option<serde_json::Value>,
}

impl GraphDocument {
    pub fn new(graph: DualGraph) -> Self {
        GraphDocument { graph, metadata: None }
    }

    /// Edge list as written, before any validity check.
    pub fn parse_edges(text: &str) -> Result<(Vec<LatticeEdge>, Option<GridPoint>), DocumentError> {
        let raw: Raw = serde_json::from_str(text).map_err(|e| DocumentError::Parse(e.to_string()))?;
        let edges = raw
            .edges
            .iter()
            .map(|&(x, y, d)| LatticeEdge::new(x, y, if d == DirTag::E { Dir::East } else { Dir::North }))
            .collect();
        Ok((edges, raw.vertex.map(|(x, y)| GridPoint::new(x, y))))
    }

    /// Parses and validates. An empty edge list needs a `vertex`; with edges
    /// present, `vertex` is ignored.
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        let raw: Raw = serde_json::from_str(text).map_err(|e| DocumentError::Parse(e.to_string()))?;
        let (edges, vertex) = Self::parse_edges(text)?;
        let graph = if edges.is_empty() {
            let v = vertex.ok_or_else(|| DocumentError::Parse("empty edge list without a vertex".into()))?;
            DualGraph::circle_at(v)
        } else {
            DualGraph::new(edges)?
        };
        Ok(GraphDocument { graph, metadata: raw.metadata })
    }

    /// Compact single-line JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let g = &self.graph;
        let raw = Raw {
            edges: g
                .edges()
                .iter()
                .map(|e| (e.origin.x, e.origin.y, if e.dir == Dir::East { DirTag::E } else { DirTag::N }))
                .collect(),
            vertex: g.is_circle().then(|| (g.anchor().x, g.anchor().y)),
            metadata: self.metadata.clone(),
        };
        let mut s = serde_json::to_string(&raw).expect("plain data serialises");
        s.push('\n');
        s
    }
}

pub const CSV_HEADER: &str = "m,c,fixed,one_sided,free";

/// One line per nonzero `(m, c)` cell, sorted.
pub fn table_csv(t: &CountTable) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for ((m, c), n) in t.iter() {
        out.push_str(&format!("{m},{c},{},{},{}\n", n.fixed, n.one_sided, n.free));
    }
    out
}

#[derive(Serialize)]
struct TableRow {
    m: u32,
    c: u32,
    fixed: u64,
    one_sided: u64,
    free: u64,
}

#[derive(Serialize)]
struct TableDoc {
    max_size: u32,
    rows: Vec<TableRow>,
}

/// Same rows as [`table_csv`], as `{"max_size": M, "rows": [{"m": .., ...}]}`.
pub fn table_json(t: &CountTable) -> String {
    let doc = TableDoc {
        max_size: t.max_size(),
        rows: t
            .iter()
            .map(|((m, c), n)| TableRow { m, c, fixed: n.fixed, one_sided: n.one_sided, free: n.free })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serialises");
    s.push('\n');
    s
}
