//! Plain-text edge lists: two whitespace-separated non-negative integers per
//! line. Lines starting with `#` and blank lines are ignored.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{DropStats, Graph, NodeId};

pub fn parse_edge_list(text: &str) -> Result<Vec<(NodeId, NodeId)>> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |msg: String| Error::Parse { line: idx + 1, msg };
        let mut fields = line.split_whitespace();
        let mut next = || -> Result<NodeId> {
            let field = fields
                .next()
                .ok_or_else(|| parse_err("expected two node ids".into()))?;
            field
                .parse::<NodeId>()
                .map_err(|e| parse_err(format!("bad node id {field:?}: {e}")))
        };
        let u = next()?;
        let v = next()?;
        if fields.next().is_some() {
            return Err(parse_err("expected exactly two fields".into()));
        }
        pairs.push((u, v));
    }
    Ok(pairs)
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<(Graph, DropStats)> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Graph::from_edge_list(&parse_edge_list(&text)?)
}

/// Serializes active links, one `u v` pair per line with `u < v`.
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("# nodes {} edges {}\n", g.node_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_edge_list(g)).map_err(|e| Error::io(path, e))
}
