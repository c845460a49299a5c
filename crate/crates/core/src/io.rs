//! Plain-text edge lists.
//!
//! One edge per line as `u v` or `u v w`. Lines starting with `#` are
//! comments, and an optional `n <count>` line fixes the vertex count
//! (otherwise it is one more than the largest vertex id).

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl EdgeListError {
    pub fn line(&self) -> Option<usize> {
        match self {
            EdgeListError::Syntax { line, .. } | EdgeListError::Graph { line, .. } => Some(*line),
            EdgeListError::Io { .. } => None,
        }
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut declared_n = None;
    let mut triples = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let syntax = |reason: String| EdgeListError::Syntax { line, reason };
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens[0] == "n" {
            if tokens.len() != 2 || declared_n.is_some() || !triples.is_empty() {
                return Err(syntax(
                    "header must be a single leading `n <count>` line".into(),
                ));
            }
            let n = tokens[1]
                .parse::<usize>()
                .map_err(|_| syntax(format!("invalid vertex count {:?}", tokens[1])))?;
            declared_n = Some(n);
            continue;
        }
        if !(2..=3).contains(&tokens.len()) {
            return Err(syntax(format!(
                "expected `u v` or `u v w`, got {content:?}"
            )));
        }
        let vertex = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| syntax(format!("invalid vertex id {t:?}")))
        };
        let u = vertex(tokens[0])?;
        let v = vertex(tokens[1])?;
        let w = match tokens.get(2) {
            Some(t) => t
                .parse::<f64>()
                .map_err(|_| syntax(format!("invalid weight {t:?}")))?,
            None => 1.0,
        };
        triples.push((u, v, w));
        lines.push(line);
    }
    let n = declared_n.unwrap_or_else(|| {
        triples
            .iter()
            .map(|&(u, v, _)| u.max(v) + 1)
            .max()
            .unwrap_or(0)
    });
    Graph::new(n, &triples).map_err(|source| {
        let index = match source {
            GraphError::VertexOutOfRange { index, .. }
            | GraphError::SelfLoop { index, .. }
            | GraphError::DuplicateEdge { index, .. }
            | GraphError::InvalidWeight { index, .. } => index,
            GraphError::EdgeNotFound(..) => 0,
        };
        EdgeListError::Graph {
            line: lines.get(index).copied().unwrap_or(0),
            source,
        }
    })
}

/// Serializes with an `n` header; weights are written only for graphs that
/// are not unit-weight.
pub fn write_edge_list(g: &Graph) -> String {
    write_edge_list_with_comment(g, None)
}

pub fn write_edge_list_with_comment(g: &Graph, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(comment) = comment {
        for line in comment.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(out, "n {}", g.n());
    for (e, w) in g.weighted_edges() {
        if g.is_unit_weight() {
            let _ = writeln!(out, "{} {}", e.u, e.v);
        } else {
            let _ = writeln!(out, "{} {} {}", e.u, e.v, w);
        }
    }
    out
}

pub fn read_edge_list(path: &Path) -> Result<Graph, EdgeListError> {
    let text = std::fs::read_to_string(path).map_err(|source| EdgeListError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_edge_list(&text)
}

pub fn write_edge_list_file(
    path: &Path,
    g: &Graph,
    comment: Option<&str>,
) -> Result<(), EdgeListError> {
    std::fs::write(path, write_edge_list_with_comment(g, comment)).map_err(|source| {
        EdgeListError::Io {
            path: path.display().to_string(),
            source,
        }
    })
}
