//! Graph documents.
//!
//! JSON: `{"d": 3, "edges": [[1, 2], [2, 3]]}`. Plain text: a first line
//! `d <int>` followed by one `i j` pair per line; blank lines and lines
//! starting with `#` are ignored.

use serde::Deserialize;

use super::{Graph, Vertex};
use crate::error::GraphError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Json,
    Text,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    d: usize,
    edges: Vec<[Vertex; 2]>,
}

/// Parses either format, choosing JSON when the document starts with `{`.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text)
    } else {
        parse_graph_text(text)
    }
}

pub fn parse_graph_json(text: &str) -> Result<Graph, GraphError> {
    let doc: GraphDoc =
        serde_json::from_str(text).map_err(|e| GraphError::Syntax(e.to_string()))?;
    Graph::new(doc.d, doc.edges.into_iter().map(|[i, j]| (i, j)))
}

pub fn parse_graph_text(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (n, header) = lines
        .next()
        .ok_or_else(|| GraphError::Syntax("empty document".into()))?;
    let d = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["d", count] => parse_int(count, n)?,
        _ => {
            return Err(GraphError::Syntax(format!(
                "line {n}: expected header `d <int>`, got `{header}`"
            )))
        }
    };

    let mut pairs = Vec::new();
    for (n, line) in lines {
        match line.split_whitespace().collect::<Vec<_>>()[..] {
            [i, j] => pairs.push((parse_int(i, n)?, parse_int(j, n)?)),
            _ => {
                return Err(GraphError::Syntax(format!(
                    "line {n}: expected `i j`, got `{line}`"
                )))
            }
        }
    }
    Graph::new(d, pairs)
}

fn parse_int(token: &str, line: usize) -> Result<usize, GraphError> {
    token.parse().map_err(|_| {
        GraphError::Syntax(format!(
            "line {line}: `{token}` is not a nonnegative integer"
        ))
    })
}
