//! Text and JSON renderings of weighted trees.
//!
//! ```text
//! # comment
//! v 0 4
//! v 1 1
//! e 0 1
//! ```
//!
//! Shorthands `chain:4,1,2,2,2` and `fork:p|a1,a2|b1|c1` expand to the same
//! statements. Everything parsed here must be a tree.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{VertexId, WeightedGraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<[u32; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: u32,
    pub weight: u32,
}

impl From<&WeightedGraph> for GraphJson {
    fn from(g: &WeightedGraph) -> Self {
        GraphJson {
            vertices: g
                .vertices()
                .map(|v| VertexJson {
                    id: v.0,
                    weight: g.weight(v).unwrap(),
                })
                .collect(),
            edges: g.edges().into_iter().map(|(a, b)| [a.0, b.0]).collect(),
        }
    }
}

impl TryFrom<&GraphJson> for WeightedGraph {
    type Error = Error;

    fn try_from(j: &GraphJson) -> Result<Self> {
        let mut g = WeightedGraph::new();
        for v in &j.vertices {
            g.add_vertex(VertexId(v.id), v.weight)?;
        }
        for [a, b] in &j.edges {
            g.add_edge(VertexId(*a), VertexId(*b))?;
        }
        g.require_tree()?;
        Ok(g)
    }
}

impl WeightedGraph {
    /// Statement form: vertices first, then edges, both sorted.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in self.vertices() {
            writeln!(s, "v {v} {}", self.weight(v).unwrap()).unwrap();
        }
        for (a, b) in self.edges() {
            writeln!(s, "e {a} {b}").unwrap();
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson::from(self)).unwrap()
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses any of the accepted renderings and checks that the result is a tree.
pub fn parse_graph(input: &str) -> Result<WeightedGraph> {
    let trimmed = input.trim();
    let g = if let Some(rest) = trimmed.strip_prefix("chain:") {
        let weights = parse_weights(rest, "chain:".len())?;
        WeightedGraph::chain(&weights)?
    } else if let Some(rest) = trimmed.strip_prefix("fork:") {
        parse_fork(rest)?
    } else if trimmed.starts_with('{') {
        let j: GraphJson = serde_json::from_str(trimmed)
            .map_err(|e| parse_err(e.line(), e.column(), e.to_string()))?;
        return WeightedGraph::try_from(&j);
    } else {
        parse_statements(input)?
    };
    g.require_tree()?;
    Ok(g)
}

fn parse_weights(s: &str, offset: usize) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    let mut col = offset + 1;
    for tok in s.split(',') {
        let t = tok.trim();
        let w: u32 = t
            .parse()
            .map_err(|_| parse_err(1, col, format!("expected a weight, found {t:?}")))?;
        if w == 0 {
            return Err(parse_err(1, col, "weights must be positive"));
        }
        out.push(w);
        col += tok.len() + 1;
    }
    Ok(out)
}

fn parse_fork(s: &str) -> Result<WeightedGraph> {
    let offset = "fork:".len();
    let mut parts = s.split('|');
    let center_tok = parts.next().unwrap_or("");
    let center = parse_weights(center_tok, offset)?;
    if center.len() != 1 {
        return Err(parse_err(
            1,
            offset + 1,
            "fork center must be a single weight",
        ));
    }
    let mut col = offset + center_tok.len() + 1;
    let mut arms = Vec::new();
    for part in parts {
        arms.push(parse_weights(part, col)?);
        col += part.len() + 1;
    }
    if arms.is_empty() {
        return Err(parse_err(1, col, "fork needs at least one arm"));
    }
    WeightedGraph::fork(center[0], &arms)
}

fn parse_statements(input: &str) -> Result<WeightedGraph> {
    let mut g = WeightedGraph::new();
    let mut edges = Vec::new();
    for (lineno, line) in input.lines().enumerate() {
        let lineno = lineno + 1;
        let content = line.split('#').next().unwrap();
        let mut tokens = Vec::new();
        let mut col = 0;
        for tok in content.split(' ') {
            if !tok.is_empty() {
                tokens.push((col + 1, tok));
            }
            col += tok.len() + 1;
        }
        let Some(&(kcol, kind)) = tokens.first() else {
            continue;
        };
        let num = |i: usize| -> Result<u32> {
            let (c, t) = tokens
                .get(i)
                .copied()
                .ok_or_else(|| parse_err(lineno, line.len() + 1, "missing operand"))?;
            t.parse()
                .map_err(|_| parse_err(lineno, c, format!("expected a number, found {t:?}")))
        };
        if tokens.len() > 3 {
            return Err(parse_err(lineno, tokens[3].0, "trailing tokens"));
        }
        match kind {
            "v" => {
                let (id, w) = (num(1)?, num(2)?);
                if w == 0 {
                    return Err(parse_err(lineno, tokens[2].0, "weights must be positive"));
                }
                g.add_vertex(VertexId(id), w)
                    .map_err(|e| parse_err(lineno, kcol, e.to_string()))?;
            }
            "e" => edges.push((lineno, kcol, num(1)?, num(2)?)),
            other => {
                return Err(parse_err(
                    lineno,
                    kcol,
                    format!("unknown statement {other:?}, expected 'v' or 'e'"),
                ))
            }
        }
    }
    for (lineno, col, a, b) in edges {
        g.add_edge(VertexId(a), VertexId(b))
            .map_err(|e| parse_err(lineno, col, e.to_string()))?;
    }
    Ok(g)
}
