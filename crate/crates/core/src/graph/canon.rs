use std::fmt;

use serde::Serialize;

use super::WeightedGraph;
use crate::error::{Error, Result};

/// Weight-aware encoding of a tree; equal iff the trees are isomorphic.
///
/// Grammar: `node := "(" weight node* ")"`, children sorted, rooted at the
/// centroid that gives the smaller string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Rebuilds the tree, numbering vertices in preorder of the encoding.
    pub fn to_graph(&self) -> WeightedGraph {
        let (weights, adj) = decode(&self.0).expect("canonical encodings are well formed");
        WeightedGraph::from_dense(&weights, &adj).expect("decoded tree is valid")
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Weights and adjacency of an encoding produced by this module.
    pub(crate) fn parse_raw(s: &str) -> (Vec<u32>, Vec<Vec<usize>>) {
        decode(s).expect("canonical encodings are well formed")
    }

    pub fn parse(s: &str) -> Result<Self> {
        let (weights, adj) = decode(s)?;
        canonical_dense(&weights, &adj)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_form(g: &WeightedGraph) -> Result<CanonicalForm> {
    g.require_tree()?;
    let (_, weights, adj) = g.to_dense();
    canonical_dense(&weights, &adj)
}

/// Canonical form of a tree given as weights and adjacency lists.
pub fn canonical_dense(weights: &[u32], adj: &[Vec<usize>]) -> Result<CanonicalForm> {
    let n = weights.len();
    if n == 0 || adj.iter().map(Vec::len).sum::<usize>() != 2 * (n - 1) {
        return Err(Error::NotATree(format!("{n} vertices")));
    }
    let centroids = centroids(adj);
    if centroids.is_empty() {
        return Err(Error::NotATree("disconnected".into()));
    }
    let best = centroids
        .into_iter()
        .map(|c| encode(weights, adj, c, usize::MAX))
        .min()
        .unwrap();
    Ok(CanonicalForm(best))
}

fn centroids(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut order = vec![0];
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                parent[u] = v;
                order.push(u);
            }
        }
        i += 1;
    }
    if order.len() != n {
        return Vec::new();
    }
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if parent[v] != usize::MAX {
            size[parent[v]] += size[v];
        }
    }
    (0..n)
        .filter(|&v| {
            let largest_child = adj[v]
                .iter()
                .filter(|&&u| parent[u] == v)
                .map(|&u| size[u])
                .max()
                .unwrap_or(0);
            largest_child.max(n - size[v]) * 2 <= n
        })
        .collect()
}

fn encode(weights: &[u32], adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut children: Vec<String> = adj[v]
        .iter()
        .filter(|&&u| u != parent)
        .map(|&u| encode(weights, adj, u, v))
        .collect();
    children.sort_unstable();
    let mut s = format!("({}", weights[v]);
    for c in children {
        s.push_str(&c);
    }
    s.push(')');
    s
}

fn decode(s: &str) -> Result<(Vec<u32>, Vec<Vec<usize>>)> {
    let bytes = s.as_bytes();
    let mut weights = Vec::new();
    let mut adj: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut i = 0;
    let err = |i: usize, m: &str| Error::Parse {
        line: 1,
        column: i + 1,
        message: m.to_string(),
    };
    while i < bytes.len() {
        match bytes[i] {
            b'(' => {
                let start = i + 1;
                let mut j = start;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let w: u32 = s[start..j]
                    .parse()
                    .map_err(|_| err(start, "expected a weight"))?;
                if w == 0 {
                    return Err(err(start, "weight 0"));
                }
                let v = weights.len();
                weights.push(w);
                adj.push(Vec::new());
                if let Some(&p) = stack.last() {
                    adj[p].push(v);
                    adj[v].push(p);
                } else if v != 0 {
                    return Err(err(i, "more than one root"));
                }
                stack.push(v);
                i = j;
            }
            b')' => {
                stack.pop().ok_or_else(|| err(i, "unbalanced ')'"))?;
                i += 1;
            }
            _ => return Err(err(i, "unexpected character")),
        }
    }
    if !stack.is_empty() || weights.is_empty() {
        return Err(err(bytes.len(), "unterminated encoding"));
    }
    Ok((weights, adj))
}
