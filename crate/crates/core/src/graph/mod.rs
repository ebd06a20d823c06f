//! Weighted trees of rational curves: the quadratic form, blow-ups and
//! contractions, and canonical forms up to isomorphism.
//!
//! A vertex of weight `b` stands for a smooth rational curve of
//! self-intersection `-b`. Weight-1 vertices are *black*, the rest *white*.

mod canon;
mod form;
mod format;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canon::{canonical_dense, canonical_form, CanonicalForm};
pub(crate) use form::forest_order;
pub use form::{
    classify_form, classify_tree_dense, intersection_matrix, kernel_vector, tree_solve,
    tree_solve_i128, FormClass, FormTag, IntSolution, KernelVector,
};
pub use format::{parse_graph, GraphJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightedGraph {
    weights: BTreeMap<VertexId, u32>,
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl WeightedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: VertexId, weight: u32) -> Result<()> {
        if weight == 0 {
            return Err(Error::InvalidGraph(format!("vertex {id} has weight 0")));
        }
        if self.weights.contains_key(&id) {
            return Err(Error::InvalidGraph(format!("duplicate vertex {id}")));
        }
        self.weights.insert(id, weight);
        self.adj.insert(id, BTreeSet::new());
        Ok(())
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<()> {
        if a == b {
            return Err(Error::InvalidGraph(format!("self-loop at {a}")));
        }
        for v in [a, b] {
            if !self.weights.contains_key(&v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        if !self.adj.get_mut(&a).unwrap().insert(b) {
            return Err(Error::InvalidGraph(format!("duplicate edge {a}-{b}")));
        }
        self.adj.get_mut(&b).unwrap().insert(a);
        Ok(())
    }

    /// The path `b₁ — b₂ — ⋯`, vertices numbered from 0.
    pub fn chain(weights: &[u32]) -> Result<Self> {
        let mut g = Self::new();
        for (i, &w) in weights.iter().enumerate() {
            g.add_vertex(VertexId(i as u32), w)?;
            if i > 0 {
                g.add_edge(VertexId(i as u32 - 1), VertexId(i as u32))?;
            }
        }
        Ok(g)
    }

    /// The fork `[p | a₁,… | b₁,… | …]`: center 0, each arm a path whose first
    /// vertex is adjacent to the center.
    pub fn fork(center: u32, arms: &[Vec<u32>]) -> Result<Self> {
        let mut g = Self::new();
        g.add_vertex(VertexId(0), center)?;
        let mut next = 1;
        for arm in arms {
            if arm.is_empty() {
                return Err(Error::InvalidGraph("empty fork arm".into()));
            }
            let mut prev = VertexId(0);
            for &w in arm {
                let v = VertexId(next);
                next += 1;
                g.add_vertex(v, w)?;
                g.add_edge(prev, v)?;
                prev = v;
            }
        }
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.weights.keys().copied()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.weights.contains_key(&v)
    }

    pub fn weight(&self, v: VertexId) -> Option<u32> {
        self.weights.get(&v).copied()
    }

    pub fn is_black(&self, v: VertexId) -> bool {
        self.weight(v) == Some(1)
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.adj.get(&a).is_some_and(|n| n.contains(&b))
    }

    /// Edges as `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.adj
            .iter()
            .flat_map(|(&a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn black_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.weights
            .iter()
            .filter(|(_, &w)| w == 1)
            .map(|(&v, _)| v)
    }

    pub fn white_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.weights
            .iter()
            .filter(|(_, &w)| w >= 2)
            .map(|(&v, _)| v)
    }

    pub fn is_connected(&self) -> bool {
        let Some(start) = self.vertices().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if seen.insert(u) {
                    queue.push_back(u);
                }
            }
        }
        seen.len() == self.len()
    }

    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.edge_count() + 1 == self.len() && self.is_connected()
    }

    pub fn require_tree(&self) -> Result<()> {
        if self.is_empty() {
            return Err(Error::NotATree("graph has no vertices".into()));
        }
        if !self.is_connected() {
            return Err(Error::NotATree("graph is disconnected".into()));
        }
        if self.edge_count() + 1 != self.len() {
            return Err(Error::NotATree(format!(
                "{} edges on {} vertices: graph has a cycle",
                self.edge_count(),
                self.len()
            )));
        }
        Ok(())
    }

    fn fresh_id(&self) -> VertexId {
        self.weights
            .keys()
            .next_back()
            .map_or(VertexId(0), |v| VertexId(v.0 + 1))
    }

    /// Vertex ids in order, weights, and index-based adjacency lists.
    pub fn to_dense(&self) -> (Vec<VertexId>, Vec<u32>, Vec<Vec<usize>>) {
        let ids: Vec<VertexId> = self.vertices().collect();
        let index: BTreeMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let weights = ids.iter().map(|v| self.weights[v]).collect();
        let adj = ids
            .iter()
            .map(|v| self.neighbors(*v).map(|u| index[&u]).collect())
            .collect();
        (ids, weights, adj)
    }

    /// Rebuilds a graph from dense data, numbering vertices from 0.
    pub fn from_dense(weights: &[u32], adj: &[Vec<usize>]) -> Result<Self> {
        let mut g = Self::new();
        for (i, &w) in weights.iter().enumerate() {
            g.add_vertex(VertexId(i as u32), w)?;
        }
        for (i, ns) in adj.iter().enumerate() {
            for &j in ns {
                if i < j {
                    g.add_edge(VertexId(i as u32), VertexId(j as u32))?;
                }
            }
        }
        Ok(g)
    }

    /// Subgraph induced on `keep`.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> WeightedGraph {
        let mut g = WeightedGraph::new();
        for &v in keep {
            g.weights.insert(v, self.weights[&v]);
            g.adj
                .insert(v, self.neighbors(v).filter(|u| keep.contains(u)).collect());
        }
        g
    }

    /// Connected components of the subgraph induced on `keep`, each sorted.
    pub fn components_within(&self, keep: &BTreeSet<VertexId>) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in keep {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for u in self.neighbors(v) {
                    if keep.contains(&u) && seen.insert(u) {
                        comp.insert(u);
                        queue.push_back(u);
                    }
                }
            }
            out.push(comp);
        }
        out
    }
}

/// Raises the weight of `v` by one and hangs a new black leaf on it.
pub fn blow_up_vertex(g: &WeightedGraph, v: VertexId) -> Result<(WeightedGraph, VertexId)> {
    if !g.contains(v) {
        return Err(Error::UnknownVertex(v));
    }
    let mut out = g.clone();
    let fresh = g.fresh_id();
    *out.weights.get_mut(&v).unwrap() += 1;
    out.add_vertex(fresh, 1)?;
    out.add_edge(v, fresh)?;
    Ok((out, fresh))
}

/// Replaces the edge `a — b` by `a — new black — b`, raising both weights.
pub fn blow_up_edge(
    g: &WeightedGraph,
    a: VertexId,
    b: VertexId,
) -> Result<(WeightedGraph, VertexId)> {
    if !g.has_edge(a, b) {
        return Err(Error::UnknownEdge(a, b));
    }
    let mut out = g.clone();
    let fresh = g.fresh_id();
    out.adj.get_mut(&a).unwrap().remove(&b);
    out.adj.get_mut(&b).unwrap().remove(&a);
    *out.weights.get_mut(&a).unwrap() += 1;
    *out.weights.get_mut(&b).unwrap() += 1;
    out.add_vertex(fresh, 1)?;
    out.add_edge(a, fresh)?;
    out.add_edge(b, fresh)?;
    Ok((out, fresh))
}

/// Inverse of the vertex blow-up (leaf) or edge blow-up (degree two).
pub fn contract_black(g: &WeightedGraph, v: VertexId) -> Result<WeightedGraph> {
    let w = g.weight(v).ok_or(Error::UnknownVertex(v))?;
    if w != 1 {
        return Err(Error::NotBlack(v));
    }
    let nbrs: Vec<VertexId> = g.neighbors(v).collect();
    if nbrs.len() > 2 {
        return Err(Error::NotContractible {
            vertex: v,
            reason: format!("degree {}", nbrs.len()),
        });
    }
    if let Some(&u) = nbrs.iter().find(|&&u| g.weights[&u] < 2) {
        return Err(Error::NotContractible {
            vertex: v,
            reason: format!("neighbor {u} would drop below weight 1"),
        });
    }
    if nbrs.len() == 2 && g.has_edge(nbrs[0], nbrs[1]) {
        return Err(Error::NotContractible {
            vertex: v,
            reason: "neighbors already adjacent".into(),
        });
    }
    let mut out = g.clone();
    out.weights.remove(&v);
    out.adj.remove(&v);
    for &u in &nbrs {
        out.adj.get_mut(&u).unwrap().remove(&v);
        *out.weights.get_mut(&u).unwrap() -= 1;
    }
    if let [a, b] = nbrs[..] {
        out.add_edge(a, b)?;
    }
    Ok(out)
}
