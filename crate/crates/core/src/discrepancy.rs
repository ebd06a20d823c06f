//! Codiscrepancies of the exceptional (white) part of a fiber graph.
//!
//! For every white vertex `i` the codiscrepancies `dᵢ` solve
//! `Σⱼ dⱼ (Eⱼ·Eᵢ) = 2 − bᵢ` over the white component containing `i`; the log
//! discrepancies are `αᵢ = 1 − dᵢ`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::graph::{tree_solve, VertexId, WeightedGraph};
use crate::hj::{hj_eval, Chain, Fraction};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WhiteComponent {
    /// A path, listed end to end starting from the end with the smaller id.
    Chain {
        vertices: Vec<VertexId>,
        chain: Chain,
    },
    NonChain {
        vertices: BTreeSet<VertexId>,
    },
}

impl WhiteComponent {
    pub fn vertices(&self) -> Vec<VertexId> {
        match self {
            WhiteComponent::Chain { vertices, .. } => vertices.clone(),
            WhiteComponent::NonChain { vertices } => vertices.iter().copied().collect(),
        }
    }

    pub fn as_chain(&self) -> Option<&Chain> {
        match self {
            WhiteComponent::Chain { chain, .. } => Some(chain),
            WhiteComponent::NonChain { .. } => None,
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        match self {
            WhiteComponent::Chain { vertices, .. } => vertices.contains(&v),
            WhiteComponent::NonChain { vertices } => vertices.contains(&v),
        }
    }
}

pub fn white_components(g: &WeightedGraph) -> Vec<WhiteComponent> {
    let whites: BTreeSet<VertexId> = g.white_vertices().collect();
    g.components_within(&whites)
        .into_iter()
        .map(|comp| {
            let deg = |v: VertexId| g.neighbors(v).filter(|u| comp.contains(u)).count();
            let edges: usize = comp.iter().map(|&v| deg(v)).sum::<usize>() / 2;
            let is_path = edges + 1 == comp.len() && comp.iter().all(|&v| deg(v) <= 2);
            if !is_path {
                return WhiteComponent::NonChain { vertices: comp };
            }
            let start = *comp.iter().find(|&&v| deg(v) <= 1).unwrap();
            let mut path = vec![start];
            let mut prev = None;
            let mut cur = start;
            while let Some(next) = g
                .neighbors(cur)
                .find(|u| comp.contains(u) && Some(*u) != prev)
            {
                path.push(next);
                prev = Some(cur);
                cur = next;
            }
            let chain = Chain::new(path.iter().map(|&v| g.weight(v).unwrap()).collect())
                .expect("white weights are at least 2");
            WhiteComponent::Chain {
                vertices: path,
                chain,
            }
        })
        .collect()
}

/// `hj_eval` of the chain in its listed orientation.
pub fn component_fraction(c: &Chain) -> Fraction {
    hj_eval(c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodiscrepancyVector {
    pub entries: BTreeMap<VertexId, BigRational>,
}

impl CodiscrepancyVector {
    pub fn get(&self, v: VertexId) -> Option<&BigRational> {
        self.entries.get(&v)
    }

    pub fn log_discrepancy(&self, v: VertexId) -> Option<BigRational> {
        self.get(v).map(|d| BigRational::one() - d)
    }
}

/// Solves each white component separately; black vertices do not enter.
pub fn solve_codiscrepancy(g: &WeightedGraph) -> Result<CodiscrepancyVector> {
    g.require_tree()?;
    let mut entries = BTreeMap::new();
    for comp in white_components(g) {
        let verts = comp.vertices();
        let index: BTreeMap<VertexId, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let weights: Vec<u32> = verts.iter().map(|&v| g.weight(v).unwrap()).collect();
        let adj: Vec<Vec<usize>> = verts
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .filter_map(|u| index.get(&u).copied())
                    .collect()
            })
            .collect();
        let rhs: Vec<BigRational> = weights
            .iter()
            .map(|&b| BigRational::from_integer(BigInt::from(2) - BigInt::from(b)))
            .collect();
        let d = tree_solve(&weights, &adj, &rhs).map_err(|i| Error::SingularSystem(verts[i]))?;
        if comp.as_chain().is_some() {
            // Chains of weights ≥ 2 are log terminal.
            for x in &d {
                assert!(
                    !x.is_negative() && *x < BigRational::one(),
                    "codiscrepancy {x} outside [0,1) on a chain"
                );
            }
        }
        entries.extend(verts.into_iter().zip(d));
    }
    Ok(CodiscrepancyVector { entries })
}
