//! Verification of fiber graphs of T-conic bundles.
//!
//! A fiber graph has black vertices (the `(−1)`-curves `Lᵢ` of the fiber,
//! multiplicities `lᵢ`) and white vertices (exceptional curves `Eⱼ` of the
//! minimal resolution of the singular points). The checks follow the
//! ampleness criterion: tree, parabolic form with positive kernel, white
//! chains of type T or `Aₙ`, and `Δ·Lᵢ < 1` for every black vertex.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::discrepancy::{
    solve_codiscrepancy, white_components, CodiscrepancyVector, WhiteComponent,
};
use crate::error::{Error, Result};
use crate::graph::{
    blow_up_vertex, canonical_form, classify_form, kernel_vector, FormClass, FormTag, KernelVector,
    VertexId, WeightedGraph,
};
use crate::hj::{hj_eval, invariants, is_du_val_chain, Chain};
use crate::tchain::{is_t_chain, t_step_a, Seed};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Checks {
    pub tree: bool,
    pub black_weights: bool,
    pub parabolic: bool,
    pub positive_kernel: bool,
    pub white_chains: bool,
    pub t_or_du_val: bool,
    pub ampleness: bool,
    pub fiber_identity: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberAnalysis {
    pub graph: WeightedGraph,
    pub form: FormClass,
    pub multiplicities: Option<KernelVector>,
    pub codisc: Option<CodiscrepancyVector>,
    pub delta_dot_l: BTreeMap<VertexId, BigRational>,
    pub sum_l: Option<BigUint>,
    pub checks: Checks,
    pub t_conic_bundle: bool,
    pub components: Vec<WhiteComponent>,
    /// lcm of the indices of the white chains; `None` if some white component
    /// is not a chain.
    pub index: Option<BigUint>,
    pub non_du_val_count: usize,
}

impl FiberAnalysis {
    /// The white chains, one per singular point.
    pub fn singular_chains(&self) -> Vec<&Chain> {
        self.components
            .iter()
            .filter_map(WhiteComponent::as_chain)
            .collect()
    }

    /// `Σ lᵢ (Δ·Lᵢ)` over black vertices.
    pub fn l_dot_delta(&self) -> Option<BigRational> {
        let m = self.multiplicities.as_ref()?;
        self.codisc.as_ref()?;
        Some(
            self.delta_dot_l
                .iter()
                .map(|(v, x)| BigRational::from_integer(m.get(*v).unwrap().clone().into()) * x)
                .fold(BigRational::zero(), |a, b| a + b),
        )
    }

    pub fn to_json(&self) -> Value {
        let frac = |x: &BigRational| {
            if x.is_integer() {
                format!("{}/1", x.numer())
            } else {
                x.to_string()
            }
        };
        let ids: Vec<VertexId> = self.graph.vertices().collect();
        let multiplicities = self.multiplicities.as_ref().map(|m| {
            ids.iter()
                .map(|v| big_json(m.get(*v).unwrap()))
                .collect::<Vec<_>>()
        });
        let codisc = self.codisc.as_ref().map(|d| {
            d.entries
                .iter()
                .map(|(v, x)| (v.to_string(), Value::from(frac(x))))
                .collect::<serde_json::Map<_, _>>()
        });
        let delta: serde_json::Map<_, _> = self
            .delta_dot_l
            .iter()
            .map(|(v, x)| (v.to_string(), Value::from(frac(x))))
            .collect();
        let points: Vec<Value> = self
            .components
            .iter()
            .filter_map(WhiteComponent::as_chain)
            .map(|c| {
                json!({
                    "chain": c.to_string(),
                    "fraction": hj_eval(c).to_string(),
                    "tChain": is_t_chain(c),
                    "duVal": is_du_val_chain(c),
                })
            })
            .collect();
        let family = family_match(self).ok().map(|f| f.to_string());
        json!({
            "graph": self.graph.to_json(),
            "canonical": canonical_form(&self.graph).ok().map(|c| c.to_string()),
            "form": self.form,
            "checks": self.checks,
            "tConicBundle": self.t_conic_bundle,
            "multiplicities": multiplicities,
            "codiscrepancies": codisc,
            "deltaDotL": delta,
            "sumL": self.sum_l.as_ref().map(|s| s.to_string()),
            "index": self.index.as_ref().map(big_json),
            "nonDuValCount": self.non_du_val_count,
            "singularPoints": points,
            "nonChainComponents": self.components.len() - self.singular_chains().len(),
            "family": family,
        })
    }
}

fn big_json(x: &BigUint) -> Value {
    u64::try_from(x).map_or_else(|_| Value::from(x.to_string()), Value::from)
}

/// Runs every check. Never fails: problems show up as false verdicts.
///
/// # Panics
///
/// If the fiber identity `Σlᵢ = L·Δ + 2` fails on a graph that passes every
/// other check; that would be an internal inconsistency.
pub fn analyze(g: &WeightedGraph) -> FiberAnalysis {
    let tree = g.is_tree();
    let form = classify_form(g);
    let parabolic = form.tag == FormTag::Parabolic && g.is_connected();
    let multiplicities = if tree && parabolic {
        kernel_vector(g).ok()
    } else {
        None
    };
    let components = white_components(g);
    let white_chains = components.iter().all(|c| c.as_chain().is_some());
    let t_or_du_val = white_chains
        && components
            .iter()
            .filter_map(WhiteComponent::as_chain)
            .all(|c| is_du_val_chain(c) || is_t_chain(c));
    let codisc = if tree {
        solve_codiscrepancy(g).ok()
    } else {
        None
    };
    let mut delta_dot_l = BTreeMap::new();
    if let Some(d) = &codisc {
        for b in g.black_vertices() {
            let s = g
                .neighbors(b)
                .filter_map(|u| d.get(u))
                .fold(BigRational::zero(), |a, x| a + x);
            delta_dot_l.insert(b, s);
        }
    }
    let ampleness = codisc.is_some() && delta_dot_l.values().all(|x| *x < BigRational::one());
    let sum_l = multiplicities.as_ref().map(|m| {
        g.black_vertices()
            .map(|b| m.get(b).unwrap().clone())
            .sum::<BigUint>()
    });
    let index = white_chains.then(|| {
        components
            .iter()
            .filter_map(WhiteComponent::as_chain)
            .map(|c| invariants(&hj_eval(c)).iota)
            .fold(BigUint::one(), |a, i| a.lcm(&i))
    });
    let non_du_val_count = components
        .iter()
        .filter(|c| c.as_chain().is_none_or(|ch| !is_du_val_chain(ch)))
        .count();
    let mut analysis = FiberAnalysis {
        graph: g.clone(),
        form,
        multiplicities,
        codisc,
        delta_dot_l,
        sum_l,
        checks: Checks {
            tree,
            black_weights: g.black_vertices().next().is_some(),
            parabolic,
            positive_kernel: false,
            white_chains,
            t_or_du_val,
            ampleness,
            fiber_identity: false,
        },
        t_conic_bundle: false,
        components,
        index,
        non_du_val_count,
    };
    analysis.checks.positive_kernel = analysis.multiplicities.is_some();
    analysis.checks.fiber_identity = match (analysis.l_dot_delta(), &analysis.sum_l) {
        (Some(ld), Some(s)) => {
            ld + BigRational::from_integer(2.into()) == BigRational::from_integer(s.clone().into())
        }
        _ => false,
    };
    let c = analysis.checks;
    analysis.t_conic_bundle = c.tree
        && c.parabolic
        && c.positive_kernel
        && c.white_chains
        && c.t_or_du_val
        && c.ampleness;
    assert!(
        !analysis.t_conic_bundle || c.fiber_identity,
        "fiber identity fails on a valid fiber graph: {}",
        g.to_text()
    );
    analysis
}

pub fn index(a: &FiberAnalysis) -> Result<BigUint> {
    a.index
        .clone()
        .ok_or_else(|| Error::NotApplicable("a white component is not a chain".into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyTag {
    #[serde(rename = "I*")]
    IStar,
    #[serde(rename = "I**")]
    IStarStar,
    #[serde(rename = "I***")]
    IStarStarStar,
    #[serde(rename = "II*")]
    IIStar,
    #[serde(rename = "III*")]
    IIIStar,
    #[serde(rename = "III**")]
    IIIStarStar,
    Unclassified,
}

impl FamilyTag {
    pub const NAMED: [FamilyTag; 6] = [
        FamilyTag::IStar,
        FamilyTag::IStarStar,
        FamilyTag::IStarStarStar,
        FamilyTag::IIStar,
        FamilyTag::IIIStar,
        FamilyTag::IIIStarStar,
    ];

    pub fn has_box(self) -> bool {
        matches!(
            self,
            FamilyTag::IStar | FamilyTag::IStarStar | FamilyTag::IStarStarStar
        )
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyTag::IStar => "I*",
            FamilyTag::IStarStar => "I**",
            FamilyTag::IStarStarStar => "I***",
            FamilyTag::IIStar => "II*",
            FamilyTag::IIIStar => "III*",
            FamilyTag::IIIStarStar => "III**",
            FamilyTag::Unclassified => "Unclassified",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyLabel {
    pub tag: FamilyTag,
    pub box_chain: Option<Chain>,
}

impl FamilyLabel {
    pub fn to_json(&self) -> Value {
        json!({
            "tag": self.tag.to_string(),
            "box": self.box_chain.as_ref().map(|c| c.to_string()),
        })
    }
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.box_chain {
            Some(b) => write!(f, "{} box [{b}]", self.tag),
            None => write!(f, "{}", self.tag),
        }
    }
}

/// Builds a graph from a white path (ids `0..`) and black vertices, each
/// black given by the ids it attaches to. Further whites are appended with
/// `extra_whites` as `(weight, attached_to)`.
fn assemble(path: &[u32], blacks: &[&[u32]], extra_whites: &[(u32, u32)]) -> WeightedGraph {
    let mut g = WeightedGraph::chain(path).unwrap();
    let mut next = path.len() as u32;
    for &(w, at) in extra_whites {
        g.add_vertex(VertexId(next), w).unwrap();
        g.add_edge(VertexId(next), VertexId(at)).unwrap();
        next += 1;
    }
    for nbrs in blacks {
        g.add_vertex(VertexId(next), 1).unwrap();
        for &u in *nbrs {
            g.add_edge(VertexId(next), VertexId(u)).unwrap();
        }
        next += 1;
    }
    g
}

/// The minimal representative of a family. Boxed families take the box
/// chain, which must have `ι = 2`; the box occupies ids `0..box.len()`.
pub fn family_instance(tag: FamilyTag, box_chain: Option<&Chain>) -> Result<WeightedGraph> {
    if tag.has_box() {
        let b = box_chain.ok_or_else(|| Error::InvalidChain(format!("{tag} needs a box chain")))?;
        if Seed::recognize(b).is_none() {
            return Err(Error::InvalidChain(format!(
                "box [{b}] is not [4] or [3,2,...,2,3]"
            )));
        }
    } else if box_chain.is_some() {
        return Err(Error::InvalidChain(format!("{tag} takes no box chain")));
    }
    let g = match tag {
        FamilyTag::IStar => {
            let b = box_chain.unwrap();
            let last = b.len() as u32 - 1;
            assemble(b.weights(), &[&[0], &[0], &[last], &[last]], &[])
        }
        FamilyTag::IStarStar => {
            // box — black — white 2 on the far end.
            let b = box_chain.unwrap();
            let l = b.len() as u32;
            let mut g = assemble(b.weights(), &[&[0], &[0]], &[]);
            let (black, white) = (VertexId(l + 2), VertexId(l + 3));
            g.add_vertex(black, 1).unwrap();
            g.add_edge(black, VertexId(l - 1)).unwrap();
            g.add_vertex(white, 2).unwrap();
            g.add_edge(black, white).unwrap();
            g
        }
        FamilyTag::IStarStarStar => {
            let b = box_chain.unwrap();
            let mut w = vec![2, 1];
            w.extend_from_slice(b.weights());
            w.extend([1, 2]);
            WeightedGraph::chain(&w).unwrap()
        }
        FamilyTag::IIStar => assemble(&[3, 2, 2, 3], &[&[1], &[3]], &[]),
        FamilyTag::IIIStar => WeightedGraph::chain(&[4, 1, 2, 2, 2]).unwrap(),
        FamilyTag::IIIStarStar => WeightedGraph::chain(&[1, 3, 2, 3, 1])
            .map(|mut g| {
                g.add_vertex(VertexId(5), 1).unwrap();
                g.add_edge(VertexId(5), VertexId(2)).unwrap();
                g
            })
            .unwrap(),
        FamilyTag::Unclassified => {
            return Err(Error::InvalidChain("Unclassified has no instance".into()))
        }
    };
    Ok(g)
}

/// Exact structural match against the six families.
pub fn family_match(a: &FiberAnalysis) -> Result<FamilyLabel> {
    if !a.t_conic_bundle {
        return Err(Error::NotApplicable(
            "graph is not a T-conic bundle fiber".into(),
        ));
    }
    let target = canonical_form(&a.graph)?;
    let n = a.graph.len();
    for tag in FamilyTag::NAMED {
        let box_chain = if tag.has_box() {
            // Every boxed family adds four vertices to the box.
            if n <= 4 {
                continue;
            }
            Some(Seed::of_len(n - 4).chain())
        } else {
            None
        };
        let inst = family_instance(tag, box_chain.as_ref())?;
        if canonical_form(&inst)? == target {
            return Ok(FamilyLabel { tag, box_chain });
        }
    }
    Ok(FamilyLabel {
        tag: FamilyTag::Unclassified,
        box_chain: None,
    })
}

/// One step of the series construction: blow up the black leaf sitting on
/// the end `b₁` of a white chain, then the opposite end `b_ϱ`. The chain
/// `[b₁,…,b_ϱ]` becomes `[2,b₁,…,b_ϱ+1]`.
pub fn construction_step(
    a: &FiberAnalysis,
    black_leaf: VertexId,
    chain_end: VertexId,
) -> Result<FiberAnalysis> {
    let g = &a.graph;
    let pre = |m: String| Error::PreconditionViolated(m);
    if !g.contains(black_leaf) {
        return Err(Error::UnknownVertex(black_leaf));
    }
    if !g.contains(chain_end) {
        return Err(Error::UnknownVertex(chain_end));
    }
    if !g.is_black(black_leaf) {
        return Err(pre(format!("vertex {black_leaf} is not black")));
    }
    let (start, verts, chain) = g
        .neighbors(black_leaf)
        .find_map(|u| {
            a.components.iter().find_map(|comp| match comp {
                WhiteComponent::Chain { vertices, chain } => {
                    let first = vertices[0];
                    let last = *vertices.last().unwrap();
                    if first == u && last == chain_end {
                        Some((u, vertices.clone(), chain.clone()))
                    } else if last == u && first == chain_end {
                        let mut v = vertices.clone();
                        v.reverse();
                        Some((u, v, chain.reversed()))
                    } else {
                        None
                    }
                }
                WhiteComponent::NonChain { .. } => None,
            })
        })
        .ok_or_else(|| {
            pre(format!(
                "black {black_leaf} is not adjacent to an end of a white chain ending at {chain_end}"
            ))
        })?;
    debug_assert_eq!(verts[0], start);

    let (g1, _) = blow_up_vertex(g, black_leaf)?;
    let (g2, _) = blow_up_vertex(&g1, chain_end)?;
    let out = analyze(&g2);

    let post = |m: String| Error::PostVerificationFailed(m);
    if !out.t_conic_bundle {
        return Err(post("result is not a T-conic bundle fiber".into()));
    }
    if out.components.len() != a.components.len() {
        return Err(post(format!(
            "number of singular points changed from {} to {}",
            a.components.len(),
            out.components.len()
        )));
    }
    let expected = t_step_a(&chain);
    let got = out
        .components
        .iter()
        .find_map(|comp| match comp {
            WhiteComponent::Chain { vertices, chain } if vertices[0] == black_leaf => {
                Some(chain.clone())
            }
            WhiteComponent::Chain { vertices, chain }
                if *vertices.last().unwrap() == black_leaf =>
            {
                Some(chain.reversed())
            }
            _ => None,
        })
        .ok_or_else(|| post("blown-up black is not an end of a white chain".into()))?;
    if got != expected {
        return Err(post(format!("chain became [{got}], expected [{expected}]")));
    }
    Ok(out)
}

/// Checks the path `[b_left, 1, b_right]`: whether it is parabolic, and if
/// so whether `Σ(bᵢ−1)` over either side equals `ϱ − 2`, where `ϱ` counts
/// every vertex of the path.
pub fn check_parabolic_line(left: &Chain, right: &Chain) -> (bool, Option<bool>) {
    let mut w = left.weights().to_vec();
    w.push(1);
    w.extend_from_slice(right.weights());
    let g = WeightedGraph::chain(&w).unwrap();
    if classify_form(&g).tag != FormTag::Parabolic {
        return (false, None);
    }
    let rho = w.len() as i64;
    let side = |c: &Chain| c.weights().iter().map(|&b| b as i64 - 1).sum::<i64>();
    (true, Some(side(left) == rho - 2 && side(right) == rho - 2))
}
