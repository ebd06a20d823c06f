//! Bounded enumeration of T-conic bundle fiber graphs.
//!
//! Trees are grown one leaf at a time, one isomorphism class per level. A
//! valid fiber graph is parabolic, so all of its proper subtrees are
//! elliptic; and each of its white components lies inside a T-chain or an
//! all-2 chain. Both properties pass to subtrees, so partial trees violating
//! them are dropped, and a parabolic partial tree is never extended.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{
    canonical_dense, classify_tree_dense, forest_order, CanonicalForm, FormTag, VertexId,
    WeightedGraph,
};
use crate::hj::{hj_eval, invariants, Chain};
use crate::lcb::{
    analyze, construction_step, family_instance, family_match, FamilyLabel, FamilyTag,
    FiberAnalysis,
};
use crate::tchain::{certify, enumerate_tchains, Step, TChainCertificate};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_vertices: usize,
    pub max_weight: u32,
    pub index_filter: Option<u64>,
    pub require_irreducible_fiber: bool,
    pub require_non_du_val: bool,
    /// Upper limit on the number of partial trees the search may generate.
    pub budget: u64,
}

impl SearchBounds {
    pub fn new(max_vertices: usize, max_weight: u32) -> Result<Self> {
        if max_vertices < 2 {
            return Err(Error::InvalidBounds(format!(
                "max_vertices = {max_vertices} < 2"
            )));
        }
        if max_weight < 2 {
            return Err(Error::InvalidBounds(format!(
                "max_weight = {max_weight} < 2"
            )));
        }
        Ok(SearchBounds {
            max_vertices,
            max_weight,
            index_filter: None,
            require_irreducible_fiber: false,
            require_non_du_val: false,
            budget: DEFAULT_BUDGET,
        })
    }

    pub fn index(mut self, i: u64) -> Self {
        self.index_filter = Some(i);
        self
    }

    pub fn irreducible(mut self) -> Self {
        self.require_irreducible_fiber = true;
        self
    }

    pub fn non_du_val(mut self) -> Self {
        self.require_non_du_val = true;
        self
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "maxVertices": self.max_vertices,
            "maxWeight": self.max_weight,
            "index": self.index_filter,
            "irreducible": self.require_irreducible_fiber,
            "nonDuVal": self.require_non_du_val,
        })
    }
}

#[derive(Debug, Clone)]
pub struct FiberRecord {
    pub canonical: CanonicalForm,
    pub analysis: FiberAnalysis,
    pub family: FamilyLabel,
}

impl FiberRecord {
    pub fn graph(&self) -> &WeightedGraph {
        &self.analysis.graph
    }

    /// One JSON line per record.
    pub fn to_json(&self) -> Value {
        json!({
            "canonical": self.canonical.as_str(),
            "vertices": self.analysis.graph.len(),
            "family": self.family.to_json(),
            "index": self.analysis.index.as_ref().map(|i| i.to_string()),
            "nonDuValCount": self.analysis.non_du_val_count,
            "singularPoints": self
                .analysis
                .singular_chains()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>(),
            "checks": self.analysis.checks,
        })
    }
}

fn record(canonical: CanonicalForm, analysis: FiberAnalysis) -> FiberRecord {
    let family = family_match(&analysis).expect("records are valid fibers");
    FiberRecord {
        canonical,
        analysis,
        family,
    }
}

/// Contiguous pieces of T-chains and all-2 chains of length `≤ max_len`
/// whose weights stay within `max_weight`. With an index filter only
/// T-chains whose index divides it can occur.
fn allowed_white_words(max_len: usize, max_weight: u32, index: Option<u64>) -> HashSet<Vec<u32>> {
    let mut out = HashSet::new();
    if max_len == 0 {
        return out;
    }
    for len in 1..=max_len {
        out.insert(vec![2; len]);
    }
    for c in enumerate_tchains(max_len) {
        if let Some(i) = index {
            let iota = invariants(&hj_eval(&c)).iota;
            if !BigUint::from(i).is_multiple_of(&iota) {
                continue;
            }
        }
        let w = c.weights();
        for i in 0..w.len() {
            for j in i + 1..=w.len() {
                if w[i..j].iter().all(|&b| b <= max_weight) {
                    out.insert(w[i..j].to_vec());
                }
            }
        }
    }
    out
}

/// Outcome of extending one tree by one leaf.
enum Child {
    Partial(String),
    Candidate(String),
}

struct Expander<'a> {
    bounds: &'a SearchBounds,
    words: &'a HashSet<Vec<u32>>,
}

impl Expander<'_> {
    /// All admissible one-leaf extensions of the tree encoded by `code`.
    fn expand(&self, code: &str) -> Vec<Child> {
        let g = CanonicalForm::parse_raw(code);
        let (weights, adj) = (g.0, g.1);
        let n = weights.len();
        let blacks = weights.iter().filter(|&&w| w == 1).count();
        let mut out = Vec::new();
        let mut w2 = weights.clone();
        w2.push(0);
        let mut adj2 = adj.clone();
        adj2.push(Vec::new());
        for v in 0..n {
            adj2[v].push(n);
            adj2[n].push(v);
            for w in 1..=self.bounds.max_weight {
                if w == 1 && self.bounds.require_irreducible_fiber && blacks >= 1 {
                    continue;
                }
                if w >= 2 && !self.white_ok(&weights, &adj, v, w) {
                    continue;
                }
                w2[n] = w;
                let tag = classify_tree_dense(&w2, &adj2);
                if tag == FormTag::Other || !ampleness_possible(&w2, &adj2) {
                    continue;
                }
                let code = canonical_dense(&w2, &adj2)
                    .expect("extension of a tree is a tree")
                    .into_string();
                out.push(match tag {
                    FormTag::Elliptic => Child::Partial(code),
                    _ => Child::Candidate(code),
                });
            }
            adj2[v].pop();
            adj2[n].clear();
        }
        out
    }

    /// Whether hanging a white leaf of weight `w` on `v` keeps the white
    /// component of the new leaf inside an allowed word.
    fn white_ok(&self, weights: &[u32], adj: &[Vec<usize>], v: usize, w: u32) -> bool {
        if weights[v] == 1 {
            return self.words.contains(&vec![w]);
        }
        let white_nbrs: Vec<usize> = adj[v]
            .iter()
            .copied()
            .filter(|&u| weights[u] >= 2)
            .collect();
        if white_nbrs.len() >= 2 {
            return false;
        }
        let mut word = vec![w, weights[v]];
        let (mut prev, mut cur) = (v, white_nbrs.first().copied());
        while let Some(c) = cur {
            word.push(weights[c]);
            let next = adj[c]
                .iter()
                .copied()
                .find(|&u| u != prev && weights[u] >= 2);
            if adj[c].iter().filter(|&&u| weights[u] >= 2).count() > 2 {
                return false;
            }
            prev = c;
            cur = next;
        }
        self.words.contains(&word)
    }
}

/// False when some black vertex already has `Δ·L ≥ 1`. Codiscrepancies only
/// grow as white components grow, so such a tree has no valid extension.
/// Floating point with a margin: only clear violations are reported.
fn ampleness_possible(weights: &[u32], adj: &[Vec<usize>]) -> bool {
    if !weights.contains(&1) {
        return true;
    }
    let white_adj: Vec<Vec<usize>> = adj
        .iter()
        .enumerate()
        .map(|(v, ns)| {
            if weights[v] == 1 {
                Vec::new()
            } else {
                ns.iter().copied().filter(|&u| weights[u] >= 2).collect()
            }
        })
        .collect();
    let (order, parent) = forest_order(&white_adj);
    let mut pivot: Vec<f64> = weights.iter().map(|&w| -(w as f64)).collect();
    let mut eff: Vec<f64> = weights.iter().map(|&w| 2.0 - w as f64).collect();
    for &v in order.iter().rev() {
        if let Some(p) = parent[v] {
            pivot[p] -= 1.0 / pivot[v];
            eff[p] -= eff[v] / pivot[v];
        }
    }
    let mut d = vec![0.0; weights.len()];
    for &v in &order {
        if weights[v] == 1 {
            continue;
        }
        let up = parent[v].map_or(0.0, |p| d[p]);
        d[v] = (eff[v] - up) / pivot[v];
    }
    (0..weights.len())
        .filter(|&v| weights[v] == 1)
        .all(|v| adj[v].iter().map(|&u| d[u]).sum::<f64>() < 1.0 + 1e-9)
}

/// Every isomorphism class of T-conic bundle fiber graphs within the bounds
/// that passes the filters, sorted by canonical encoding.
pub fn enumerate_fibers(b: &SearchBounds) -> Result<Vec<FiberRecord>> {
    if b.max_vertices < 2 || b.max_weight < 2 {
        return Err(Error::InvalidBounds(format!(
            "max_vertices = {}, max_weight = {}",
            b.max_vertices, b.max_weight
        )));
    }
    let words = allowed_white_words(b.max_vertices - 1, b.max_weight, b.index_filter);
    let expander = Expander {
        bounds: b,
        words: &words,
    };

    let mut level: Vec<String> = (1..=b.max_weight)
        .filter(|&w| w == 1 || words.contains(&vec![w]))
        .map(|w| format!("({w})"))
        .collect();
    let mut candidates: BTreeSet<String> = BTreeSet::new();
    let mut generated = level.len() as u64;
    for size in 1..b.max_vertices {
        let estimate = level.len() as u64 * size as u64 * b.max_weight as u64;
        if generated.saturating_add(estimate) > b.budget {
            return Err(Error::BoundsTooLarge {
                partial_trees: generated.saturating_add(estimate),
                budget: b.budget,
            });
        }
        let children: Vec<Vec<Child>> =
            level.par_iter().map(|code| expander.expand(code)).collect();
        let mut next = HashSet::new();
        for child in children.into_iter().flatten() {
            generated += 1;
            match child {
                Child::Partial(c) => {
                    next.insert(c);
                }
                Child::Candidate(c) => {
                    candidates.insert(c);
                }
            }
        }
        level = next.into_iter().collect();
        level.sort_unstable();
    }

    let candidates: Vec<String> = candidates.into_iter().collect();
    let mut records: Vec<FiberRecord> = candidates
        .par_iter()
        .filter_map(|code| {
            let canonical = CanonicalForm::parse(code).expect("own encoding");
            let analysis = analyze(&canonical.to_graph());
            keep(b, &analysis).then(|| record(canonical, analysis))
        })
        .collect();
    records.sort_by(|x, y| x.canonical.cmp(&y.canonical));
    Ok(records)
}

fn keep(b: &SearchBounds, a: &FiberAnalysis) -> bool {
    if !a.t_conic_bundle {
        return false;
    }
    if let Some(i) = b.index_filter {
        if a.index.as_ref().map(|x| x != &i.into()).unwrap_or(true) {
            return false;
        }
    }
    if b.require_irreducible_fiber && a.graph.black_vertices().count() != 1 {
        return false;
    }
    if b.require_non_du_val && a.non_du_val_count == 0 {
        return false;
    }
    true
}

#[derive(Debug, Clone)]
pub struct Index2Report {
    pub bounds: SearchBounds,
    /// Index-2 fibers with at least one non-Du Val point.
    pub hits: Vec<FiberRecord>,
    /// Index-2 fibers whose singular points are all Du Val.
    pub du_val_only: Vec<FiberRecord>,
    pub counts: BTreeMap<String, usize>,
}

impl Index2Report {
    pub fn to_json(&self) -> Value {
        json!({
            "bounds": self.bounds.to_json(),
            "hits": self.hits.iter().map(FiberRecord::to_json).collect::<Vec<_>>(),
            "duValOnly": self.du_val_only.len(),
            "counts": self.counts,
        })
    }
}

/// Index-2 fibers up to `max_vertices` vertices with weights at most 6,
/// each matched to one of the six families.
pub fn classify_index2(max_vertices: usize) -> Result<Index2Report> {
    let bounds = SearchBounds::new(max_vertices, 6)?.index(2);
    let all = enumerate_fibers(&bounds)?;
    let (hits, du_val_only): (Vec<_>, Vec<_>) = all
        .into_iter()
        .partition(|r| r.analysis.non_du_val_count >= 1);
    let mut counts = BTreeMap::new();
    for r in &hits {
        if r.family.tag == FamilyTag::Unclassified {
            return Err(Error::ClassificationGap(r.canonical.to_string()));
        }
        *counts.entry(r.family.to_string()).or_insert(0) += 1;
    }
    Ok(Index2Report {
        bounds: bounds.non_du_val(),
        hits,
        du_val_only,
        counts,
    })
}

/// The two fibers of the paper's example with several non-Du Val points,
/// with the shortest runs of 2's the drawings allow.
///
/// The first has white chains `[4]` and `[2,3,2,4]`; the second `[5,2]`,
/// `[3,5,2]` and `[4]`.
pub fn multi_singular_examples() -> [WeightedGraph; 2] {
    let build = |whites: &[(u32, u32)], wedges: &[(u32, u32)], blacks: &[&[u32]]| {
        let mut g = WeightedGraph::new();
        for &(id, w) in whites {
            g.add_vertex(VertexId(id), w).unwrap();
        }
        for &(a, b) in wedges {
            g.add_edge(VertexId(a), VertexId(b)).unwrap();
        }
        for (next, nbrs) in (whites.len() as u32..).zip(blacks) {
            g.add_vertex(VertexId(next), 1).unwrap();
            for &u in *nbrs {
                g.add_edge(VertexId(next), VertexId(u)).unwrap();
            }
        }
        g
    };
    // • – 4 – • – 2 – 3 – 2 – 4 with two black leaves on the last 4.
    let two = build(
        &[(0, 4), (1, 2), (2, 3), (3, 2), (4, 4)],
        &[(1, 2), (2, 3), (3, 4)],
        &[&[0], &[0, 1], &[4], &[4]],
    );
    // Two blacks on 5; 5 – 2 – • – 3 – 5 – 2 – • – 4 – •; a black on the second 5.
    let three = build(
        &[(0, 5), (1, 2), (2, 3), (3, 5), (4, 2), (5, 4)],
        &[(0, 1), (2, 3), (3, 4)],
        &[&[0], &[0], &[1, 2], &[3], &[4, 5], &[5]],
    );
    [two, three]
}

#[derive(Debug, Clone)]
pub struct MultiSingularReport {
    pub bounds: SearchBounds,
    pub by_count: BTreeMap<usize, Vec<CanonicalForm>>,
    /// For each example: its vertex count, whether it passes verification,
    /// its number of non-Du Val points, and whether the scan found it (when
    /// it fits in the bounds).
    pub examples: Vec<ExampleCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExampleCheck {
    pub vertices: usize,
    pub valid: bool,
    pub non_du_val_count: usize,
    pub found_in_scan: Option<bool>,
}

impl MultiSingularReport {
    pub fn to_json(&self) -> Value {
        let groups: BTreeMap<String, Vec<&str>> = self
            .by_count
            .iter()
            .map(|(k, v)| (k.to_string(), v.iter().map(CanonicalForm::as_str).collect()))
            .collect();
        json!({
            "bounds": self.bounds.to_json(),
            "byNonDuValCount": groups,
            "examples": self.examples.iter().map(|e| json!({
                "vertices": e.vertices,
                "valid": e.valid,
                "nonDuValCount": e.non_du_val_count,
                "foundInScan": e.found_in_scan,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Groups all valid fibers within the bounds by their number of non-Du Val
/// points and checks the two multi-point examples against the scan.
pub fn scan_multi_singular(max_vertices: usize, max_weight: u32) -> Result<MultiSingularReport> {
    let bounds = SearchBounds::new(max_vertices, max_weight)?;
    let records = enumerate_fibers(&bounds)?;
    let mut by_count: BTreeMap<usize, Vec<CanonicalForm>> = BTreeMap::new();
    for r in &records {
        by_count
            .entry(r.analysis.non_du_val_count)
            .or_default()
            .push(r.canonical.clone());
    }
    let found: HashSet<&CanonicalForm> = records.iter().map(|r| &r.canonical).collect();
    let examples = multi_singular_examples()
        .iter()
        .map(|g| {
            let a = analyze(g);
            let max_w = g.vertices().map(|v| g.weight(v).unwrap()).max().unwrap();
            let fits = g.len() <= max_vertices && max_w <= max_weight;
            let canonical = crate::graph::canonical_form(g).expect("examples are trees");
            ExampleCheck {
                vertices: g.len(),
                valid: a.t_conic_bundle,
                non_du_val_count: a.non_du_val_count,
                found_in_scan: fits.then(|| found.contains(&canonical)),
            }
        })
        .collect();
    Ok(MultiSingularReport {
        bounds,
        by_count,
        examples,
    })
}

/// A fiber with a single singular point of the target type, built from the
/// `I*` fiber of the target's seed by one construction step per letter of
/// its certificate.
#[derive(Debug, Clone)]
pub struct Realization {
    pub certificate: TChainCertificate,
    /// The starting `I*` fiber followed by the result of every step.
    pub stages: Vec<FiberAnalysis>,
}

impl Realization {
    pub fn result(&self) -> &FiberAnalysis {
        self.stages.last().unwrap()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "target": self.certificate.chain.to_string(),
            "seed": self.certificate.seed.to_string(),
            "word": self.certificate.word(),
            "stages": self.stages.iter().map(|a| json!({
                "canonical": crate::graph::canonical_form(&a.graph).ok().map(|c| c.to_string()),
                "singularPoints": a.singular_chains().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "result": self.result().to_json(),
        })
    }
}

pub fn realize_tchain(target: &Chain, max_steps: usize) -> Result<Realization> {
    let certificate = certify(target)?;
    if certificate.steps.len() > max_steps {
        return Err(Error::NotFound(max_steps));
    }
    let seed = certificate.seed.chain();
    let start = family_instance(FamilyTag::IStar, Some(&seed))?;
    let mut front = VertexId(0);
    let mut far = VertexId(seed.len() as u32 - 1);
    let mut current = analyze(&start);
    let mut stages = vec![current.clone()];
    for step in &certificate.steps {
        let g = &current.graph;
        let end = if *step == Step::A { front } else { far };
        let leaf = g
            .neighbors(end)
            .find(|&u| g.is_black(u) && g.degree(u) == 1)
            .ok_or_else(|| Error::PostVerificationFailed(format!("no black leaf on {end}")))?;
        current = match step {
            Step::A => construction_step(&current, leaf, far)?,
            Step::B => construction_step(&current, leaf, front)?,
        };
        match step {
            Step::A => front = leaf,
            Step::B => far = leaf,
        }
        stages.push(current.clone());
    }
    let chains = current.singular_chains();
    if chains.len() != 1 || (chains[0] != target && chains[0].reversed() != *target) {
        return Err(Error::PostVerificationFailed(format!(
            "realization of [{target}] ended with {} singular points",
            chains.len()
        )));
    }
    Ok(Realization {
        certificate,
        stages,
    })
}
