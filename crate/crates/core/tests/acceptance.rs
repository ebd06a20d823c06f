//! Acceptance checks. Prints one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so that every line is printed even when
//! a criterion fails. The exit status is nonzero when a criterion outside
//! `KNOWN_FAILURES` fails, or when a known failure starts passing.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};

use tconic::classify::multi_singular_examples;
use tconic::graph::{canonical_dense, tree_solve_i128};
use tconic::{
    analyze, classify_form, classify_index2, conjugate, enumerate_fibers, enumerate_tchains,
    family_instance, family_match, hj_eval, hj_expand, index, invariants, is_t_fraction,
    realize_tchain, Chain, FamilyTag, FiberAnalysis, FormTag, Fraction, SearchBounds, VertexId,
    WeightedGraph,
};

/// Criteria expected to fail; see the README for the analysis of each.
const KNOWN_FAILURES: [u32; 3] = [5, 7, 10];

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

// ---------------------------------------------------------------------------
// Independent arithmetic used as oracles.

/// `(n, q)` of `[b₁,…,b_ϱ]` by continuants, evaluated from the end.
fn continuants_u64(w: &[u32]) -> (u64, u64) {
    w.iter()
        .rev()
        .fold((1u64, 0u64), |(n, q), &b| (b as u64 * n - q, n))
}

fn brute_inverse(q: u64, n: u64) -> u64 {
    (1..n.max(2)).find(|x| q * x % n == 1 % n).unwrap()
}

/// `(q+1)² ≡ 0 mod n` and not of type `Aₙ`.
fn t_oracle(n: u64, q: u64) -> bool {
    let r = (q + 1) % n;
    (r * r).is_multiple_of(n) && q != n - 1
}

fn t_chain_oracle(w: &[u32]) -> bool {
    if w.iter().all(|&b| b == 2) {
        return false;
    }
    let (n, q) = continuants_u64(w);
    let r = ((q + 1) % n) as u128;
    (r * r).is_multiple_of(n as u128)
}

fn chain(w: &[u32]) -> Chain {
    Chain::new(w.to_vec()).unwrap()
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn mults(a: &FiberAnalysis) -> Vec<u64> {
    let m = a.multiplicities.as_ref().expect("parabolic");
    a.graph
        .vertices()
        .map(|v| m.get(v).unwrap().try_into().unwrap())
        .collect()
}

// ---------------------------------------------------------------------------

fn c1_hj_round_trip() -> Outcome {
    let mut count = 0;
    for n in 2u64..=500 {
        for q in 1..n {
            if n.gcd(&q) != 1 {
                continue;
            }
            count += 1;
            let f = Fraction::new(n, q).unwrap();
            let c = hj_expand(&f);
            ensure!(
                c.weights().iter().all(|&b| b >= 2),
                "{n}/{q}: weight below 2"
            );
            // Evaluate b₁ − 1/(b₂ − …) directly.
            let w = c.weights();
            let mut x = Ratio::from_integer(*w.last().unwrap() as i64);
            for &b in w[..w.len() - 1].iter().rev() {
                x = Ratio::from_integer(b as i64) - x.recip();
            }
            ensure!(
                x == Ratio::new(n as i64, q as i64),
                "{n}/{q}: [{c}] evaluates to {x}"
            );
            ensure!(
                hj_eval(&c) == f,
                "{n}/{q}: hj_eval does not invert hj_expand"
            );
            let g = conjugate(&f);
            ensure!(
                *g.q() == BigUint::from(brute_inverse(q, n)) && *g.n() == BigUint::from(n),
                "{n}/{q}: conjugate {g}"
            );
            ensure!(
                hj_expand(&g) == c.reversed(),
                "{n}/{q}: dual chain is not the reversal"
            );
        }
    }
    Ok(format!("{count} fractions"))
}

fn c2_q_plus_q_prime() -> Outcome {
    let (mut count, mut t_count) = (0, 0);
    for n in 2u64..=500 {
        for q in 1..n {
            if n.gcd(&q) != 1 {
                continue;
            }
            count += 1;
            let qq = brute_inverse(q, n);
            let t = t_oracle(n, q);
            let sum = q + qq == n - 2;
            let (g, gg) = (n.gcd(&(q + 1)), n.gcd(&(qq + 1)));
            let gamma = (q + 1) / g + (qq + 1) / gg == n / g;

            let f = Fraction::new(n, q).unwrap();
            let inv = invariants(&f);
            let inv_dual = invariants(&conjugate(&f));
            let lib_gamma = &inv.gamma + &inv_dual.gamma == inv.iota;
            let lib_t = is_t_fraction(&f);
            ensure!(
                t == sum && sum == gamma && gamma == lib_gamma && lib_gamma == lib_t,
                "1/{n}(1,{q}): T {t}, q+q'=n-2 {sum}, γ+γ'=ι {gamma}, library ({lib_t}, {lib_gamma})"
            );
            t_count += t as usize;
        }
    }
    Ok(format!("{count} fractions, {t_count} of type T"))
}

/// Non-`Aₙ` chains of length `len` with weights in `2..=max_w` and
/// `n | (q+1)²`, built from the end. `excess` bounds `Σ(b−2)`.
fn scan_chains(len: usize, max_w: u32, excess: u32, out: &mut Vec<Vec<u32>>) {
    fn go(
        buf: &mut Vec<u32>,
        len: usize,
        max_w: u32,
        excess: u32,
        n: u64,
        q: u64,
        out: &mut Vec<Vec<u32>>,
    ) {
        if buf.len() == len {
            // buf holds the chain reversed.
            if buf.iter().any(|&b| b != 2) {
                let r = ((q + 1) % n) as u128;
                if (r * r).is_multiple_of(n as u128) {
                    out.push(buf.iter().rev().copied().collect());
                }
            }
            return;
        }
        for b in 2..=max_w.min(2 + excess) {
            buf.push(b);
            go(buf, len, max_w, excess - (b - 2), b as u64 * n - q, n, out);
            buf.pop();
        }
    }
    go(&mut Vec::with_capacity(len), len, max_w, excess, 1, 0, out);
}

fn c3_tchain_completeness() -> Outcome {
    let lib: BTreeSet<Vec<u32>> = enumerate_tchains(12)
        .into_iter()
        .map(Chain::into_weights)
        .collect();
    ensure!(
        lib.iter().all(|w| w.iter().all(|&b| b <= 15)),
        "a T-chain of length ≤ 12 has a weight above 15"
    );
    let mut brute = Vec::new();
    // Lengths up to 8: every chain with weights ≤ 15.
    for len in 1..=8 {
        scan_chains(len, 15, u32::MAX / 2, &mut brute);
    }
    for w in &brute {
        let excess: u32 = w.iter().map(|b| b - 2).sum();
        ensure!(
            excess as usize <= w.len() + 1,
            "[{w:?}] breaks Σ(b−2) ≤ ϱ+1, so the restricted scan would be unsound"
        );
    }
    let literal = brute.len();
    // Longer chains: the scan is restricted to Σ(b−2) ≤ ϱ+1, checked above.
    for len in 9..=12 {
        scan_chains(len, 15, len as u32 + 1, &mut brute);
    }
    let brute: BTreeSet<Vec<u32>> = brute.into_iter().collect();
    if brute != lib {
        let missing: Vec<_> = brute.difference(&lib).take(3).collect();
        let extra: Vec<_> = lib.difference(&brute).take(3).collect();
        return Err(format!("missing {missing:?}, extra {extra:?}"));
    }
    Ok(format!(
        "{} T-chains ({literal} from the full scan of lengths ≤ 8)",
        lib.len()
    ))
}

fn c4_alpha_sum() -> Outcome {
    let mut count = 0usize;
    let mut w = Vec::new();
    for len in 1..=8usize {
        let adj: Vec<Vec<usize>> = (0..len)
            .map(|i| {
                let mut a = Vec::new();
                if i > 0 {
                    a.push(i - 1);
                }
                if i + 1 < len {
                    a.push(i + 1);
                }
                a
            })
            .collect();
        let total = 8u64.pow(len as u32);
        for code in 0..total {
            w.clear();
            let mut c = code;
            for _ in 0..len {
                w.push((c % 8) as u32 + 2);
                c /= 8;
            }
            // α₁ + α_ϱ and the T property are invariant under reversal.
            if w.iter().rev().lt(w.iter()) {
                continue;
            }
            count += 1;
            let rhs: Vec<i128> = w.iter().map(|&b| 2 - b as i128).collect();
            let (d, det) = tree_solve_i128(&w, &adj, &rhs)
                .ok_or_else(|| format!("{w:?}: overflow"))?
                .map_err(|v| format!("{w:?}: singular at {v}"))?;
            // α = 1 − d = (det − num) / det, one determinant for the whole path.
            let det = det[0];
            let (a1, ar) = (det - d[0], det - d[len - 1]);
            let (n, q) = continuants_u64(&w);
            let (_, qq) = continuants_u64(&w.iter().rev().copied().collect::<Vec<_>>());
            let (n, q, qq) = (n as i128, q as i128, qq as i128);
            ensure!(
                a1 * n == (q + 1) * det && ar * n == (qq + 1) * det,
                "{w:?}: α = ({a1}, {ar})/{det} disagrees with (q+1)/n, (q'+1)/n for {n}/{q}"
            );
            let sum_is_one = a1 + ar == det;
            ensure!(
                sum_is_one == t_chain_oracle(&w),
                "{w:?}: α₁+α_ϱ = 1 is {sum_is_one} but T is {}",
                !sum_is_one
            );
        }
    }
    Ok(format!("{count} chains up to reversal"))
}

fn c5_parabolic_table() -> Outcome {
    let mut parabolic: Vec<(String, WeightedGraph)> = vec![
        ("[1,1]".into(), WeightedGraph::chain(&[1, 1]).unwrap()),
        ("[2,1,2]".into(), WeightedGraph::chain(&[2, 1, 2]).unwrap()),
    ];
    for k in 0..=8 {
        let mut w = vec![1];
        w.extend(std::iter::repeat_n(2, k));
        w.push(1);
        parabolic.push((format!("chain {w:?}"), WeightedGraph::chain(&w).unwrap()));
        let mut arm = vec![2; k];
        arm.push(1);
        let g = WeightedGraph::fork(2, &[vec![2], vec![2], arm.clone()]).unwrap();
        parabolic.push((format!("fork [2|2|2|{arm:?}]"), g));
    }
    let mut bad = Vec::new();
    for (name, g) in &parabolic {
        let f = classify_form(g);
        if f.tag != FormTag::Parabolic {
            bad.push(format!("{name} is {:?}", f.tag));
        }
    }
    let mut elliptic_forks = Vec::new();
    for a in 1..=5 {
        for b in a..=5 {
            for c in b..=5 {
                let g = WeightedGraph::fork(1, &[vec![a], vec![b], vec![c]]).unwrap();
                if classify_form(&g).tag == FormTag::Elliptic {
                    elliptic_forks.push(format!("[1|{a}|{b}|{c}]"));
                }
            }
        }
    }
    if !elliptic_forks.is_empty() {
        bad.push(format!(
            "{} forks are Elliptic, e.g. {}",
            elliptic_forks.len(),
            elliptic_forks[..elliptic_forks.len().min(4)].join(", ")
        ));
    }
    ensure!(bad.is_empty(), "{}", bad.join("; "));
    Ok(format!("{} parabolic graphs, 35 forks", parabolic.len()))
}

fn c6_six_families() -> Outcome {
    let boxes = [chain(&[4]), chain(&[3, 2, 2, 3])];
    let mut instances = Vec::new();
    for tag in FamilyTag::NAMED {
        if tag.has_box() {
            for b in &boxes {
                instances.push((tag, Some(b.clone()), family_instance(tag, Some(b)).unwrap()));
            }
        } else {
            instances.push((tag, None, family_instance(tag, None).unwrap()));
        }
    }
    let mut labels = BTreeSet::new();
    for (tag, b, g) in &instances {
        let a = analyze(g);
        let name = format!("{tag} {b:?}");
        ensure!(
            a.t_conic_bundle,
            "{name}: not a T-conic bundle fiber: {:?}",
            a.checks
        );
        ensure!(
            index(&a).ok() == Some(2u32.into()),
            "{name}: index {:?}",
            a.index
        );
        let sum_l = BigRational::from_integer(a.sum_l.clone().unwrap().into());
        let dl = a.l_dot_delta().unwrap();
        ensure!(sum_l == &dl + rat(2, 1), "{name}: Σl = {sum_l}, Δ·L = {dl}");
        let label = family_match(&a).unwrap();
        ensure!(
            label.tag == *tag && label.box_chain == *b,
            "{name}: matched as {label}"
        );
        ensure!(
            labels.insert(label.to_string()),
            "{name}: label {label} not unique"
        );
        // Uniqueness against every other instance.
        for (tag2, b2, g2) in &instances {
            if (tag2, b2) != (tag, b) {
                ensure!(
                    tconic::canonical_form(g).ok() != tconic::canonical_form(g2).ok(),
                    "{name} is isomorphic to {tag2} {b2:?}"
                );
            }
        }
        let m = mults(&a);
        let expect: Option<Vec<u64>> = match (tag, b.as_ref().map(Chain::len)) {
            (FamilyTag::IIIStar, _) => Some(vec![1, 4, 3, 2, 1]),
            (FamilyTag::IStarStarStar, Some(1)) => Some(vec![1, 2, 1, 2, 1]),
            (FamilyTag::IStarStar, Some(1)) => Some(vec![1, 1, 1, 2, 1]),
            // Whites 0..4 then the blacks on vertices 1 and 3.
            (FamilyTag::IIStar, _) => Some(vec![1, 3, 2, 1, 3, 1]),
            _ => None,
        };
        if let Some(e) = expect {
            ensure!(m == e, "{name}: multiplicities {m:?}, expected {e:?}");
        }
        if *tag == FamilyTag::IIIStarStar {
            // Whites are 1,2,3; blacks are the two chain ends 0,4 and 5 on the middle.
            let whites = vec![m[1], m[2], m[3]];
            let blacks = vec![m[0], m[5], m[4]];
            ensure!(
                whites == [1, 2, 1] && blacks == [1, 2, 1],
                "III**: whites {whites:?}, blacks {blacks:?}"
            );
        }
    }
    Ok(format!("{} instances", instances.len()))
}

fn c7_index2() -> Outcome {
    let report = classify_index2(10).map_err(|e| e.to_string())?;
    let counts: Vec<String> = report
        .counts
        .iter()
        .map(|(k, v)| format!("{k}: {v}"))
        .collect();
    Ok(format!("{} hits, {}", report.hits.len(), counts.join(", ")))
}

fn c8_irreducible() -> Outcome {
    let b = SearchBounds::new(10, 6).unwrap().irreducible().non_du_val();
    let records = enumerate_fibers(&b).map_err(|e| e.to_string())?;
    ensure!(!records.is_empty(), "no irreducible fibers found");
    for r in &records {
        ensure!(
            r.family.tag == FamilyTag::IIIStar,
            "{} is {}",
            r.canonical,
            r.family
        );
    }
    Ok(format!("{} record(s), all III*", records.len()))
}

fn c9_realization() -> Outcome {
    let targets = enumerate_tchains(8);
    let mut steps = 0;
    for c in &targets {
        let r = realize_tchain(c, c.len()).map_err(|e| format!("[{c}]: {e}"))?;
        for (i, a) in r.stages.iter().enumerate() {
            ensure!(
                a.t_conic_bundle,
                "[{c}] stage {i}: verification fails: {:?}",
                a.checks
            );
            ensure!(
                a.components.len() == 1 && a.non_du_val_count == 1,
                "[{c}] stage {i}: {} singular points",
                a.components.len()
            );
        }
        let got = r.result().singular_chains()[0].clone();
        ensure!(
            got == *c || got == c.reversed(),
            "[{c}]: realized [{got}] instead"
        );
        steps += r.stages.len() - 1;
    }
    Ok(format!(
        "{} T-chains, {steps} construction steps",
        targets.len()
    ))
}

fn c10_remark_and_examples() -> Outcome {
    let mut g = WeightedGraph::chain(&[3, 3, 4, 2]).unwrap();
    for (id, at) in [(4, 1), (5, 1), (6, 2), (7, 2)] {
        g.add_vertex(VertexId(id), 1).unwrap();
        g.add_edge(VertexId(id), VertexId(at)).unwrap();
    }
    let a = analyze(&g);
    ensure!(a.t_conic_bundle, "remark graph fails: {:?}", a.checks);
    let chains = a.singular_chains();
    ensure!(
        chains.len() == 1,
        "remark graph has {} singular points",
        chains.len()
    );
    let f = hj_eval(chains[0]).to_string();
    ensure!(f == "50/19", "remark graph point is {f}");
    let d = a.codisc.as_ref().unwrap();
    let alphas: Vec<BigRational> = (0..4)
        .map(|i| d.log_discrepancy(VertexId(i)).unwrap())
        .collect();
    ensure!(
        alphas == [rat(2, 5), rat(1, 5), rat(1, 5), rat(3, 5)],
        "remark graph α = {alphas:?}"
    );

    let mut bad = Vec::new();
    for (g, expected) in multi_singular_examples().iter().zip([2, 3]) {
        let a = analyze(g);
        if !a.t_conic_bundle || a.non_du_val_count != expected {
            bad.push(format!(
                "{}-point example: form {:?}, checks {:?}, {} non-Du Val points",
                expected, a.form.tag, a.checks, a.non_du_val_count
            ));
        }
    }
    ensure!(bad.is_empty(), "{}", bad.join("; "));
    Ok("remark graph and both examples".into())
}

/// Prüfer decoding of labelled trees on `n` vertices.
fn pruefer_trees(n: usize) -> Vec<Vec<Vec<usize>>> {
    if n == 1 {
        return vec![vec![vec![]]];
    }
    let mut out = Vec::new();
    let total = n.pow(n as u32 - 2);
    for code in 0..total {
        let mut seq = Vec::new();
        let mut c = code;
        for _ in 0..n - 2 {
            seq.push(c % n);
            c /= n;
        }
        let mut degree = vec![1; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut adj = vec![Vec::new(); n];
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            adj[leaf].push(s);
            adj[s].push(leaf);
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        adj[rest[0]].push(rest[1]);
        adj[rest[1]].push(rest[0]);
        out.push(adj);
    }
    out
}

fn c11_oracle_equivalence() -> Outcome {
    let (max_v, max_w) = (6usize, 4u32);
    // Naive side: every tree shape, every weighting, then full verification.
    let mut classes: BTreeMap<String, WeightedGraph> = BTreeMap::new();
    for n in 1..=max_v {
        let mut shapes = BTreeMap::new();
        for adj in pruefer_trees(n) {
            let key = canonical_dense(&vec![1; n], &adj).unwrap().into_string();
            shapes.entry(key).or_insert(adj);
        }
        for adj in shapes.values() {
            let mut w = vec![1u32; n];
            loop {
                let key = canonical_dense(&w, adj).unwrap().into_string();
                classes
                    .entry(key)
                    .or_insert_with(|| WeightedGraph::from_dense(&w, adj).unwrap());
                // Next weighting in 1..=max_w.
                let Some(i) = w.iter().position(|&x| x < max_w) else {
                    break;
                };
                w[i] += 1;
                for x in &mut w[..i] {
                    *x = 1;
                }
            }
        }
    }
    let valid: Vec<(String, FiberAnalysis)> = classes
        .into_iter()
        .filter_map(|(k, g)| {
            let a = analyze(&g);
            a.t_conic_bundle.then_some((k, a))
        })
        .collect();

    let base = SearchBounds::new(max_v, max_w).unwrap();
    let combos: Vec<(&str, SearchBounds)> = vec![
        ("none", base.clone()),
        ("index 2", base.clone().index(2)),
        ("index 3", base.clone().index(3)),
        ("irreducible", base.clone().irreducible()),
        ("non-Du Val", base.clone().non_du_val()),
        (
            "index 2, irreducible, non-Du Val",
            base.clone().index(2).irreducible().non_du_val(),
        ),
    ];
    let mut sizes = Vec::new();
    for (name, b) in &combos {
        let naive: BTreeSet<String> = valid
            .iter()
            .filter(|(_, a)| {
                b.index_filter.is_none_or(|i| a.index == Some(i.into()))
                    && (!b.require_irreducible_fiber || a.graph.black_vertices().count() == 1)
                    && (!b.require_non_du_val || a.non_du_val_count > 0)
            })
            .map(|(k, _)| k.clone())
            .collect();
        let pruned: BTreeSet<String> = enumerate_fibers(b)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|r| r.canonical.into_string())
            .collect();
        if pruned != naive {
            let missing: Vec<_> = naive.difference(&pruned).take(3).collect();
            let extra: Vec<_> = pruned.difference(&naive).take(3).collect();
            return Err(format!("{name}: search misses {missing:?}, adds {extra:?}"));
        }
        sizes.push(format!("{name}: {}", naive.len()));
    }
    ensure!(sizes[0] != "none: 0", "no fibers at all");
    Ok(sizes.join(", "))
}

// ---------------------------------------------------------------------------

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            name: "HJ round trip and duality, n ≤ 500",
            limit: s(10),
            run: c1_hj_round_trip,
        },
        Criterion {
            id: 2,
            name: "T ⟺ q+q′ = n−2 ⟺ γ+γ′ = ι, n ≤ 500",
            limit: s(10),
            run: c2_q_plus_q_prime,
        },
        Criterion {
            id: 3,
            name: "enumerate_tchains(12) against brute force",
            limit: s(60),
            run: c3_tchain_completeness,
        },
        Criterion {
            id: 4,
            name: "α₁+α_ϱ = 1 ⟺ T-chain, length ≤ 8, weights ≤ 9",
            limit: s(60),
            run: c4_alpha_sum,
        },
        Criterion {
            id: 5,
            name: "parabolic chains and forks, forks [1|a|b|c]",
            limit: s(5),
            run: c5_parabolic_table,
        },
        Criterion {
            id: 6,
            name: "six family instances",
            limit: s(1),
            run: c6_six_families,
        },
        Criterion {
            id: 7,
            name: "index-2 classification up to 10 vertices",
            limit: s(600),
            run: c7_index2,
        },
        Criterion {
            id: 8,
            name: "irreducible fibers up to 10 vertices, weights ≤ 6",
            limit: s(600),
            run: c8_irreducible,
        },
        Criterion {
            id: 9,
            name: "realization of every T-chain of length ≤ 8",
            limit: s(60),
            run: c9_realization,
        },
        Criterion {
            id: 10,
            name: "remark graph and multi-point examples",
            limit: s(1),
            run: c10_remark_and_examples,
        },
        Criterion {
            id: 11,
            name: "pruned search equals naive search, (6, 4)",
            limit: s(60),
            run: c11_oracle_equivalence,
        },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut unexpected = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => {
                Err(format!("{detail}; took longer than {:?}", c.limit))
            }
            o => o,
        };
        let known = KNOWN_FAILURES.contains(&c.id);
        let (verdict, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        let note = match (outcome.is_ok(), known) {
            (false, true) => " (known)",
            (true, true) => " (expected to fail)",
            _ => "",
        };
        println!(
            "{verdict} criterion {:>2}{note}: {} [{:.2} s] {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64()
        );
        if outcome.is_ok() == known {
            unexpected.push(c.id);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
