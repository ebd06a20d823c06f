use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;

use tconic::graph::tree_solve;
use tconic::{
    blow_up_edge, blow_up_vertex, canonical_form, classify_form, conjugate, contract_black,
    hj_eval, hj_expand, is_t_fraction, parse_graph, Fraction, VertexId, WeightedGraph,
};

fn fraction() -> impl Strategy<Value = (u64, u64)> {
    (2u64..1_000_000_000_000)
        .prop_flat_map(|n| (Just(n), 1..n).prop_filter("coprime", |(n, q)| n.gcd(q) == 1))
}

/// `n = βι²`, `q = βιγ − 1` with `γ` prime to `ι`.
fn t_fraction() -> impl Strategy<Value = (u64, u64)> {
    (1u64..50, 2u64..200)
        .prop_flat_map(|(beta, iota)| (Just(beta), Just(iota), 1..iota))
        .prop_filter_map("coprime", |(beta, iota, gamma)| {
            let (n, q) = (beta * iota * iota, beta * iota * gamma - 1);
            (iota.gcd(&gamma) == 1 && n.gcd(&q) == 1).then_some((n, q))
        })
}

/// Random labelled tree: vertex `i > 0` hangs off a parent below it.
fn tree(max_v: usize, max_w: u32) -> impl Strategy<Value = WeightedGraph> {
    (1..=max_v)
        .prop_flat_map(move |n| {
            let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
            (prop::collection::vec(1..=max_w, n), parents)
        })
        .prop_map(|(w, parents)| {
            let mut adj = vec![Vec::new(); w.len()];
            for (i, p) in parents.into_iter().enumerate() {
                adj[i + 1].push(p);
                adj[p].push(i + 1);
            }
            WeightedGraph::from_dense(&w, &adj).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn expand_then_eval((n, q) in fraction()) {
        let f = Fraction::new(n, q).unwrap();
        prop_assert_eq!(hj_eval(&hj_expand(&f)), f);
    }

    #[test]
    fn dual_chain_is_reversed((n, q) in fraction()) {
        let f = Fraction::new(n, q).unwrap();
        let g = conjugate(&f);
        prop_assert_eq!(hj_expand(&g), hj_expand(&f).reversed());
        prop_assert_eq!(conjugate(&g), f.clone());
        prop_assert!((BigUint::from(q) * g.q() % n) == BigUint::from(1u32) % n);
    }

    #[test]
    fn t_fraction_iff_q_plus_dual((n, q) in prop_oneof![fraction(), t_fraction()]) {
        let f = Fraction::new(n, q).unwrap();
        let qq = conjugate(&f).q().clone();
        prop_assert_eq!(is_t_fraction(&f), BigUint::from(q) + qq + 2u32 == BigUint::from(n));
    }

    #[test]
    fn vertex_blow_up_adds_a_negative_direction(g in tree(8, 5), pick in any::<prop::sample::Index>()) {
        let v = VertexId(pick.index(g.len()) as u32);
        let before = classify_form(&g);
        let (h, fresh) = blow_up_vertex(&g, v).unwrap();
        let after = classify_form(&h);
        prop_assert_eq!(after.negatives, before.negatives + 1);
        prop_assert_eq!((after.zeros, after.positives), (before.zeros, before.positives));
        prop_assert_eq!(contract_black(&h, fresh).unwrap(), g);
    }

    #[test]
    fn edge_blow_up_adds_a_negative_direction(g in tree(8, 5), pick in any::<prop::sample::Index>()) {
        let edges = g.edges();
        prop_assume!(!edges.is_empty());
        let (a, b) = edges[pick.index(edges.len())];
        let before = classify_form(&g);
        let (h, fresh) = blow_up_edge(&g, a, b).unwrap();
        let after = classify_form(&h);
        prop_assert_eq!(after.negatives, before.negatives + 1);
        prop_assert_eq!((after.zeros, after.positives), (before.zeros, before.positives));
        prop_assert_eq!(contract_black(&h, fresh).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labels(g in tree(9, 6), seed in any::<u64>()) {
        let n = g.len() as u32;
        // A permutation of 0..n from an affine map modulo a prime above n.
        let p = (n + 1..).find(|&p| (2..p).all(|d| p % d != 0)).unwrap();
        let a = (seed % (p as u64 - 1)) as u32 + 1;
        let b = (seed >> 32) as u32 % p;
        let relabel = |v: VertexId| VertexId((a as u64 * v.0 as u64 + b as u64) as u32 % p);
        let mut h = WeightedGraph::new();
        for v in g.vertices() {
            h.add_vertex(relabel(v), g.weight(v).unwrap()).unwrap();
        }
        for (u, v) in g.edges() {
            h.add_edge(relabel(u), relabel(v)).unwrap();
        }
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        prop_assert_eq!(canonical_form(&g).unwrap().to_graph().len(), g.len());
    }

    #[test]
    fn text_and_json_round_trip(g in tree(9, 7)) {
        prop_assert_eq!(parse_graph(&g.to_text()).unwrap(), g.clone());
        prop_assert_eq!(parse_graph(&g.to_json().to_string()).unwrap(), g);
    }

    #[test]
    fn tree_solve_satisfies_the_system(g in tree(9, 6), rhs in prop::collection::vec(-5i64..5, 9)) {
        let (_, w, adj) = g.to_dense();
        let b: Vec<BigRational> = rhs[..w.len()].iter().map(|&x| BigRational::from_integer(x.into())).collect();
        match tree_solve(&w, &adj, &b) {
            Ok(x) => {
                for i in 0..w.len() {
                    let mut s = -BigRational::from_integer(BigInt::from(w[i])) * &x[i];
                    for &j in &adj[i] {
                        s += &x[j];
                    }
                    prop_assert_eq!(&s, &b[i]);
                }
            }
            Err(_) => prop_assert!(classify_form(&g).zeros > 0),
        }
    }
}
