mod common;

use cdt_core::clique::{clique_count, clique_counts, vertex_weights};
use cdt_core::turan::{turan_clique_count, turan_graph};
use cdt_core::{canonical_form, graph6, is_isomorphic, Graph, Rational, VertexSet};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{rngs::StdRng, SeedableRng};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let m = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), m).prop_map(move |bits| {
            let edges: Vec<_> = common::pairs(n)
                .into_iter()
                .zip(bits)
                .filter_map(|(e, b)| b.then_some(e))
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_labels(g in graph(14), seed in any::<u64>()) {
        let form = canonical_form(&g);
        let mut rng = StdRng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..g.order()).collect();
        for _ in 0..100 {
            perm.shuffle(&mut rng);
            let h = g.relabel(&perm).unwrap();
            prop_assert!(h.is_well_formed());
            prop_assert_eq!(canonical_form(&h), form.clone());
        }
    }

    #[test]
    fn canonical_form_separates_small_graphs(a in graph(6), b in graph(6)) {
        let perms = common::permutations(a.order());
        let same = a.order() == b.order()
            && common::brute_canon(&a, &perms) == common::brute_canon(&b, &perms);
        prop_assert_eq!(canonical_form(&a) == canonical_form(&b), same);
        prop_assert_eq!(is_isomorphic(&a, &b), same);
    }
}

proptest! {
    #[test]
    fn graph6_round_trip(g in graph(10)) {
        let text = graph6::encode(&g);
        prop_assert_eq!(graph6::decode(&text).unwrap(), g);
    }

    #[test]
    fn graph6_round_trip_large(g in graph(64)) {
        prop_assert_eq!(graph6::decode(&graph6::encode(&g)).unwrap(), g);
    }

    #[test]
    fn complement_is_an_involution(g in graph(20)) {
        let c = g.complement();
        prop_assert!(c.is_well_formed());
        let n = g.order();
        prop_assert_eq!(c.edge_count() + g.edge_count(), n * n.saturating_sub(1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn induced_on_everything_is_identity(g in graph(20)) {
        prop_assert_eq!(g.induced(g.vertices()).unwrap(), g);
    }

    #[test]
    fn union_and_join_counts(g in graph(8), h in graph(8)) {
        let (n, m) = (g.order(), h.order());
        let u = g.disjoint_union(&h).unwrap();
        let j = g.join(&h).unwrap();
        prop_assert!(u.is_well_formed() && j.is_well_formed());
        prop_assert_eq!(u.order(), n + m);
        prop_assert_eq!(j.order(), n + m);
        prop_assert_eq!(u.edge_count(), g.edge_count() + h.edge_count());
        prop_assert_eq!(j.edge_count(), g.edge_count() + h.edge_count() + n * m);
        let (kg, kh) = (clique_counts(&g), clique_counts(&h));
        for t in 1..=n + m {
            let get = |k: &Vec<u64>, i: usize| k.get(i).copied().unwrap_or(0);
            prop_assert_eq!(clique_count(&u, t), get(&kg, t) + get(&kh, t));
            let joined: u64 = (0..=t).map(|i| get(&kg, i) * get(&kh, t - i)).sum();
            prop_assert_eq!(clique_count(&j, t), joined);
        }
    }

    #[test]
    fn clique_counts_match_subset_scan(g in graph(11), t in 0usize..6) {
        prop_assert_eq!(clique_count(&g, t), common::brute_clique_count(&g, t));
    }

    #[test]
    fn handshake(g in graph(12), t in 1usize..6) {
        let sum: u64 = vertex_weights(&g, t).iter().sum();
        prop_assert_eq!(sum, t as u64 * clique_count(&g, t));
    }

    #[test]
    fn turan_count_matches_graph(n in 1usize..=30, r in 1usize..=10, t in 0usize..6) {
        let g = turan_graph(n, r).unwrap();
        prop_assert!(g.is_well_formed());
        prop_assert_eq!(turan_clique_count(n, r, t), BigUint::from(clique_count(&g, t)));
    }

    #[test]
    fn rational_text_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
        let r = Rational::new(p, q);
        let text = r.to_string();
        prop_assert_eq!(text.parse::<Rational>().unwrap(), r.clone());
        let json = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), r);
    }

    #[test]
    fn vertex_set_ops(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (VertexSet(a), VertexSet(b));
        prop_assert_eq!(x.union(y).len() + x.intersection(y).len(), x.len() + y.len());
        prop_assert!(x.difference(y).is_subset(x));
        prop_assert_eq!(x.iter().collect::<VertexSet>(), x);
    }
}
