mod common;

use std::collections::{BTreeMap, BTreeSet};

use cdt_core::clique::{clique_count, clique_number};
use cdt_core::search::{enumerate_class, Options};
use cdt_core::turan::{turan_clique_count, turan_graph};
use cdt_core::{canonical_form, is_isomorphic, CanonicalForm, Graph};
use num_bigint::BigUint;

use common::*;

fn class_forms(n: usize, d: usize, w: usize) -> Vec<CanonicalForm> {
    let mut out = Vec::new();
    let count = enumerate_class(n, d, w, &Options::default(), |g| out.push(canonical_form(g))).unwrap();
    assert_eq!(count as usize, out.len());
    out
}

fn in_class(g: &Graph, d: usize, w: usize) -> bool {
    brute_max_degree(g) <= d && brute_clique_number(g) <= w
}

#[test]
fn canonical_form_matches_permutation_oracle() {
    for n in 0..=6 {
        let perms = permutations(n);
        let mut by_oracle: BTreeMap<(usize, u64), CanonicalForm> = BTreeMap::new();
        let mut forms = BTreeSet::new();
        for g in labeled_graphs(n) {
            let form = canonical_form(&g);
            let key = brute_canon(&g, &perms);
            let prev = by_oracle.entry(key).or_insert_with(|| form.clone());
            assert_eq!(*prev, form, "n={n} {g:?}");
            forms.insert(form);
        }
        // distinct classes get distinct forms
        assert_eq!(forms.len(), by_oracle.len());
    }
}

#[test]
fn catalog_sizes() {
    let sizes: Vec<usize> = (0..=6).map(|n| catalog(n).len()).collect();
    assert_eq!(sizes, vec![1, 1, 2, 4, 11, 34, 156]);
}

#[test]
fn enumeration_matches_filtered_catalog_up_to_six() {
    for n in 1..=6 {
        let cat = catalog(n);
        for d in 0..=6 {
            for w in 1..=6 {
                let expected: BTreeSet<CanonicalForm> = cat
                    .iter()
                    .filter(|g| in_class(g, d, w))
                    .map(canonical_form)
                    .collect();
                let got = class_forms(n, d, w);
                assert_eq!(got.len(), expected.len(), "n={n} Δ={d} ω={w}");
                assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), expected, "n={n} Δ={d} ω={w}");
            }
        }
    }
}

#[test]
fn enumeration_matches_filtered_catalog_at_seven() {
    // labeled scan deduplicated by canonical form; independent of the augmentation
    let cat: BTreeMap<CanonicalForm, Graph> = labeled_graphs(7).map(|g| (canonical_form(&g), g)).collect();
    assert_eq!(cat.len(), 1044);
    for d in 0..=6 {
        for w in 1..=6 {
            let expected: BTreeSet<&CanonicalForm> = cat
                .iter()
                .filter(|(_, g)| g.max_degree() <= d && clique_number(g) <= w)
                .map(|(f, _)| f)
                .collect();
            let got = class_forms(7, d, w);
            assert_eq!(got.len(), expected.len(), "Δ={d} ω={w}");
            assert!(got.iter().all(|f| expected.contains(f)));
        }
    }
}

#[test]
fn enumeration_examples() {
    assert_eq!(class_forms(4, 3, 4).len(), 11);
    assert_eq!(class_forms(3, 0, 3).len(), 1);
    let five = catalog(5);
    assert_eq!(five.len(), 34);
    let filtered = five.iter().filter(|g| in_class(g, 2, 3)).count();
    assert_eq!(class_forms(5, 2, 3).len(), filtered);
}

#[test]
fn clique_statistics_match_subset_scan() {
    for n in 0..=6 {
        for g in catalog(n) {
            for t in 0..=n + 1 {
                assert_eq!(clique_count(&g, t), brute_clique_count(&g, t), "{g:?} t={t}");
            }
            assert_eq!(clique_number(&g), brute_clique_number(&g));
            assert_eq!(g.max_degree(), brute_max_degree(&g));
        }
    }
}

#[test]
fn isomorphism_matches_oracle_on_catalog() {
    let five = catalog(5);
    for (i, a) in five.iter().enumerate() {
        for (j, b) in five.iter().enumerate() {
            assert_eq!(is_isomorphic(a, b), i == j);
        }
    }
}

#[test]
fn turan_closed_form_matches_subset_scan() {
    for n in 1..=9 {
        for r in 1..=n {
            let g = turan_graph(n, r).unwrap();
            for t in 0..=n {
                assert_eq!(
                    turan_clique_count(n, r, t),
                    BigUint::from(brute_clique_count(&g, t)),
                    "T({n},{r}) t={t}"
                );
            }
        }
    }
}
