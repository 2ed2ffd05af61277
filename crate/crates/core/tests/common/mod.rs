//! Brute-force oracles that share no code with the library's fast paths.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cdt_core::Graph;

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = vec![perm.clone()];
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            out.push(perm.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect()
}

/// Largest upper-triangle bit string over all relabelings; `n ≤ 8`.
pub fn brute_canon(g: &Graph, perms: &[Vec<usize>]) -> (usize, u64) {
    let n = g.order();
    let adj = adjacency(g);
    let mut best = 0u64;
    for p in perms {
        let mut code = 0u64;
        for j in 1..n {
            for i in 0..j {
                code <<= 1;
                if adj[p[i]][p[j]] {
                    code |= 1;
                }
            }
        }
        best = best.max(code);
    }
    (n, best)
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Every labeled graph on `n` vertices.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = pairs(n);
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

/// One representative per isomorphism class on `n ≤ 6` vertices, found by
/// permutation brute force.
pub fn catalog(n: usize) -> Vec<Graph> {
    assert!(n <= 6);
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    labeled_graphs(n)
        .filter(|g| seen.insert(brute_canon(g, &perms)))
        .collect()
}

/// Subset scan count of `t`-cliques.
pub fn brute_clique_count(g: &Graph, t: usize) -> u64 {
    let n = g.order();
    let adj = adjacency(g);
    let mut count = 0;
    for mask in 0u64..1 << n {
        if mask.count_ones() as usize != t {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| adj[u][v])) {
            count += 1;
        }
    }
    count
}

pub fn brute_clique_number(g: &Graph) -> usize {
    (0..=g.order()).rev().find(|&t| brute_clique_count(g, t) > 0).unwrap_or(0)
}

pub fn brute_max_degree(g: &Graph) -> usize {
    adjacency(g)
        .iter()
        .map(|row| row.iter().filter(|&&b| b).count())
        .max()
        .unwrap_or(0)
}
