//! Exact clique statistics and the local tools built on them: vertex and edge
//! weights, densities, perfect vertices, border profiles and detachability,
//! the averaging bounds, vertex-cover counts and configurations.

use serde::Serialize;

use crate::canon::is_isomorphic;
use crate::error::{Error, Result};
use crate::graph::{bit, low_bits, Bits, Graph, VertexSet};
use crate::rational::Rational;
use crate::turan::turan_graph;

/// `counts[s]` = number of cliques with `s` vertices, for `s = 0..=n` (`counts[0] = 1`).
pub fn clique_counts(g: &Graph) -> Vec<u64> {
    clique_counts_in(g, g.vertices())
}

/// Clique counts of the subgraph induced by `set`.
pub fn clique_counts_in(g: &Graph, set: VertexSet) -> Vec<u64> {
    let mut counts = vec![0u64; set.len() + 1];
    count_cliques(g.rows(), set.bits(), 0, &mut counts);
    counts
}

fn count_cliques(rows: &[u64], cand: u64, depth: usize, counts: &mut [u64]) {
    counts[depth] += 1;
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        count_cliques(rows, rest & rows[v], depth + 1, counts);
    }
}

/// Number of `t`-vertex cliques (`k_0 = 1`, `k_1 = n`, zero for `t > n`).
pub fn clique_count(g: &Graph, t: usize) -> u64 {
    count_in(g, g.vertices(), t)
}

/// Number of `t`-cliques inside `set`.
pub(crate) fn count_in(g: &Graph, set: VertexSet, t: usize) -> u64 {
    if t > set.len() {
        return 0;
    }
    let mut total = 0;
    count_exact(g.rows(), set.bits(), t, &mut total);
    total
}

fn count_exact(rows: &[u64], cand: u64, remaining: usize, total: &mut u64) {
    match remaining {
        0 => *total += 1,
        1 => *total += cand.count_ones() as u64,
        _ => {
            let mut rest = cand;
            while rest.count_ones() as usize >= remaining {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                count_exact(rows, rest & rows[v], remaining - 1, total);
            }
        }
    }
}

/// Size of a largest clique; 0 for the null graph.
pub fn clique_number(g: &Graph) -> usize {
    clique_number_in(g, g.vertices())
}

pub fn clique_number_in(g: &Graph, set: VertexSet) -> usize {
    let mut best = 0;
    max_clique(g.rows(), set.bits(), 0, &mut best);
    best
}

fn max_clique(rows: &[u64], cand: u64, size: usize, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    let mut rest = cand;
    while rest != 0 {
        if size + rest.count_ones() as usize <= *best {
            return;
        }
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        max_clique(rows, rest & rows[v], size + 1, best);
    }
}

/// Whether `set` contains a clique on `k` vertices.
pub fn has_clique_in(g: &Graph, set: VertexSet, k: usize) -> bool {
    has_clique(g.rows(), set.bits(), k)
}

pub(crate) fn has_clique(rows: &[u64], cand: u64, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if (cand.count_ones() as usize) < k {
        return false;
    }
    if k == 1 {
        return true;
    }
    let mut rest = cand;
    while rest.count_ones() as usize >= k {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if has_clique(rows, rest & rows[v], k - 1) {
            return true;
        }
    }
    false
}

/// `k_t(v)`: number of `t`-cliques containing `v`.
pub fn vertex_weight(g: &Graph, v: usize, t: usize) -> Result<u64> {
    let nbrs = g.neighborhood(v, false)?;
    Ok(match t {
        0 => 0,
        _ => count_in(g, nbrs, t - 1),
    })
}

/// `k_t(v)` for every vertex.
pub fn vertex_weights(g: &Graph, t: usize) -> Vec<u64> {
    (0..g.order())
        .map(|v| vertex_weight(g, v, t).expect("vertex in range"))
        .collect()
}

/// `k_t(uv)`: number of `t`-cliques containing the edge `uv`.
pub fn edge_weight(g: &Graph, u: usize, v: usize, t: usize) -> Result<u64> {
    g.neighborhood(u, false)?;
    g.neighborhood(v, false)?;
    if !g.has_edge(u, v) {
        return Err(Error::NotAnEdge(u, v));
    }
    if t < 2 {
        return Ok(0);
    }
    let common = g.neighbors(u).intersection(g.neighbors(v));
    Ok(count_in(g, common, t - 2))
}

/// `ρ_t(G) = k_t(G) / n`.
pub fn density(g: &Graph, t: usize) -> Result<Rational> {
    if g.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(Rational::new(clique_count(g, t), g.order() as u64))
}

/// Errors unless `g` has maximum degree at most `max_degree` and clique number at most `clique_bound`.
pub fn check_class(g: &Graph, max_degree: usize, clique_bound: usize) -> Result<()> {
    let actual_degree = g.max_degree();
    let actual_clique = clique_number(g);
    if actual_degree > max_degree || actual_clique > clique_bound {
        return Err(Error::ClassViolation {
            max_degree,
            clique_bound,
            actual_degree,
            actual_clique,
        });
    }
    Ok(())
}

/// A vertex is perfect when its open neighborhood induces `T(Δ, ω-1)`.
/// A degree below `Δ` simply gives `false`.
pub fn is_perfect_vertex(g: &Graph, v: usize, max_degree: usize, clique_bound: usize) -> Result<bool> {
    check_class(g, max_degree, clique_bound)?;
    let nbrs = g.neighborhood(v, false)?;
    if nbrs.len() < max_degree {
        return Ok(false);
    }
    if clique_bound < 2 {
        // only an isolated vertex with Δ = 0 has the (empty) extremal neighborhood
        return Ok(max_degree == 0);
    }
    let target = turan_graph(max_degree, clique_bound - 1)?;
    Ok(is_isomorphic(&g.induced_unchecked(nbrs), &target))
}

/// Border vertices of an induced subgraph `H` and their cross-degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BorderProfile {
    /// `(v, d_×(v))` for every `v ∈ H` with fewer than `Δ` neighbors inside `H`.
    pub border: Vec<(usize, usize)>,
    /// Clique number of the subgraph induced by the border.
    pub clique_number: usize,
    /// Largest cross-degree among border vertices (0 when there are none).
    pub max_cross: usize,
}

impl BorderProfile {
    pub fn border_set(&self) -> VertexSet {
        self.border.iter().map(|&(v, _)| v).collect()
    }

    /// Whether every maximum clique of the border graph contains a vertex
    /// whose cross-degree is below `max_cross`, the extra hypothesis that
    /// permits the sharper threshold in [`detach_sufficient`].
    pub fn cliques_have_slack(&self, g: &Graph) -> bool {
        if self.clique_number == 0 {
            return false;
        }
        let slack: u64 = self
            .border
            .iter()
            .filter(|&&(_, d)| d < self.max_cross)
            .fold(0, |acc, &(v, _)| acc | bit(v));
        // look for an i-clique avoiding every slack vertex
        let tight = self.border_set().bits() & !slack;
        !has_clique(g.rows(), tight, self.clique_number)
    }
}

pub fn border_profile(g: &Graph, h: VertexSet, max_degree: usize) -> Result<BorderProfile> {
    if !h.is_subset(g.vertices()) {
        return Err(Error::NotASubset);
    }
    let border: Vec<(usize, usize)> = h
        .iter()
        .filter(|&v| g.neighbors(v).intersection(h).len() < max_degree)
        .map(|v| (v, g.neighbors(v).difference(h).len()))
        .collect();
    let set: VertexSet = border.iter().map(|&(v, _)| v).collect();
    Ok(BorderProfile {
        clique_number: clique_number_in(g, set),
        max_cross: border.iter().map(|&(_, d)| d).max().unwrap_or(0),
        border,
    })
}

/// Exact test: no `t`-clique uses an edge between `H` and the rest of `G`.
pub fn is_detachable(g: &Graph, h: VertexSet, t: usize) -> Result<bool> {
    if !h.is_subset(g.vertices()) {
        return Err(Error::NotASubset);
    }
    if t < 2 {
        return Ok(true);
    }
    let rows = g.rows();
    for u in h.iter() {
        for w in Bits(rows[u] & !h.bits()) {
            if has_clique(rows, rows[u] & rows[w], t - 2) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Sufficient condition `t > i + j`, or `t > i + j - 1` when the caller
/// knows every `i`-clique of the border has a vertex with cross-degree `< j`.
pub fn detach_sufficient(profile: &BorderProfile, t: usize, strong: bool) -> bool {
    let reach = profile.clique_number + profile.max_cross;
    if strong {
        t + 1 > reach
    } else {
        t > reach
    }
}

/// `m / t`: the density ceiling when every vertex has weight at most `m`.
///
/// Panics if `t == 0`.
pub fn averaging_bound(m: u64, t: usize) -> Rational {
    assert!(t >= 1, "averaging bound needs t >= 1");
    Rational::new(m, t as u64)
}

/// `(1/t)(k - ℓ/(ℓ+Δ))`: the ceiling when every vertex of maximum weight `k`
/// has at least `ℓ` neighbors of weight at most `k - 1`.
///
/// Panics if `t == 0` or `ℓ + Δ == 0`.
pub fn kk1_bound(k: u64, ell: u64, max_degree: u64, t: usize) -> Rational {
    assert!(t >= 1, "bound needs t >= 1");
    assert!(ell + max_degree > 0, "bound needs ℓ + Δ > 0");
    let inner = Rational::integer(k) - Rational::new(ell, ell + max_degree);
    &inner / &Rational::integer(t as u64)
}

/// Number of `s`-subsets of `V(G)` meeting every edge, by direct subset scan.
pub fn vertex_cover_count(g: &Graph, s: usize) -> u64 {
    let n = g.order();
    if s > n {
        return 0;
    }
    let rows = g.rows();
    let all = low_bits(n);
    subsets_of_size(n, s)
        .filter(|&cover| {
            Bits(all & !cover).all(|v| rows[v] & !cover == 0)
        })
        .count() as u64
}

/// All `k`-subsets of `{0..n}` as bitmasks in increasing numeric order.
pub(crate) fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit: u128 = 1u128 << n;
    let mut next: Option<u128> = if k > n {
        None
    } else {
        Some((1u128 << k) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        if cur >= limit {
            next = None;
            return None;
        }
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(cur as u64)
    })
}

/// An `(r+1)`-set inducing a complete graph minus exactly two edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigurationFinding {
    pub vertices: VertexSet,
    pub missing_edges: [(usize, usize); 2],
    /// Whether the two missing edges share an endpoint.
    pub incident: bool,
}

/// Scans every `(r+1)`-subset for configurations.
pub fn find_configurations(g: &Graph, r: usize) -> Vec<ConfigurationFinding> {
    let n = g.order();
    let size = r + 1;
    if size > n {
        return Vec::new();
    }
    let rows = g.rows();
    let full_pairs = size * (size - 1) / 2;
    let mut out = Vec::new();
    for set in subsets_of_size(n, size) {
        let twice: usize = Bits(set).map(|v| (rows[v] & set).count_ones() as usize).sum();
        if full_pairs - twice / 2 != 2 {
            continue;
        }
        let mut missing = Vec::with_capacity(2);
        for u in Bits(set) {
            for w in Bits(set & !rows[u] & !low_bits(u + 1)) {
                missing.push((u, w));
            }
        }
        let (e, f) = (missing[0], missing[1]);
        let incident = e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1;
        out.push(ConfigurationFinding {
            vertices: VertexSet(set),
            missing_edges: [e, f],
            incident,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::turan::{bt_graph, g_star};

    #[test]
    fn counts_of_complete_graphs() {
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(clique_counts(&k5), vec![1, 5, 10, 10, 5, 1]);
        assert_eq!(clique_count(&k5, 3), 10);
        assert_eq!(clique_count(&k5, 6), 0);
        assert_eq!(clique_count(&k5, 0), 1);
    }

    #[test]
    fn turan_counts() {
        assert_eq!(clique_count(&turan_graph(8, 4).unwrap(), 3), 32);
        assert_eq!(clique_count(&turan_graph(7, 3).unwrap(), 3), 12);
    }

    #[test]
    fn clique_numbers() {
        assert_eq!(clique_number(&bt_graph(2).unwrap()), 3);
        assert_eq!(clique_number(&bt_graph(3).unwrap()), 3);
        assert_eq!(clique_number(&turan_graph(8, 4).unwrap()), 4);
        assert_eq!(clique_number(&Graph::cycle(5).unwrap()), 2);
        assert_eq!(clique_number(&Graph::empty(0).unwrap()), 0);
        assert_eq!(clique_number(&Graph::empty(3).unwrap()), 1);
    }

    #[test]
    fn weights() {
        let t84 = turan_graph(8, 4).unwrap();
        assert!(vertex_weights(&t84, 3).iter().all(|&w| w == 12));
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(vertex_weight(&k4, 2, 3).unwrap(), 3);
        assert_eq!(edge_weight(&k4, 0, 3, 3).unwrap(), 2);
        let p3 = Graph::path(3).unwrap();
        assert_eq!(edge_weight(&p3, 0, 2, 3), Err(Error::NotAnEdge(0, 2)));
        assert!(vertex_weight(&p3, 3, 2).is_err());
    }

    #[test]
    fn densities() {
        assert_eq!(density(&bt_graph(2).unwrap(), 3).unwrap(), Rational::new(15, 8));
        assert_eq!(density(&g_star(), 3).unwrap(), Rational::new(16, 7));
        assert_eq!(density(&Graph::empty(1).unwrap(), 3).unwrap(), Rational::zero());
        assert_eq!(density(&Graph::empty(0).unwrap(), 3), Err(Error::EmptyGraph));
    }

    #[test]
    fn perfect_vertices_in_turan_graphs() {
        // T(7,3) has parts of sizes 3, 2, 2 at vertices 0-2, 3-4, 5-6
        let t73 = turan_graph(7, 3).unwrap();
        assert_eq!(t73.degree(3), 5);
        assert!(is_perfect_vertex(&t73, 3, 5, 3).unwrap());
        assert_eq!(t73.degree(0), 4);
        assert!(!is_perfect_vertex(&t73, 0, 5, 3).unwrap());

        let t84 = turan_graph(8, 4).unwrap();
        assert!((0..8).all(|v| !is_perfect_vertex(&t84, v, 6, 5).unwrap()));
        assert!(matches!(
            is_perfect_vertex(&t84, 0, 5, 5),
            Err(Error::ClassViolation { .. })
        ));
    }

    fn bowtie() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (0, 3), (0, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn border_of_whole_graph() {
        let g = bowtie();
        let p = border_profile(&g, g.vertices(), 3).unwrap();
        assert_eq!(p.border, vec![(1, 0), (2, 0), (3, 0), (4, 0)]);
        assert_eq!(p.max_cross, 0);
    }

    #[test]
    fn bowtie_triangle_is_not_detachable() {
        let g = bowtie();
        let h = VertexSet::from_vertices([0, 1, 2]);
        let p = border_profile(&g, h, 4).unwrap();
        assert_eq!(p.border, vec![(0, 2), (1, 0), (2, 0)]);
        assert_eq!(p.clique_number, 3);
        assert_eq!(p.max_cross, 2);
        assert!(!is_detachable(&g, h, 3).unwrap());
        assert!(!detach_sufficient(&p, 3, false));
        // no triangle of size 4 uses a cross edge
        assert!(is_detachable(&g, h, 4).unwrap());
    }

    #[test]
    fn no_cross_edges_means_detachable() {
        let g = Graph::complete(3)
            .unwrap()
            .disjoint_union(&Graph::cycle(4).unwrap())
            .unwrap();
        let h = VertexSet::from_vertices([0, 1, 2]);
        for t in 0..=7 {
            assert!(is_detachable(&g, h, t).unwrap());
        }
    }

    #[test]
    fn lemma_threshold() {
        let p = BorderProfile {
            border: vec![],
            clique_number: 2,
            max_cross: 1,
        };
        assert!(detach_sufficient(&p, 4, false));
        assert!(!detach_sufficient(&p, 3, false));
        assert!(detach_sufficient(&p, 3, true));
    }

    #[test]
    fn perfect_neighborhood_border_in_g65() {
        // closed neighborhood of a perfect vertex in G(6,5) is T(7,5): parts {0,1},{2,3},{4},{5},{6}
        let n = turan_graph(7, 5).unwrap();
        let p = border_profile(&n, n.vertices(), 6).unwrap();
        let border: Vec<usize> = p.border.iter().map(|&(v, _)| v).collect();
        assert_eq!(border, vec![0, 1, 2, 3]);
        assert_eq!(p.clique_number, 2);
        assert!(p.max_cross <= 1);
    }

    #[test]
    fn averaging_bounds() {
        assert_eq!(kk1_bound(6, 3, 5, 3), Rational::new(15, 8));
        assert_eq!(kk1_bound(7, 1, 5, 3), Rational::new(41, 18));
        for (k, d, t) in [(6, 5, 3), (13, 6, 3), (4, 1, 2)] {
            assert_eq!(kk1_bound(k, 0, d, t), averaging_bound(k, t));
        }
    }

    #[test]
    fn vertex_covers() {
        assert_eq!(vertex_cover_count(&Graph::complete(3).unwrap(), 2), 3);
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(vertex_cover_count(&two_k2, 2), 4);
        let p4_i1 = Graph::path(4)
            .unwrap()
            .disjoint_union(&Graph::empty(1).unwrap())
            .unwrap();
        assert_eq!(vertex_cover_count(&p4_i1, 2), 3);
        assert_eq!(vertex_cover_count(&p4_i1, 6), 0);
        assert_eq!(vertex_cover_count(&Graph::empty(3).unwrap(), 0), 1);
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets_of_size(5, 2).count(), 10);
        assert_eq!(subsets_of_size(4, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets_of_size(3, 4).count(), 0);
        assert_eq!(subsets_of_size(64, 64).collect::<Vec<_>>(), vec![u64::MAX]);
    }

    fn k7_minus(e: (usize, usize), f: (usize, usize)) -> Graph {
        let k7 = Graph::complete(7).unwrap();
        let edges: Vec<_> = k7.edges().into_iter().filter(|&x| x != e && x != f).collect();
        Graph::from_edges(7, &edges).unwrap()
    }

    #[test]
    fn configurations() {
        let g = k7_minus((0, 1), (2, 3));
        let found = find_configurations(&g, 6);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].vertices, VertexSet::full(7));
        assert_eq!(found[0].missing_edges, [(0, 1), (2, 3)]);
        assert!(!found[0].incident);

        let g = k7_minus((0, 1), (1, 2));
        assert!(find_configurations(&g, 6)[0].incident);

        assert!(find_configurations(&turan_graph(7, 6).unwrap(), 6).is_empty());

        let two = k7_minus((0, 1), (2, 3))
            .disjoint_union(&k7_minus((0, 1), (1, 2)))
            .unwrap();
        let found = find_configurations(&two, 6);
        assert_eq!(found.len(), 2);
        assert!(found[0].vertices.intersection(found[1].vertices).is_empty());
    }
}
