//! Small simple graphs stored as one neighbor bitset per vertex (at most 64 vertices).
//!
//! Graphs are values: every combinator returns a fresh graph and never mutates
//! its inputs. When two graphs are combined the first operand keeps its labels
//! and the second is shifted up by the first operand's vertex count.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

pub(crate) type Rows = SmallVec<[u64; 16]>;

#[inline(always)]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the lowest `n` bits set.
#[inline(always)]
pub(crate) const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of vertex indices `0..64`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        VertexSet(low_bits(n))
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(bit(v))
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        VertexSet(vertices.into_iter().fold(0, |acc, v| acc | bit(v)))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & bit(v) != 0
    }

    #[inline]
    pub fn insert(self, v: usize) -> Self {
        VertexSet(self.0 | bit(v))
    }

    #[inline]
    pub fn remove(self, v: usize) -> Self {
        VertexSet(self.0 & !bit(v))
    }

    #[inline]
    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Vertices in increasing order.
    pub fn iter(self) -> Bits {
        Bits(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Bits;
    fn into_iter(self) -> Bits {
        self.iter()
    }
}

/// Iterator over set bit positions, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Bits {}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Rows,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_capacity(n)?;
        Ok(Graph {
            n,
            adj: SmallVec::from_elem(0, n),
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        check_capacity(n)?;
        let all = low_bits(n);
        Ok(Graph {
            n,
            adj: (0..n).map(|v| all & !bit(v)).collect(),
        })
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Graph on `n` vertices with exactly the given edges; duplicates collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        check_capacity(n)?;
        let mut adj: Rows = SmallVec::from_elem(0, n);
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u] |= bit(v);
            adj[v] |= bit(u);
        }
        Ok(Graph { n, adj })
    }

    /// Builds a graph directly from neighbor bitsets.
    pub fn from_adjacency(rows: &[u64]) -> Result<Self> {
        let n = rows.len();
        check_capacity(n)?;
        let mask = low_bits(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & bit(v) != 0 {
                return Err(Error::SelfLoop(v));
            }
            if row & !mask != 0 {
                let w = (row & !mask).trailing_zeros() as usize;
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
            for u in Bits(row) {
                if rows[u] & bit(v) == 0 {
                    return Err(Error::InvalidParameter(format!(
                        "adjacency is not symmetric at {v}-{u}"
                    )));
                }
            }
        }
        Ok(Graph {
            n,
            adj: rows.iter().copied().collect(),
        })
    }

    /// Trusted constructor for rows already known to be symmetric and irreflexive.
    #[inline]
    pub(crate) fn from_rows_unchecked(rows: Rows) -> Self {
        debug_assert!(rows.len() <= MAX_VERTICES);
        Graph { n: rows.len(), adj: rows }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in Bits(self.adj[u] & !low_bits(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    /// Maximum degree; 0 for edgeless graphs and the null graph.
    pub fn max_degree(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn neighborhood(&self, v: usize, closed: bool) -> Result<VertexSet> {
        self.check_vertex(v)?;
        let open = VertexSet(self.adj[v]);
        Ok(if closed { open.insert(v) } else { open })
    }

    pub fn complement(&self) -> Graph {
        let all = low_bits(self.n);
        Graph {
            n: self.n,
            adj: self
                .adj
                .iter()
                .enumerate()
                .map(|(v, &r)| !r & all & !bit(v))
                .collect(),
        }
    }

    /// Subgraph induced by `set`, relabeled to `0..|set|` preserving order.
    pub fn induced(&self, set: VertexSet) -> Result<Graph> {
        if !set.is_subset(self.vertices()) {
            return Err(Error::NotASubset);
        }
        Ok(self.induced_unchecked(set))
    }

    pub(crate) fn induced_unchecked(&self, set: VertexSet) -> Graph {
        let keep: SmallVec<[usize; 64]> = set.iter().collect();
        let rows = keep
            .iter()
            .map(|&v| {
                let row = self.adj[v] & set.0;
                keep.iter()
                    .enumerate()
                    .filter(|(_, &u)| row & bit(u) != 0)
                    .fold(0u64, |acc, (i, _)| acc | bit(i))
            })
            .collect();
        Graph::from_rows_unchecked(rows)
    }

    /// Graph with vertex `v` deleted; later vertices shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        Ok(self.induced_unchecked(self.vertices().remove(v)))
    }

    /// Adds a new vertex `n` adjacent to `nbrs`.
    pub fn add_vertex(&self, nbrs: VertexSet) -> Result<Graph> {
        check_capacity(self.n + 1)?;
        if !nbrs.is_subset(self.vertices()) {
            return Err(Error::NotASubset);
        }
        Ok(self.add_vertex_unchecked(nbrs.0))
    }

    #[inline]
    pub(crate) fn add_vertex_unchecked(&self, nbrs: u64) -> Graph {
        let new = self.n;
        let mut adj = self.adj.clone();
        for u in Bits(nbrs) {
            adj[u] |= bit(new);
        }
        adj.push(nbrs);
        Graph { n: new + 1, adj }
    }

    /// Applies `perm`, where vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "permutation has length {}, graph has {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen & bit(p) != 0 {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            seen |= bit(p);
        }
        let mut rows: Rows = SmallVec::from_elem(0, self.n);
        for v in 0..self.n {
            rows[perm[v]] = Bits(self.adj[v]).fold(0, |acc, u| acc | bit(perm[u]));
        }
        Ok(Graph::from_rows_unchecked(rows))
    }

    /// Join: all edges between the two operands are added.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        self.combine(other, true)
    }

    /// Disjoint union.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        self.combine(other, false)
    }

    fn combine(&self, other: &Graph, cross: bool) -> Result<Graph> {
        let n = self.n + other.n;
        check_capacity(n)?;
        let shift = self.n;
        let left_mask = low_bits(shift);
        let right_mask = low_bits(n) & !left_mask;
        let mut rows: Rows = SmallVec::with_capacity(n);
        for &r in &self.adj {
            rows.push(if cross { r | right_mask } else { r });
        }
        for &r in &other.adj {
            let shifted = if shift >= 64 { 0 } else { r << shift };
            rows.push(if cross { shifted | left_mask } else { shifted });
        }
        Ok(Graph::from_rows_unchecked(rows))
    }

    /// Checks symmetry, irreflexivity and that no bit above `n - 1` is set.
    pub fn is_well_formed(&self) -> bool {
        let mask = low_bits(self.n);
        self.adj.len() == self.n
            && self.adj.iter().enumerate().all(|(v, &r)| {
                r & bit(v) == 0 && r & !mask == 0 && Bits(r).all(|u| self.adj[u] & bit(v) != 0)
            })
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::graph6::encode(self))
    }
}

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::CapacityExceeded { requested: n })
    } else {
        Ok(())
    }
}
