//! Canonical labeling by partition refinement and individualization.
//!
//! The search tree follows the usual McKay scheme: refine the vertex coloring
//! to an equitable one, individualize each vertex of a target cell in turn and
//! recurse until the coloring is discrete. Each leaf yields a relabeled
//! adjacency matrix and the lexicographically largest one is the canonical
//! graph. Leaves that reproduce the first or best certificate give
//! automorphisms, which prune sibling branches (orbit pruning) and abort
//! subtrees already known to be images of explored ones.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::graph::{bit, Bits, Graph, Rows, MAX_VERTICES};

type Colors = [u8; MAX_VERTICES];
type Path = SmallVec<[u8; 16]>;

/// Canonical graph6 string: equal iff the graphs are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Wraps the encoding of a graph already in canonical order.
    pub(crate) fn of_canonical(g: &Graph) -> Self {
        CanonicalForm(crate::graph6::encode(g))
    }
}

impl serde::Serialize for CanonicalForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({:?})", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct Canonical {
    /// The input relabeled into canonical order.
    pub graph: Graph,
    /// `labeling[v]` is the canonical position of input vertex `v`.
    pub labeling: Vec<usize>,
    /// Automorphisms of the input discovered during the search (not necessarily a full generating set).
    pub automorphisms: Vec<Vec<usize>>,
}

impl Canonical {
    pub fn form(&self) -> CanonicalForm {
        CanonicalForm::of_canonical(&self.graph)
    }
}

pub fn canonical_labeling(g: &Graph) -> Canonical {
    let n = g.order();
    if n <= 1 {
        return Canonical {
            graph: g.clone(),
            labeling: (0..n).collect(),
            automorphisms: Vec::new(),
        };
    }
    let mut colors = [0u8; MAX_VERTICES];
    refine(g, &mut colors);
    let mut search = Search {
        g,
        n,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let mut path = Path::new();
    search.descend(colors, &mut path);

    let best = search.best.expect("search visits at least one leaf");
    Canonical {
        graph: Graph::from_rows_unchecked(best.cert),
        labeling: best.labels[..n].iter().map(|&c| c as usize).collect(),
        automorphisms: search
            .generators
            .iter()
            .map(|p| p[..n].iter().map(|&c| c as usize).collect())
            .collect(),
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form()
}

pub fn canonical_graph(g: &Graph) -> Graph {
    canonical_labeling(g).graph
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order()
        && g.edge_count() == h.edge_count()
        && canonical_graph(g) == canonical_graph(h)
}

struct Leaf {
    cert: Rows,
    labels: Colors,
    path: Path,
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Colors>,
}

impl Search<'_> {
    /// Explores the node reached by `path` (colors already refined). Returns
    /// `Some(depth)` when the caller chain should unwind to that depth.
    fn descend(&mut self, colors: Colors, path: &mut Path) -> Option<usize> {
        let n = self.n;
        let Some((cell, members)) = target_cell(&colors[..n]) else {
            return self.leaf(&colors, path);
        };
        let depth = path.len();
        for v in Bits(members) {
            if !self.generators.is_empty() && !self.is_orbit_min(v, members, path) {
                continue;
            }
            let mut child = individualize(&colors, n, v, cell);
            refine(self.g, &mut child);
            path.push(v as u8);
            let jump = self.descend(child, path);
            path.pop();
            if let Some(target) = jump {
                if target < depth {
                    return Some(target);
                }
            }
        }
        None
    }

    fn leaf(&mut self, labels: &Colors, path: &Path) -> Option<usize> {
        let cert = relabel_rows(self.g, labels);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                cert: cert.clone(),
                labels: *labels,
                path: path.clone(),
            };
            self.first = Some(Leaf {
                cert,
                labels: *labels,
                path: path.clone(),
            });
            self.best = Some(leaf);
            return None;
        };
        if cert == first.cert {
            let gamma = automorphism(&first.labels, labels, self.n);
            let back = common_prefix(&first.path, path);
            self.generators.push(gamma);
            return Some(back);
        }
        let best = self.best.as_ref().expect("best set with first");
        match cert.cmp(&best.cert) {
            Ordering::Equal => {
                let gamma = automorphism(&best.labels, labels, self.n);
                let back = common_prefix(&best.path, path);
                self.generators.push(gamma);
                Some(back)
            }
            Ordering::Greater => {
                self.best = Some(Leaf {
                    cert,
                    labels: *labels,
                    path: path.clone(),
                });
                None
            }
            Ordering::Less => None,
        }
    }

    /// True if `v` is the smallest member of its orbit within `cell` under the
    /// known automorphisms that fix every vertex on `path`.
    fn is_orbit_min(&self, v: usize, cell: u64, path: &Path) -> bool {
        let mut parent: [u8; MAX_VERTICES] = [0; MAX_VERTICES];
        for (i, p) in parent.iter_mut().enumerate().take(self.n) {
            *p = i as u8;
        }
        let mut any = false;
        for gamma in &self.generators {
            if path.iter().any(|&p| gamma[p as usize] != p) {
                continue;
            }
            any = true;
            for u in 0..self.n {
                union(&mut parent, u, gamma[u] as usize);
            }
        }
        if !any {
            return true;
        }
        let root = find(&mut parent, v);
        // roots are orbit minima because unions keep the smaller index
        root == v || cell & bit(root) == 0
    }
}

fn find(parent: &mut [u8; MAX_VERTICES], mut x: usize) -> usize {
    while parent[x] as usize != x {
        let up = parent[parent[x] as usize];
        parent[x] = up;
        x = up as usize;
    }
    x
}

fn union(parent: &mut [u8; MAX_VERTICES], a: usize, b: usize) {
    let ra = find(parent, a);
    let rb = find(parent, b);
    match ra.cmp(&rb) {
        Ordering::Less => parent[rb] = ra as u8,
        Ordering::Greater => parent[ra] = rb as u8,
        Ordering::Equal => {}
    }
}

fn common_prefix(a: &Path, b: &Path) -> usize {
    a.iter().zip(b.iter()).take_while(|(x, y)| x == y).count()
}

/// Maps `v` to the vertex that the reference labeling places where `labels` places `v`.
fn automorphism(reference: &Colors, labels: &Colors, n: usize) -> Colors {
    let mut inverse = [0u8; MAX_VERTICES];
    for v in 0..n {
        inverse[reference[v] as usize] = v as u8;
    }
    let mut gamma = [0u8; MAX_VERTICES];
    for v in 0..n {
        gamma[v] = inverse[labels[v] as usize];
    }
    gamma
}

fn relabel_rows(g: &Graph, labels: &Colors) -> Rows {
    let n = g.order();
    let rows = g.rows();
    let mut out: Rows = SmallVec::from_elem(0, n);
    for v in 0..n {
        out[labels[v] as usize] = Bits(rows[v]).fold(0, |acc, u| acc | bit(labels[u] as usize));
    }
    out
}

/// The first non-singleton cell of minimum size, as (color, member mask).
fn target_cell(colors: &[u8]) -> Option<(u8, u64)> {
    let n = colors.len();
    let mut sizes = [0u8; MAX_VERTICES];
    let mut masks = [0u64; MAX_VERTICES];
    for (v, &c) in colors.iter().enumerate() {
        sizes[c as usize] += 1;
        masks[c as usize] |= bit(v);
    }
    let mut choice: Option<(u8, u8)> = None;
    for c in 0..n {
        let s = sizes[c];
        if s > 1 && choice.is_none_or(|(_, best)| s < best) {
            choice = Some((c as u8, s));
        }
    }
    choice.map(|(c, _)| (c, masks[c as usize]))
}

fn individualize(colors: &Colors, n: usize, v: usize, cell: u8) -> Colors {
    let mut out = *colors;
    for u in 0..n {
        let c = colors[u];
        if c > cell || (c == cell && u != v) {
            out[u] = c + 1;
        }
    }
    out
}

/// Refines `colors` (ranks `0..k`) to the coarsest equitable refinement.
/// Cells are ordered by (old color, neighbor counts per cell), which depends
/// only on the isomorphism type of the colored graph.
fn refine(g: &Graph, colors: &mut Colors) {
    let n = g.order();
    let rows = g.rows();
    let mut cells = colors[..n].iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut keys: SmallVec<[(SmallVec<[u8; 24]>, u8); 16]> = SmallVec::with_capacity(n);
    loop {
        let mut masks = [0u64; MAX_VERTICES];
        for v in 0..n {
            masks[colors[v] as usize] |= bit(v);
        }
        keys.clear();
        for v in 0..n {
            let mut key: SmallVec<[u8; 24]> = SmallVec::with_capacity(cells + 1);
            key.push(colors[v]);
            key.extend(masks[..cells].iter().map(|m| (rows[v] & m).count_ones() as u8));
            keys.push((key, v as u8));
        }
        keys.sort_unstable();
        let mut rank = 0u8;
        for i in 0..n {
            if i > 0 && keys[i].0 != keys[i - 1].0 {
                rank += 1;
            }
            colors[keys[i].1 as usize] = rank;
        }
        let new_cells = rank as usize + 1;
        if new_cells == cells {
            break;
        }
        cells = new_cells;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(g: &Graph, perm: &[usize]) -> Graph {
        g.relabel(perm).unwrap()
    }

    #[test]
    fn relabeled_four_cycles_agree() {
        let a = Graph::cycle(4).unwrap();
        let b = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert!(is_isomorphic(&a, &b));
    }

    #[test]
    fn triangle_and_path_differ() {
        let k3 = Graph::complete(3).unwrap();
        let p3 = Graph::path(3).unwrap();
        assert_ne!(canonical_form(&k3), canonical_form(&p3));
    }

    #[test]
    fn automorphisms_are_automorphisms() {
        let g = Graph::cycle(5)
            .unwrap()
            .join(&Graph::empty(3).unwrap())
            .unwrap();
        let c = canonical_labeling(&g);
        assert!(!c.automorphisms.is_empty());
        for gamma in &c.automorphisms {
            assert_eq!(apply(&g, gamma), g);
        }
        assert_eq!(apply(&g, &c.labeling), c.graph);
    }

    #[test]
    fn symmetric_graphs_terminate() {
        for n in [16, 32, 64] {
            let e = Graph::empty(n).unwrap();
            assert_eq!(canonical_graph(&e), e);
            let k = Graph::complete(n).unwrap();
            assert_eq!(canonical_graph(&k), k);
        }
        let half = Graph::empty(32).unwrap();
        let kk = half.join(&half).unwrap();
        let c = canonical_labeling(&kk);
        assert_eq!(c.graph.edge_count(), 32 * 32);
    }

    #[test]
    fn petersen_vs_relabeling() {
        let outer: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let inner: Vec<_> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let spokes: Vec<_> = (0..5).map(|i| (i, i + 5)).collect();
        let edges: Vec<_> = outer.into_iter().chain(inner).chain(spokes).collect();
        let p = Graph::from_edges(10, &edges).unwrap();
        let perm = [3, 7, 1, 9, 0, 5, 2, 8, 6, 4];
        assert_eq!(canonical_form(&p), canonical_form(&apply(&p, &perm)));
    }
}
