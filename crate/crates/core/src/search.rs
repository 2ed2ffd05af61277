//! Isomorph-free enumeration of `G(Δ, ω)` by canonical vertex augmentation,
//! and the searches built on it.
//!
//! Every node of the augmentation tree is a graph in canonical order. A child
//! adds one vertex adjacent to a set `S` of parent vertices, where `S` avoids
//! saturated vertices, has at most `Δ` members and contains no `K_ω`. The child
//! `H` is kept only if its canonical deletion vertex `m(H)` leads back to the
//! parent, i.e. `canon(H - m(H))` is the parent. `m(H)` is the vertex with the
//! largest canonical label among those maximizing `(degree, triangles)`.
//! Children of one parent are deduplicated by canonical graph, so each
//! isomorphism class appears exactly once in the whole tree.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_graph, canonical_labeling, CanonicalForm};
use crate::clique::{clique_count, has_clique};
use crate::error::{Error, Result};
use crate::graph::{bit, low_bits, Bits, Graph};
use crate::rational::Rational;
use crate::turan::{self, Provenance};

pub const DEFAULT_CAP: usize = 11;
pub const HARD_CAP: usize = 16;
pub const DEFAULT_WITNESS_LIMIT: usize = 64;

/// Breadth-first expansion stops once this many subtrees are available.
const SPLIT_FRONTIER: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Options {
    /// Worker threads; `0` lets rayon decide.
    pub threads: usize,
    /// Largest order the search may reach.
    pub cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            threads: 0,
            cap: DEFAULT_CAP,
        }
    }
}

impl Options {
    pub fn with_threads(threads: usize) -> Self {
        Options {
            threads,
            ..Options::default()
        }
    }

    pub fn check(&self, n: usize) -> Result<()> {
        let cap = self.cap.min(HARD_CAP);
        if n > cap {
            return Err(Error::CapExceeded { requested: n, cap });
        }
        Ok(())
    }
}

fn check_class(clique_bound: usize) -> Result<()> {
    if clique_bound == 0 {
        return Err(Error::InvalidParameter("clique bound must be at least 1".into()));
    }
    Ok(())
}

#[derive(Clone, Copy)]
struct Class {
    max_degree: usize,
    clique_bound: usize,
}

fn invariant(rows: &[u64], v: usize) -> (u32, u32) {
    let nbrs = rows[v];
    let tri: u32 = Bits(nbrs).map(|u| (rows[u] & nbrs).count_ones()).sum();
    (nbrs.count_ones(), tri / 2)
}

impl Class {
    /// Canonical children of a canonical parent, sorted.
    fn children(&self, parent: &Graph) -> Vec<Graph> {
        let m = parent.order();
        let rows = parent.rows();
        let open: u64 = Bits(low_bits(m))
            .filter(|&v| (rows[v].count_ones() as usize) < self.max_degree)
            .fold(0, |acc, v| acc | bit(v));
        let mut found = BTreeMap::new();
        let mut s = 0u64;
        loop {
            if s.count_ones() as usize <= self.max_degree && !has_clique(rows, s, self.clique_bound) {
                let child = parent.add_vertex_unchecked(s);
                if let Some(canon) = accept(parent, &child) {
                    found.entry(canon).or_insert(());
                }
            }
            s = s.wrapping_sub(open) & open;
            if s == 0 {
                break;
            }
        }
        found.into_keys().collect()
    }
}

/// Returns the canonical form of `child` if its canonical parent is `parent`.
fn accept(parent: &Graph, child: &Graph) -> Option<Graph> {
    let new = parent.order();
    let rows = child.rows();
    let inv: Vec<(u32, u32)> = (0..=new).map(|v| invariant(rows, v)).collect();
    let top = *inv.iter().max().expect("child has a vertex");
    if inv[new] != top {
        return None;
    }
    let canon = canonical_labeling(child);
    let deletion = (0..=new)
        .filter(|&v| inv[v] == top)
        .max_by_key(|&v| canon.labeling[v])
        .expect("new vertex is a candidate");
    if deletion == new || canonical_graph(&child.induced_unchecked(child.vertices().remove(deletion))) == *parent {
        Some(canon.graph)
    } else {
        None
    }
}

fn dfs<A, V, P>(class: Class, node: &Graph, n_max: usize, acc: &mut A, visit: &V, expand: &P)
where
    V: Fn(&mut A, &Graph),
    P: Fn(&Graph) -> bool,
{
    visit(acc, node);
    if node.order() >= n_max || !expand(node) {
        return;
    }
    for child in class.children(node) {
        dfs(class, &child, n_max, acc, visit, expand);
    }
}

/// Folds over one representative of every isomorphism class in `G(Δ, ω)` of
/// order `0..=n_max`, in parallel.
///
/// `expand` decides whether a node's children are generated. Subtree results
/// are merged in a fixed order, so the result does not depend on the thread
/// count as long as `merge` is associative.
#[allow(clippy::too_many_arguments)]
pub fn fold_class<A, I, V, M, P>(
    n_max: usize,
    max_degree: usize,
    clique_bound: usize,
    opts: &Options,
    init: I,
    visit: V,
    merge: M,
    expand: P,
) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &Graph) + Sync,
    M: Fn(A, A) -> A + Sync,
    P: Fn(&Graph) -> bool + Sync,
{
    opts.check(n_max)?;
    check_class(clique_bound)?;
    let class = Class {
        max_degree,
        clique_bound,
    };

    let mut head = init();
    let mut frontier = vec![Graph::empty(0)?];
    while frontier.len() < SPLIT_FRONTIER && frontier[0].order() < n_max {
        let mut next = Vec::new();
        for node in &frontier {
            visit(&mut head, node);
            if expand(node) {
                next.extend(class.children(node));
            }
        }
        frontier = next;
        if frontier.is_empty() {
            return Ok(head);
        }
    }

    let run = || -> Vec<A> {
        frontier
            .par_iter()
            .map(|node| {
                let mut acc = init();
                dfs(class, node, n_max, &mut acc, &visit, &expand);
                acc
            })
            .collect()
    };
    let parts = if opts.threads == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(run)
    };
    Ok(parts.into_iter().fold(head, &merge))
}

/// Calls `visitor` once per isomorphism class of `n`-vertex graphs with
/// `Δ(G) ≤ max_degree` and `ω(G) ≤ clique_bound`, in a deterministic order,
/// on the calling thread. Returns the number of graphs visited.
pub fn enumerate_class<F: FnMut(&Graph)>(
    n: usize,
    max_degree: usize,
    clique_bound: usize,
    opts: &Options,
    mut visitor: F,
) -> Result<u64> {
    opts.check(n)?;
    check_class(clique_bound)?;
    let class = Class {
        max_degree,
        clique_bound,
    };
    let mut count = 0u64;
    let mut stack = vec![Graph::empty(0)?];
    while let Some(node) = stack.pop() {
        if node.order() == n {
            visitor(&node);
            count += 1;
            continue;
        }
        let mut children = class.children(&node);
        children.reverse();
        stack.extend(children);
    }
    Ok(count)
}

/// Number of isomorphism classes per order `0..=n_max`, computed in parallel.
pub fn class_sizes(n_max: usize, max_degree: usize, clique_bound: usize, opts: &Options) -> Result<Vec<u64>> {
    fold_class(
        n_max,
        max_degree,
        clique_bound,
        opts,
        || vec![0u64; n_max + 1],
        |acc, g| acc[g.order()] += 1,
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
        |_| true,
    )
}

/// Running maximum of `k_t` at one order, with the lexicographically first
/// `limit` maximizers.
#[derive(Clone, Debug, Default)]
struct LevelAcc {
    enumerated: u64,
    best: Option<u64>,
    witness_count: u64,
    witnesses: BTreeSet<CanonicalForm>,
}

impl LevelAcc {
    fn offer(&mut self, k: u64, g: &Graph, limit: usize) {
        self.enumerated += 1;
        match self.best {
            Some(b) if k < b => return,
            Some(b) if k == b => {}
            _ => {
                self.best = Some(k);
                self.witness_count = 0;
                self.witnesses.clear();
            }
        }
        self.witness_count += 1;
        self.witnesses.insert(CanonicalForm::of_canonical(g));
        if self.witnesses.len() > limit {
            self.witnesses.pop_last();
        }
    }

    fn merge(mut self, other: LevelAcc, limit: usize) -> LevelAcc {
        self.enumerated += other.enumerated;
        match (self.best, other.best) {
            (_, None) => {}
            (None, Some(_)) => {
                self.best = other.best;
                self.witness_count = other.witness_count;
                self.witnesses = other.witnesses;
            }
            (Some(a), Some(b)) if b > a => {
                self.best = other.best;
                self.witness_count = other.witness_count;
                self.witnesses = other.witnesses;
            }
            (Some(a), Some(b)) if a == b => {
                self.witness_count += other.witness_count;
                self.witnesses.extend(other.witnesses);
                while self.witnesses.len() > limit {
                    self.witnesses.pop_last();
                }
            }
            _ => {}
        }
        self
    }
}

/// What to search: orders `n_min..=n_max` of `G(Δ, ω)`, maximizing `k_t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchSpec {
    pub n_min: usize,
    pub n_max: usize,
    pub max_degree: usize,
    pub clique_bound: usize,
    pub t: usize,
    pub threads: usize,
    pub cap: usize,
    /// Skip subtrees that provably cannot reach this density.
    pub prune_target: Option<Rational>,
    pub witness_limit: usize,
}

impl SearchSpec {
    pub fn new(n: usize, max_degree: usize, clique_bound: usize, t: usize) -> Self {
        SearchSpec::range(n, n, max_degree, clique_bound, t)
    }

    pub fn range(n_min: usize, n_max: usize, max_degree: usize, clique_bound: usize, t: usize) -> Self {
        SearchSpec {
            n_min,
            n_max,
            max_degree,
            clique_bound,
            t,
            threads: 0,
            cap: DEFAULT_CAP,
            prune_target: None,
            witness_limit: DEFAULT_WITNESS_LIMIT,
        }
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn prune_target(mut self, target: Option<Rational>) -> Self {
        self.prune_target = target;
        self
    }

    pub fn witness_limit(mut self, limit: usize) -> Self {
        self.witness_limit = limit.max(1);
        self
    }

    fn options(&self) -> Options {
        Options {
            threads: self.threads,
            cap: self.cap,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.t < 2 {
            return Err(Error::InvalidParameter(format!("t must be at least 2, got {}", self.t)));
        }
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(Error::InvalidParameter(format!(
                "order range {}..={} is empty or starts at 0",
                self.n_min, self.n_max
            )));
        }
        if self.cap > HARD_CAP {
            return Err(Error::CapExceeded {
                requested: self.cap,
                cap: HARD_CAP,
            });
        }
        check_class(self.clique_bound)?;
        self.options().check(self.n_max)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelResult {
    pub n: usize,
    pub graphs_enumerated: u64,
    /// `None` only when pruning removed every graph of this order.
    pub max_count: Option<u64>,
    pub max_density: Option<Rational>,
    pub witness_count: u64,
    /// Canonical graph6, sorted, at most `witness_limit` of them.
    pub witnesses: Vec<CanonicalForm>,
    pub meets_lower_bound: Option<bool>,
    pub meets_exact: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub spec: SearchSpec,
    pub levels: Vec<LevelResult>,
    /// Largest density over all searched orders, and the smallest order attaining it.
    pub best_density: Option<Rational>,
    pub best_n: Option<usize>,
    pub lower_bound: Option<Rational>,
    pub exact: Option<Rational>,
    pub exact_provenance: Provenance,
    /// True when `prune_target` skipped subtrees, so maxima below the target are not exhaustive.
    pub pruned: bool,
    pub wall_time_ms: u128,
}

/// Per-vertex ceiling on new `t`-cliques: `k_{t-1}(T(Δ, ω-1))`.
fn vertex_ceiling(t: usize, max_degree: usize, clique_bound: usize) -> u64 {
    if clique_bound < 2 {
        return 0;
    }
    let c = turan::turan_clique_count(max_degree, clique_bound - 1, t - 1);
    u64::try_from(c).unwrap_or(u64::MAX)
}

fn level_accs(spec: &SearchSpec) -> Result<(Vec<LevelAcc>, bool)> {
    spec.validate()?;
    let (t, n_min, n_max, limit) = (spec.t, spec.n_min, spec.n_max, spec.witness_limit);
    let ceiling = vertex_ceiling(t, spec.max_degree, spec.clique_bound);
    let pruned = std::sync::atomic::AtomicBool::new(false);
    let expand = |g: &Graph| {
        let Some(target) = &spec.prune_target else {
            return true;
        };
        let m = g.order();
        let k = clique_count(g, t);
        // A descendant of order x has at most k + (x - m)·ceiling cliques; the
        // ratio is monotone in x, so checking both ends suffices.
        let reachable = [m + 1, n_max].into_iter().any(|x| {
            let bound = k as u128 + (x - m) as u128 * ceiling as u128;
            Rational::new(bound, x as u64) >= *target
        });
        if !reachable {
            pruned.store(true, std::sync::atomic::Ordering::Relaxed);
        }
        reachable
    };
    let accs = fold_class(
        n_max,
        spec.max_degree,
        spec.clique_bound,
        &spec.options(),
        || vec![LevelAcc::default(); n_max + 1],
        |acc, g| {
            let n = g.order();
            if n >= n_min {
                acc[n].offer(clique_count(g, t), g, limit);
            }
        },
        |a, b| a.into_iter().zip(b).map(|(x, y)| x.merge(y, limit)).collect(),
        expand,
    )?;
    Ok((accs, pruned.into_inner()))
}

/// Exhaustive (or target-pruned) search for the largest `ρ_t` at each order.
pub fn best_up_to(spec: &SearchSpec) -> Result<SearchReport> {
    let start = Instant::now();
    let (accs, pruned) = level_accs(spec)?;
    let (t, d, w) = (spec.t, spec.max_degree, spec.clique_bound);
    let lower = if d >= 1 && w >= 2 {
        Some(turan::lower_bound(t, d, w)?)
    } else {
        None
    };
    let exact = turan::exact_value(t, d, w);

    let mut levels = Vec::new();
    let mut best: Option<(Rational, usize)> = None;
    for (n, acc) in accs.into_iter().enumerate().skip(spec.n_min) {
        let density = acc.best.map(|k| Rational::new(k, n as u64));
        if let Some(rho) = &density {
            if best.as_ref().is_none_or(|(b, _)| rho > b) {
                best = Some((rho.clone(), n));
            }
        }
        levels.push(LevelResult {
            n,
            graphs_enumerated: acc.enumerated,
            max_count: acc.best,
            meets_lower_bound: match (&density, &lower) {
                (Some(rho), Some(l)) => Some(rho >= l),
                _ => None,
            },
            meets_exact: match (&density, &exact) {
                (Some(rho), Some(e)) => Some(*rho == e.value),
                _ => None,
            },
            max_density: density,
            witness_count: acc.witness_count,
            witnesses: acc.witnesses.into_iter().collect(),
        });
    }
    Ok(SearchReport {
        spec: spec.clone(),
        levels,
        best_n: best.as_ref().map(|(_, n)| *n),
        best_density: best.map(|(rho, _)| rho),
        lower_bound: lower,
        exact_provenance: exact.as_ref().map_or(Provenance::None, |e| e.provenance),
        exact: exact.map(|e| e.value),
        pruned,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxDensity {
    pub density: Rational,
    pub max_count: u64,
    pub witness_count: u64,
    pub witnesses: Vec<CanonicalForm>,
}

/// Exact maximum of `ρ_t` over `n`-vertex graphs in `G(Δ, ω)`, with the
/// lexicographically first `witness_limit` maximizers.
pub fn max_density(spec: &SearchSpec) -> Result<MaxDensity> {
    if spec.n_min != spec.n_max || spec.prune_target.is_some() {
        return Err(Error::InvalidParameter(
            "max_density needs a single order and no pruning".into(),
        ));
    }
    let (mut accs, _) = level_accs(spec)?;
    let n = spec.n_max;
    let acc = std::mem::take(&mut accs[n]);
    let k = acc.best.expect("the empty graph is always in the class");
    Ok(MaxDensity {
        density: Rational::new(k, n as u64),
        max_count: k,
        witness_count: acc.witness_count,
        witnesses: acc.witnesses.into_iter().collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "probe", rename_all = "kebab-case")]
pub enum Probe {
    /// `G(7, 3)`, `t = 3`, against `ρ_3(BT(3)) = 40/11`.
    Bt3,
    Attainment {
        t: usize,
        max_degree: usize,
        clique_bound: usize,
    },
}

impl Probe {
    pub fn name(&self) -> String {
        match self {
            Probe::Bt3 => "bt3".into(),
            Probe::Attainment {
                t,
                max_degree,
                clique_bound,
            } => format!("attainment({t},{max_degree},{clique_bound})"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub probe: Probe,
    pub n_cap: usize,
    /// Density the probe compares against, when it has one.
    pub target: Option<Rational>,
    /// Some order has a graph with density strictly above `target`.
    pub exceeded: Option<bool>,
    /// For `bt3` at `n_cap ≥ 11`: the maximum at order 11 equals `40/11`.
    pub attained_at_11: Option<bool>,
    /// For `bt3` at `n_cap ≥ 11`: `BT(3)` is the only maximizer at order 11.
    pub bt3_unique_at_11: Option<bool>,
    pub search: SearchReport,
}

/// Runs a conjecture probe exhaustively up to `n_cap` and reports the outcome
/// without asserting it.
pub fn probe_conjecture(probe: Probe, n_cap: usize, opts: &Options) -> Result<ProbeReport> {
    let (t, d, w) = match probe {
        Probe::Bt3 => (3, 7, 3),
        Probe::Attainment {
            t,
            max_degree,
            clique_bound,
        } => (t, max_degree, clique_bound),
    };
    let spec = SearchSpec::range(1, n_cap, d, w, t)
        .threads(opts.threads)
        .cap(opts.cap);
    let search = best_up_to(&spec)?;
    let target = match probe {
        Probe::Bt3 => Some(turan::bt_density(3)),
        Probe::Attainment { .. } => search.exact.clone(),
    };
    let exceeded = target.as_ref().map(|target| {
        search
            .levels
            .iter()
            .any(|l| l.max_density.as_ref().is_some_and(|rho| rho > target))
    });
    let (mut attained_at_11, mut bt3_unique_at_11) = (None, None);
    if probe == Probe::Bt3 {
        if let Some(level) = search.levels.iter().find(|l| l.n == 11) {
            let bt3 = CanonicalForm::of_canonical(&canonical_graph(&turan::bt_graph(3)?));
            attained_at_11 = Some(level.max_density == target);
            bt3_unique_at_11 = Some(attained_at_11 == Some(true) && level.witnesses == [bt3]);
        }
    }
    Ok(ProbeReport {
        probe,
        n_cap,
        target,
        exceeded,
        attained_at_11,
        bt3_unique_at_11,
        search,
    })
}
