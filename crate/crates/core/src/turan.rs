//! Turán graphs and the density bounds built from them, the special
//! constructions `BT(k)` and `G*`, and the registry of proven exact values.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_VERTICES};
use crate::rational::Rational;

/// `n = q·r + c` with `0 ≤ c < r`: `c` parts of size `q + 1`, `r - c` of size `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TuranShape {
    pub n: usize,
    pub r: usize,
    pub q: usize,
    pub c: usize,
}

impl TuranShape {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("a Turán graph needs at least one part".into()));
        }
        Ok(TuranShape {
            n,
            r,
            q: n / r,
            c: n % r,
        })
    }

    /// Part sizes, larger parts first.
    pub fn part_sizes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.r).map(|i| if i < self.c { self.q + 1 } else { self.q })
    }
}

/// Complete `r`-partite graph on `n` vertices with parts as equal as possible.
/// Vertices are numbered part by part, larger parts first.
pub fn turan_graph(n: usize, r: usize) -> Result<Graph> {
    let shape = TuranShape::new(n, r)?;
    if n > MAX_VERTICES {
        return Err(Error::CapacityExceeded { requested: n });
    }
    let mut part = Vec::with_capacity(n);
    for (i, size) in shape.part_sizes().enumerate() {
        part.extend(std::iter::repeat_n(i, size));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if part[u] != part[v] {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Closed-form `k_t(T(n, r))`: `Σ_{k=0..c} C(c,k) C(r-c, t-k) (q+1)^k q^(t-k)`.
///
/// Panics if `r == 0`.
pub fn turan_clique_count(n: usize, r: usize, t: usize) -> BigUint {
    let shape = TuranShape::new(n, r).expect("Turán graph needs r >= 1");
    let (q, c) = (BigUint::from(shape.q), shape.c);
    let big = &q + BigUint::one();
    let mut total = BigUint::zero();
    for k in 0..=c.min(t) {
        let small_parts = binomial(r - c, t - k);
        if small_parts.is_zero() {
            continue;
        }
        total += binomial(c, k) * small_parts * big.pow(k as u32) * q.pow((t - k) as u32);
    }
    total
}

/// `Δ = a(ω-1) + b` with `0 ≤ b < ω-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub max_degree: usize,
    pub clique_bound: usize,
    pub a: usize,
    pub b: usize,
}

pub fn decompose(max_degree: usize, clique_bound: usize) -> Result<Decomposition> {
    if clique_bound < 2 {
        return Err(Error::InvalidParameter(format!(
            "clique bound must be at least 2, got {clique_bound}"
        )));
    }
    let m = clique_bound - 1;
    Ok(Decomposition {
        max_degree,
        clique_bound,
        a: max_degree / m,
        b: max_degree % m,
    })
}

/// `L(Δ, ω) = T(Δ + a, ω)`.
pub fn lower_bound_graph(max_degree: usize, clique_bound: usize) -> Result<Graph> {
    let d = decompose(max_degree, clique_bound)?;
    let g = turan_graph(max_degree + d.a, clique_bound)?;
    debug_assert!(d.a == 0 || g.max_degree() == max_degree);
    Ok(g)
}

fn check_bound_args(t: usize, max_degree: usize) -> Result<()> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("t must be at least 2, got {t}")));
    }
    if max_degree < 1 {
        return Err(Error::InvalidParameter("Δ must be at least 1".into()));
    }
    Ok(())
}

/// `ρ_t(L(Δ, ω))`, evaluated from the closed form.
pub fn lower_bound(t: usize, max_degree: usize, clique_bound: usize) -> Result<Rational> {
    check_bound_args(t, max_degree)?;
    let d = decompose(max_degree, clique_bound)?;
    let n = max_degree + d.a;
    let count = turan_clique_count(n, clique_bound, t);
    Ok(Rational::from_ratio(&count, &BigUint::from(n)))
}

/// `k_{t-1}(T(Δ, ω-1)) / t`, the per-vertex ceiling averaged over a `t`-clique.
pub fn upper_bound(t: usize, max_degree: usize, clique_bound: usize) -> Result<Rational> {
    check_bound_args(t, max_degree)?;
    decompose(max_degree, clique_bound)?;
    let count = turan_clique_count(max_degree, clique_bound - 1, t - 1);
    Ok(Rational::from_ratio(&count, &BigUint::from(t)))
}

/// Leading term `(1/t)·C(ω-1, t-1)·(Δ/(ω-1))^(t-1)` shared by both bounds as `Δ → ∞`.
pub fn asymptotic_leading(t: usize, max_degree: usize, clique_bound: usize) -> Result<Rational> {
    check_bound_args(t, max_degree)?;
    decompose(max_degree, clique_bound)?;
    let m = clique_bound - 1;
    let ratio = Rational::new(max_degree as u64, m as u64);
    let coeff = Rational::from_ratio(&binomial(m, t - 1), &BigUint::from(t));
    Ok(&coeff * &ratio.pow((t - 1) as u32))
}

/// `BT(k)`: take `K_{k,k}`, delete one edge, join a new vertex to both of its
/// ends, then join the result with an independent set of size `k + 1`.
///
/// Vertices `0..k` and `k..2k` are the two sides, `2k` is the new vertex and
/// the last `k + 1` vertices form the independent set.
pub fn bt_graph(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("BT(k) needs k >= 2, got {k}")));
    }
    if 3 * k + 2 > MAX_VERTICES {
        return Err(Error::CapacityExceeded { requested: 3 * k + 2 });
    }
    let mut edges = Vec::new();
    for u in 0..k {
        for v in k..2 * k {
            if (u, v) != (0, k) {
                edges.push((u, v));
            }
        }
    }
    edges.push((0, 2 * k));
    edges.push((k, 2 * k));
    let core = Graph::from_edges(2 * k + 1, &edges)?;
    core.join(&Graph::empty(k + 1)?)
}

/// `ρ_3(BT(k)) = (k+1)(k²+1)/(3k+2)`.
pub fn bt_density(k: usize) -> Rational {
    let k = k as u64;
    Rational::new((k + 1) * (k * k + 1), 3 * k + 2)
}

/// `K_6` minus the matching `{01, 23}`, plus vertex 6 joined to `0, 1, 2, 3`.
pub fn g_star() -> Graph {
    let k6 = Graph::complete(6).expect("6 vertices");
    let mut edges: Vec<_> = k6
        .edges()
        .into_iter()
        .filter(|&e| e != (0, 1) && e != (2, 3))
        .collect();
    edges.extend((0..4).map(|v| (v, 6)));
    Graph::from_edges(7, &edges).expect("7 vertices")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// `ω - 1` divides `Δ`; lower and upper bounds coincide.
    Divisibility,
    /// `Δ = ω = r`, `3 ≤ t ≤ r`; extremal graph `T(r+1, r)`.
    DeltaEqOmega,
    /// `Δ = r + 1`, `ω = r`, `t ∈ {r-1, r}`; extremal graph `T(r+2, r)`.
    DeltaEqOmegaPlusOne,
    /// One of the individually settled triples (3,5,3), (3,5,4), (3,6,5).
    SpecialTriple,
    None,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Divisibility => "divisibility",
            Provenance::DeltaEqOmega => "delta-eq-omega",
            Provenance::DeltaEqOmegaPlusOne => "delta-eq-omega-plus-one",
            Provenance::SpecialTriple => "special-triple",
            Provenance::None => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactValue {
    pub value: Rational,
    /// Absent only when the extremal graph exceeds the vertex capacity.
    pub witness: Option<Graph>,
    pub provenance: Provenance,
}

/// The proven value of the supremum density for `(t, Δ, ω)`, when a proven
/// result covers exactly that triple; nothing is extrapolated.
pub fn exact_value(t: usize, max_degree: usize, clique_bound: usize) -> Option<ExactValue> {
    if t < 2 || max_degree < 1 || clique_bound < 2 {
        return None;
    }
    let special = |value: Rational, witness: Graph| ExactValue {
        value,
        witness: Some(witness),
        provenance: Provenance::SpecialTriple,
    };
    match (t, max_degree, clique_bound) {
        (3, 5, 3) => return Some(special(Rational::new(15, 8), bt_graph(2).ok()?)),
        (3, 5, 4) => return Some(special(Rational::new(16, 7), g_star())),
        (3, 6, 5) => return Some(special(Rational::integer(4), turan_graph(8, 4).ok()?)),
        _ => {}
    }

    let from_turan = |n: usize, r: usize, provenance: Provenance| ExactValue {
        value: Rational::from_ratio(&turan_clique_count(n, r, t), &BigUint::from(n)),
        witness: turan_graph(n, r).ok(),
        provenance,
    };

    let omega = clique_bound;
    if max_degree.is_multiple_of(omega - 1) && t <= omega {
        let a = max_degree / (omega - 1);
        return Some(from_turan(max_degree + a, omega, Provenance::Divisibility));
    }
    if max_degree == omega && (3..=omega).contains(&t) {
        return Some(from_turan(omega + 1, omega, Provenance::DeltaEqOmega));
    }
    if max_degree == omega + 1 && ((t == omega && omega >= 4) || (t + 1 == omega && omega >= 5)) {
        return Some(from_turan(omega + 2, omega, Provenance::DeltaEqOmegaPlusOne));
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub t: usize,
    pub max_degree: usize,
    /// Clique bound actually used, after clamping to `Δ + 1`.
    pub clique_bound: usize,
    /// The requested clique bound when it was clamped.
    pub requested_clique_bound: Option<usize>,
    pub decomposition: Decomposition,
    pub lower: Rational,
    pub upper: Rational,
    pub exact: Option<Rational>,
    /// Canonical graph6 of a graph attaining `exact`.
    pub witness: Option<String>,
    pub provenance: Provenance,
    /// Best density known from the constructions here (equals `exact` when proven).
    pub best_known: Rational,
    pub best_known_witness: Option<String>,
    pub notes: Vec<String>,
}

pub fn bounds_report(t: usize, max_degree: usize, clique_bound: usize) -> Result<BoundReport> {
    check_bound_args(t, max_degree)?;
    decompose(max_degree, clique_bound)?;
    let mut notes = Vec::new();
    let (omega, requested) = if clique_bound > max_degree + 1 {
        notes.push(format!(
            "clique bound {clique_bound} exceeds Δ + 1 and was clamped to {}",
            max_degree + 1
        ));
        (max_degree + 1, Some(clique_bound))
    } else {
        (clique_bound, None)
    };

    let decomposition = decompose(max_degree, omega)?;
    let lower = lower_bound(t, max_degree, omega)?;
    let upper = upper_bound(t, max_degree, omega)?;
    let exact = exact_value(t, max_degree, omega);
    let lower_witness = lower_bound_graph(max_degree, omega)
        .ok()
        .map(|g| canonical_form(&g).into_string());

    let (mut best_known, mut best_known_witness) = (lower.clone(), lower_witness);
    if t == 3 && omega == 3 && max_degree % 2 == 1 && max_degree >= 5 {
        let k = (max_degree - 1) / 2;
        let bt = bt_density(k);
        if bt > best_known {
            best_known = bt.clone();
            best_known_witness = bt_graph(k).ok().map(|g| canonical_form(&g).into_string());
            if k == 3 {
                notes.push(format!("conjectured value {bt} attained by BT(3)"));
            }
        }
    }

    if let Some(e) = &exact {
        best_known = e.value.clone();
        best_known_witness = e.witness.as_ref().map(|g| canonical_form(g).into_string());
    } else if lower == upper {
        notes.push("lower and upper bounds coincide".into());
    }

    Ok(BoundReport {
        t,
        max_degree,
        clique_bound: omega,
        requested_clique_bound: requested,
        decomposition,
        lower,
        upper,
        witness: exact
            .as_ref()
            .and_then(|e| e.witness.as_ref())
            .map(|g| canonical_form(g).into_string()),
        provenance: exact.as_ref().map_or(Provenance::None, |e| e.provenance),
        exact: exact.map(|e| e.value),
        best_known,
        best_known_witness,
        notes,
    })
}

/// Whether `ρ_t(T(n, ω))` is non-decreasing for `1 ≤ n ≤ n_max`.
pub fn rho_monotone_check(clique_bound: usize, t: usize, n_max: usize) -> bool {
    if clique_bound == 0 {
        return true;
    }
    let mut prev: Option<(BigUint, usize)> = None;
    for n in 1..=n_max {
        let k = turan_clique_count(n, clique_bound, t);
        if let Some((pk, pn)) = &prev {
            // pk / pn <= k / n
            if pk * BigUint::from(n) > &k * BigUint::from(*pn) {
                return false;
            }
        }
        prev = Some((k, n));
    }
    true
}

/// Vertex set of the `i`-th part of `T(n, r)` as laid out by [`turan_graph`].
pub fn turan_part(n: usize, r: usize, i: usize) -> Result<VertexSet> {
    let shape = TuranShape::new(n, r)?;
    if i >= r {
        return Err(Error::InvalidParameter(format!("part {i} of {r}")));
    }
    let start: usize = shape.part_sizes().take(i).sum();
    let size = shape.part_sizes().nth(i).unwrap_or(0);
    Ok((start..start + size).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clique::{clique_count, clique_number, density};

    fn r(p: u64, q: u64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn turan_constructions() {
        let t84 = turan_graph(8, 4).unwrap();
        assert_eq!(t84.edge_count(), 24);
        assert_eq!(turan_graph(6, 1).unwrap(), Graph::empty(6).unwrap());
        assert_eq!(turan_graph(6, 6).unwrap(), Graph::complete(6).unwrap());
        assert_eq!(turan_graph(7, 3).unwrap().max_degree(), 5);
        assert!(turan_graph(3, 0).is_err());
        assert!(turan_graph(65, 2).is_err());
    }

    #[test]
    fn closed_form_counts() {
        assert_eq!(turan_clique_count(7, 3, 3), BigUint::from(12u32));
        assert_eq!(turan_clique_count(8, 4, 3), BigUint::from(32u32));
        assert_eq!(turan_clique_count(9, 4, 1), BigUint::from(9u32));
        assert_eq!(turan_clique_count(4, 6, 3), BigUint::from(4u32));
        assert_eq!(turan_clique_count(5, 2, 3), BigUint::zero());
    }

    #[test]
    fn decompositions() {
        let d = decompose(5, 3).unwrap();
        assert_eq!((d.a, d.b), (2, 1));
        let d = decompose(6, 4).unwrap();
        assert_eq!((d.a, d.b), (2, 0));
        let d = decompose(7, 3).unwrap();
        assert_eq!((d.a, d.b), (3, 1));
        assert!(decompose(4, 1).is_err());
    }

    #[test]
    fn lower_bound_graphs() {
        assert_eq!(lower_bound_graph(5, 3).unwrap(), turan_graph(7, 3).unwrap());
        assert_eq!(lower_bound_graph(6, 4).unwrap(), turan_graph(8, 4).unwrap());
        for w in 2..8 {
            assert_eq!(lower_bound_graph(w - 1, w).unwrap(), Graph::complete(w).unwrap());
        }
    }

    #[test]
    fn bounds_at_small_triples() {
        assert_eq!(lower_bound(3, 5, 3).unwrap(), r(12, 7));
        assert_eq!(upper_bound(3, 5, 3).unwrap(), r(2, 1));
        assert_eq!(lower_bound(3, 6, 4).unwrap(), r(4, 1));
        assert_eq!(upper_bound(3, 6, 4).unwrap(), r(4, 1));
        assert_eq!(upper_bound(5, 9, 4).unwrap(), Rational::zero());
        assert_eq!(lower_bound(3, 101, 3).unwrap(), r(127500, 151));
        assert_eq!(upper_bound(3, 101, 3).unwrap(), r(850, 1));
        assert!(lower_bound(1, 5, 3).is_err());
    }

    #[test]
    fn asymptotic_terms() {
        for d in [3u64, 10, 17] {
            assert_eq!(asymptotic_leading(3, d as usize, 3).unwrap(), r(d * d, 12));
            assert_eq!(asymptotic_leading(2, d as usize, 5).unwrap(), r(d, 2));
        }
    }

    #[test]
    fn special_constructions() {
        let bt2 = bt_graph(2).unwrap();
        assert_eq!(bt2.order(), 8);
        assert_eq!(bt2.edge_count(), 20);
        assert_eq!(bt2.max_degree(), 5);
        assert_eq!(bt_density(2), r(15, 8));
        assert_eq!(density(&bt2, 3).unwrap(), r(15, 8));
        assert_eq!(bt_density(3), r(40, 11));
        assert!(bt_density(3) > lower_bound(3, 7, 3).unwrap());
        assert_eq!(lower_bound(3, 7, 3).unwrap(), r(18, 5));

        let gs = g_star();
        assert_eq!(gs.order(), 7);
        assert_eq!(gs.edge_count(), 17);
        assert_eq!(gs.max_degree(), 5);
        assert_eq!(clique_number(&gs), 4);
        assert_eq!(gs.neighbors(6), VertexSet::from_vertices([0, 1, 2, 3]));
        assert_eq!(clique_count(&gs, 3), 16);
        assert!(bt_graph(1).is_err());
        assert!(bt_graph(21).is_err());
    }

    #[test]
    fn registry_rows() {
        let e = exact_value(3, 5, 3).unwrap();
        assert_eq!(e.value, r(15, 8));
        assert_eq!(e.provenance, Provenance::SpecialTriple);

        let e = exact_value(5, 6, 5).unwrap();
        assert_eq!(e.value, r(4, 7));
        assert_eq!(e.witness, Some(turan_graph(7, 5).unwrap()));
        assert_eq!(e.provenance, Provenance::DeltaEqOmegaPlusOne);

        let e = exact_value(4, 6, 5).unwrap();
        assert_eq!(e.value, r(16, 7));

        assert!(exact_value(3, 7, 3).is_none());
        // t = r - 1 needs r >= 5
        assert!(exact_value(3, 5, 4).is_some_and(|e| e.provenance == Provenance::SpecialTriple));
        assert!(exact_value(2, 5, 4).is_none());
        // t = r with r = 4
        assert_eq!(exact_value(4, 5, 4).unwrap().value, r(2, 3));

        let e = exact_value(4, 5, 5).unwrap();
        assert_eq!(e.provenance, Provenance::DeltaEqOmega);
        assert_eq!(e.value, density(&turan_graph(6, 5).unwrap(), 4).unwrap());
        assert!(exact_value(2, 5, 5).is_none());
    }

    #[test]
    fn reports() {
        let rep = bounds_report(3, 5, 3).unwrap();
        assert_eq!((rep.lower.clone(), rep.upper.clone()), (r(12, 7), r(2, 1)));
        assert_eq!(rep.exact, Some(r(15, 8)));

        let rep = bounds_report(3, 6, 4).unwrap();
        assert_eq!(rep.exact, Some(r(4, 1)));
        assert_eq!(rep.lower, rep.upper);
        assert_eq!(rep.provenance, Provenance::Divisibility);

        let rep = bounds_report(3, 8, 3).unwrap();
        assert_eq!(rep.lower, rep.upper);
        assert!(rep.exact.is_some());

        let rep = bounds_report(3, 7, 3).unwrap();
        assert_eq!(rep.exact, None);
        assert_eq!(rep.best_known, r(40, 11));
        assert!(rep.notes.iter().any(|n| n.contains("40/11")));

        let rep = bounds_report(3, 4, 9).unwrap();
        assert_eq!(rep.clique_bound, 5);
        assert_eq!(rep.requested_clique_bound, Some(9));
    }

    #[test]
    fn monotone_sweeps() {
        assert!(rho_monotone_check(3, 3, 200));
        assert!(rho_monotone_check(1, 2, 50));
        assert!(rho_monotone_check(10, 7, 200));
    }

    #[test]
    fn parts() {
        assert_eq!(turan_part(7, 3, 0).unwrap(), VertexSet::from_vertices([0, 1, 2]));
        assert_eq!(turan_part(7, 3, 2).unwrap(), VertexSet::from_vertices([5, 6]));
    }
}
