mod common;

use cdt_core::clique::{check_class, clique_count, density};
use cdt_core::graph6;
use cdt_core::search::{best_up_to, class_sizes, enumerate_class, max_density, Options, SearchSpec};
use cdt_core::turan::{bt_graph, g_star, lower_bound, lower_bound_graph, turan_graph};
use cdt_core::{canonical_form, Rational};

#[test]
fn reports_agree_across_thread_counts() {
    let spec = |threads| SearchSpec::range(2, 8, 4, 4, 3).threads(threads);
    let strip = |mut r: cdt_core::search::SearchReport| {
        r.wall_time_ms = 0;
        r.spec.threads = 0;
        serde_json::to_string(&r).unwrap()
    };
    let one = strip(best_up_to(&spec(1)).unwrap());
    for threads in [2, 8] {
        assert_eq!(one, strip(best_up_to(&spec(threads)).unwrap()));
    }
    let sizes = class_sizes(8, 4, 3, &Options::with_threads(1)).unwrap();
    for threads in [2, 8] {
        assert_eq!(sizes, class_sizes(8, 4, 3, &Options::with_threads(threads)).unwrap());
    }
}

#[test]
fn bt2_maximizes_g53_at_eight() {
    let m = max_density(&SearchSpec::new(8, 5, 3, 3)).unwrap();
    assert_eq!(m.density, Rational::new(15, 8));
    assert!(m.witnesses.contains(&canonical_form(&bt_graph(2).unwrap())));
}

#[test]
fn g_star_maximizes_g54_at_seven() {
    let m = max_density(&SearchSpec::new(7, 5, 4, 3)).unwrap();
    assert_eq!(m.density, Rational::new(16, 7));
    assert!(m.witnesses.contains(&canonical_form(&g_star())));
}

#[test]
fn t_above_omega_has_no_cliques() {
    let m = max_density(&SearchSpec::new(6, 4, 2, 3)).unwrap();
    assert!(m.density.is_zero());
}

#[test]
fn turan_8_4_is_best_in_g65() {
    let r = best_up_to(&SearchSpec::range(1, 8, 6, 5, 3)).unwrap();
    assert_eq!(r.best_density, Some(Rational::integer(4)));
    assert_eq!(r.best_n, Some(8));
    let t84 = canonical_form(&turan_graph(8, 4).unwrap());
    assert!(r.levels.last().unwrap().witnesses.contains(&t84));
}

#[test]
fn lower_bound_graph_order_reaches_lower_bound() {
    for (d, w, t) in [(3, 3, 3), (4, 3, 3), (4, 4, 3), (5, 3, 3), (3, 4, 3), (4, 3, 2)] {
        let l = lower_bound_graph(d, w).unwrap();
        let n = l.order();
        if n > 9 {
            continue;
        }
        let m = max_density(&SearchSpec::new(n, d, w, t)).unwrap();
        let lb = lower_bound(t, d, w).unwrap();
        assert!(m.density >= lb, "Δ={d} ω={w} t={t}: {} < {lb}", m.density);
        assert_eq!(density(&l, t).unwrap(), lb);
    }
}

#[test]
fn witnesses_attain_the_reported_maximum() {
    let spec = SearchSpec::range(3, 7, 4, 3, 3).witness_limit(1000);
    let r = best_up_to(&spec).unwrap();
    for level in &r.levels {
        assert_eq!(level.witness_count as usize, level.witnesses.len());
        for w in &level.witnesses {
            let g = graph6::decode(w.as_str()).unwrap();
            assert_eq!(g.order(), level.n);
            check_class(&g, 4, 3).unwrap();
            assert_eq!(Some(clique_count(&g, 3)), level.max_count);
        }
    }
}

#[test]
fn maxima_match_a_plain_scan() {
    let (n, d, w, t) = (7, 4, 4, 3);
    let mut best = 0;
    enumerate_class(n, d, w, &Options::default(), |g| best = best.max(common::brute_clique_count(g, t))).unwrap();
    let m = max_density(&SearchSpec::new(n, d, w, t)).unwrap();
    assert_eq!(m.max_count, best);
}

#[test]
fn pruning_keeps_every_level_that_reaches_the_target() {
    for (d, w, target) in [(5, 3, Rational::new(15, 8)), (4, 4, Rational::new(3, 2))] {
        let full = best_up_to(&SearchSpec::range(1, 8, d, w, 3)).unwrap();
        let pruned = best_up_to(&SearchSpec::range(1, 8, d, w, 3).prune_target(Some(target.clone()))).unwrap();
        assert_eq!(full.best_density, pruned.best_density);
        for (a, b) in full.levels.iter().zip(&pruned.levels) {
            if a.max_density.as_ref().is_some_and(|rho| *rho >= target) {
                assert_eq!(a.max_count, b.max_count);
                assert_eq!(a.witness_count, b.witness_count);
                assert_eq!(a.witnesses, b.witnesses);
                assert!(b.graphs_enumerated <= a.graphs_enumerated);
            }
        }
    }
}

#[test]
fn cap_and_parameters_are_checked() {
    assert!(best_up_to(&SearchSpec::new(12, 3, 3, 3)).is_err());
    assert!(best_up_to(&SearchSpec::new(5, 3, 3, 1)).is_err());
    assert!(best_up_to(&SearchSpec::range(6, 5, 3, 3, 3)).is_err());
    assert!(best_up_to(&SearchSpec::new(17, 3, 3, 3).cap(17)).is_err());
}
