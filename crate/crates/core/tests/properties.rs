mod common;

use proptest::prelude::*;

use common::*;
use fbset::graph::{degree_profile, AnyGraph, DiGraph, UGraph};
use fbset::io::{parse, serialize, GraphFile};
use fbset::planar::{classify_pattern, test_planarity, Sign, SignPattern};
use fbset::reductions::{split_vertices, verify_reduction, VerifyMode};
use fbset::solvers::{solve_with, Envelope, Instance, Problem, SolveOptions};

fn opts() -> SolveOptions {
    SolveOptions::with_envelope(Envelope::default())
}

/// Edge lists over `n` vertices, loops and parallel edges included.
fn edge_list(max_n: usize, max_m: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=max_n).prop_flat_map(move |n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=max_m)))
}

fn digraph(max_n: usize, max_m: usize) -> impl Strategy<Value = DiGraph> {
    edge_list(max_n, max_m).prop_map(|(n, e)| DiGraph::from_edges(n, e))
}

fn ugraph(max_n: usize, max_m: usize) -> impl Strategy<Value = UGraph> {
    edge_list(max_n, max_m).prop_map(|(n, e)| UGraph::from_edges(n, e))
}

fn optimum(g: impl Into<AnyGraph>, p: Problem) -> usize {
    solve_with(&Instance::new(g, p).unwrap(), &opts())
        .unwrap()
        .value()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn degree_sums(d in digraph(10, 25)) {
        let ins: usize = d.vertices().map(|v| d.in_degree(v)).sum();
        let outs: usize = d.vertices().map(|v| d.out_degree(v)).sum();
        let total: usize = d.vertices().map(|v| d.degree(v)).sum();
        prop_assert_eq!(ins, d.edge_count());
        prop_assert_eq!(outs, d.edge_count());
        prop_assert_eq!(total, 2 * d.edge_count());
    }

    #[test]
    fn trimming_is_idempotent_and_keeps_cycles(d in digraph(9, 20)) {
        let once = d.trim_non_cyclic();
        let twice = once.trim_non_cyclic();
        prop_assert_eq!(arcs_of(&once), arcs_of(&twice));
        prop_assert_eq!(once.vertex_count(), d.vertex_count());
        for v in once.vertices() {
            prop_assert!(once.in_degree(v) > 0 && once.out_degree(v) > 0);
        }
        prop_assert_eq!(optimum(once, Problem::Fvs), optimum(d, Problem::Fvs));
    }

    #[test]
    fn subdivision_is_bipartite(g in ugraph(8, 16)) {
        let (s, _) = g.subdivide_all();
        prop_assert!(s.is_bipartite());
        prop_assert_eq!(s.edge_count(), 2 * g.edge_count());
    }

    #[test]
    fn profile_implications(d in digraph(9, 24)) {
        let p = degree_profile(&d);
        prop_assert!(p.implications_hold());
        let sigma = d.vertices().map(|v| d.in_degree(v).min(d.out_degree(v))).max().unwrap_or(0);
        prop_assert_eq!(p.sigma, sigma);
    }

    #[test]
    fn pattern_class_is_rotation_invariant(signs in prop::collection::vec(any::<bool>(), 1..10), k in 0usize..20) {
        let p = SignPattern(signs.into_iter().map(|b| if b { Sign::Plus } else { Sign::Minus }).collect());
        prop_assert_eq!(classify_pattern(&p), classify_pattern(&p.rotated(k)));
    }

    #[test]
    fn format_round_trip(g in ugraph(9, 16), directed in any::<bool>(), embed in any::<bool>()) {
        let file = if directed {
            GraphFile::new(g.retype::<fbset::graph::Directed>())
        } else {
            let emb = if embed { test_planarity(&g).ok() } else { None };
            GraphFile::with_embedding(g, emb)
        };
        let text = serialize(&file);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn deleting_an_arc_never_raises_fvs(d in digraph(7, 14), pick in any::<prop::sample::Index>()) {
        prop_assume!(d.edge_count() > 0);
        let e = pick.index(d.edge_count());
        let (smaller, _) = d.filter_edges(|x| x != e);
        let before = optimum(d.clone(), Problem::Fvs);
        prop_assert!(optimum(smaller, Problem::Fvs) <= before);
        prop_assert!(before <= optimum(d, Problem::Fas));
    }

    #[test]
    fn vertex_cover_bounds_fvs(g in ugraph(8, 14)) {
        prop_assume!(!g.has_self_loop());
        prop_assert!(optimum(g.clone(), Problem::Fvs) <= optimum(g, Problem::Vc));
    }

    #[test]
    fn split_reduction_verifies(d in digraph(6, 12)) {
        let art = split_vertices(&d).unwrap();
        let r = verify_reduction(&art, VerifyMode::OptimumEquality, &opts()).unwrap();
        prop_assert!(r.passed(), "{}", r);
    }
}
