//! Property tests on random graphs against the brute-force oracles in `common`.

mod common;

use proptest::prelude::*;
use topodiag_core::analysis::{
    cut_structure_full, expansion_check, kappa_h_exact, kappa_h_upper, min_boundary, CutRule, SmallSide, Status,
};
use topodiag_core::diagnosability::{edge_upper_bound, is_tt_diagnosable, ViolationKind};
use topodiag_core::edgelist::{parse_edge_list, write_edge_list};
use topodiag_core::{pessimistic_diagnosability, vertex_connectivity, Graph};

/// A connected graph on `n` vertices: a random spanning tree plus extra edges.
fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        let parents = (1..n).map(|v| 0..v).collect::<Vec<_>>();
        let extra = proptest::collection::vec((0..n, 0..n), 0..3 * n);
        (Just(n), parents, extra).prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents.into_iter().enumerate().map(|(i, p)| (p, i + 1)).collect();
            edges.extend(extra.into_iter().filter(|(a, b)| a != b));
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Any simple graph, connected or not.
fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..3 * n).prop_map(move |edges| {
            Graph::from_edges(n, edges.into_iter().filter(|(a, b)| a != b)).unwrap()
        })
    })
}

/// Smallest vertex cut, or `n - 1` for complete graphs.
fn kappa_oracle(g: &Graph) -> usize {
    let adj = common::masks(g);
    let n = g.order();
    (0..n - 1)
        .find(|&s| common::any_subset(n, s, |f| common::components(&adj, common::full(n) & !f).len() >= 2))
        .unwrap_or(n - 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn components_partition_the_remainder(g in any_graph(14), removed in proptest::collection::vec(0usize..14, 0..5)) {
        let f = g.vertex_set(removed.into_iter().filter(|&v| v < g.order()));
        let comps = g.components(&f);
        let adj = common::masks(&g);
        let alive = common::full(g.order()) & !f.iter().fold(0u64, |m, v| m | 1 << v);
        let mut oracle = common::components(&adj, alive);
        let mut got: Vec<u64> = comps.iter().map(|c| c.iter().fold(0u64, |m, v| m | 1 << v)).collect();
        oracle.sort_unstable();
        got.sort_unstable();
        prop_assert_eq!(got, oracle);
        for c in &comps {
            prop_assert!(g.induces_connected(c));
        }
    }

    #[test]
    fn connectivity_matches_cut_enumeration(g in connected_graph(11)) {
        let kappa = vertex_connectivity(&g).unwrap();
        prop_assert_eq!(kappa, kappa_oracle(&g));
        prop_assert!(kappa <= g.min_degree());
    }

    #[test]
    fn common_neighbor_statistics(g in connected_graph(14)) {
        let n = g.order();
        for u in 0..n {
            for v in u + 1..n {
                prop_assert_eq!(g.common_neighbors(u, v).unwrap(), g.common_neighbors(v, u).unwrap());
            }
        }
        prop_assert!(g.cn_max().unwrap() >= g.l_max().unwrap());
    }

    #[test]
    fn edge_list_round_trips(g in any_graph(20)) {
        let text = write_edge_list(&g);
        let back = parse_edge_list(&text).unwrap();
        prop_assert_eq!(back.order(), g.order());
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        prop_assert_eq!(write_edge_list(&back), text);
    }

    #[test]
    fn min_boundary_matches_subsets(g in connected_graph(16), m in 1usize..7) {
        prop_assume!(m < g.order());
        let r = min_boundary(&g, m, u64::MAX).unwrap();
        prop_assert!(r.exact);
        prop_assert_eq!(r.value, common::min_boundary(&g, m));
        prop_assert_eq!(r.witness.len(), m);
        prop_assert_eq!(g.neighborhood(&g.vertex_set(r.witness.iter().copied())).len(), r.value);
    }

    #[test]
    fn expansion_witnesses_recheck(g in connected_graph(14), max_size in 2usize..6, bound in 1usize..7) {
        let v = expansion_check(&g, "random", max_size, bound, u64::MAX);
        prop_assert_eq!(v.witness.is_some(), v.status == Status::Violated);
        prop_assert!(v.recheck(&g, None));
        // oracle: some connected or disconnected U of the given sizes falls short
        let short = (2..=max_size.min(g.order())).any(|m| common::min_boundary(&g, m) < bound);
        prop_assert_eq!(v.status == Status::Violated, short);
    }

    #[test]
    fn extra_connectivity_bounds(g in connected_graph(12)) {
        let oracle = common::kappa1(&g);
        let (cut, _, exhausted) = kappa_h_upper(&g, 1, 4, u64::MAX);
        prop_assert!(!exhausted);
        if let Some(cut) = &cut {
            let exact = oracle.expect("a cut exists");
            prop_assert!(cut.size >= exact);
            prop_assert!(cut.size >= vertex_connectivity(&g).unwrap());
            let (value, certified) = kappa_h_exact(&g, 1, cut.size, u64::MAX);
            prop_assert!(certified);
            prop_assert_eq!(value, exact);
        }
    }

    #[test]
    fn cut_rule_witnesses_recheck(g in connected_graph(12), bound in 1usize..5) {
        let rule = CutRule { bound, small_side: SmallSide::Trivial, four_cycle_exceptions: false };
        let v = cut_structure_full(&g, "random", &rule, u64::MAX);
        prop_assert!(v.recheck(&g, Some(&rule)));
        prop_assert_eq!(v.witness.is_some(), v.status == Status::Violated);
    }

    #[test]
    fn diagnosability_matches_characterization(g in connected_graph(11), t in 1usize..7) {
        let v = is_tt_diagnosable(&g, t, u64::MAX).unwrap();
        prop_assert_eq!(v.diagnosable, common::tt_diagnosable(&g, t));
        prop_assert!(v.recheck(&g));
        if !v.diagnosable {
            prop_assert!(v.p < t);
            prop_assert!(v.violation_kind != ViolationKind::None);
        }
    }

    #[test]
    fn diagnosability_is_monotone(g in connected_graph(12)) {
        let r = pessimistic_diagnosability(&g, u64::MAX).unwrap();
        for t in 1..=r.tp + 2 {
            let ok = is_tt_diagnosable(&g, t, u64::MAX).unwrap().diagnosable;
            prop_assert_eq!(ok, t <= r.tp, "t = {}", t);
        }
        prop_assert_eq!(r.tp, common::tp(&g));
        prop_assert_eq!(r.not_even_one, r.tp == 0);
        prop_assert!(r.tp <= edge_upper_bound(&g).unwrap());
    }
}

#[test]
fn triangle_is_one_diagnosable_only() {
    let g = common::cycle(3);
    assert!(is_tt_diagnosable(&g, 1, u64::MAX).unwrap().diagnosable);
    assert!(!is_tt_diagnosable(&g, 2, u64::MAX).unwrap().diagnosable);
}

#[test]
fn cycles_have_extra_connectivity_two() {
    for n in 6..=12 {
        assert_eq!(common::kappa1(&common::cycle(n)), Some(2));
        let (cut, _, _) = kappa_h_upper(&common::cycle(n), 1, 4, u64::MAX);
        assert_eq!(cut.map(|c| c.size), Some(2));
    }
}
