use edge_polytope::ehrhart::eval_u64;
use edge_polytope::graph::reduced_graph;
use edge_polytope::oracle::{oracle_dim, OracleAnalysis};
use edge_polytope::{
    classify, count_lattice_points, count_sorted_monomials, ehrhart_closed_form, generators,
    kernel_check, polytope_dim, Edge, EdgePolytope, Graph,
};
use proptest::prelude::*;

/// A graph on `d` vertices satisfying the input invariants. Isolated
/// vertices get an edge to their successor (a loop when `d = 1`), then every
/// pair of looped vertices is joined.
fn graph_strategy(max_d: usize) -> impl Strategy<Value = Graph> {
    (1..=max_d).prop_flat_map(|d| {
        let pairs = d * (d + 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut all = Vec::new();
            for i in 1..=d {
                for j in i..=d {
                    all.push((i, j));
                }
            }
            let mut chosen: Vec<_> = all
                .iter()
                .zip(&bits)
                .filter(|(_, &b)| b)
                .map(|(&e, _)| e)
                .collect();
            for v in 1..=d {
                if !chosen.iter().any(|&(i, j)| i == v || j == v) {
                    let w = v % d + 1;
                    chosen.push((v.min(w), v.max(w)));
                }
            }
            let looped: Vec<_> = chosen
                .iter()
                .filter(|(i, j)| i == j)
                .map(|&(i, _)| i)
                .collect();
            let mut edges = chosen;
            for (a, &i) in looped.iter().enumerate() {
                for &j in &looped[a + 1..] {
                    if !edges.contains(&(i, j)) {
                        edges.push((i, j));
                    }
                }
            }
            Graph::new(d, edges).expect("loop condition holds by construction")
        })
    })
}

fn permuted(g: &Graph, perm: &[usize]) -> Graph {
    let edges = g
        .edges()
        .iter()
        .map(|e| (perm[e.lo() - 1], perm[e.hi() - 1]));
    Graph::new(g.d(), edges).unwrap()
}

fn graph_and_perm(max_d: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph_strategy(max_d).prop_flat_map(|g| {
        let d = g.d();
        (Just(g), Just((1..=d).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduced_graph_is_idempotent(g in graph_strategy(6)) {
        let r = reduced_graph(&g);
        prop_assert_eq!(reduced_graph(&r), r);
    }

    #[test]
    fn classification_survives_relabeling((g, perm) in graph_and_perm(6)) {
        let h = permuted(&g, &perm);
        prop_assert_eq!(classify(&g).tag(), classify(&h).tag());
        prop_assert_eq!(classify(&g).is_smooth(), classify(&h).is_smooth());
        prop_assert_eq!(polytope_dim(&g), polytope_dim(&h));
    }

    #[test]
    fn dimension_matches_oracle(g in graph_strategy(6)) {
        prop_assume!(g.num_edges() > 0);
        let pts = EdgePolytope::new(&g).points;
        prop_assert_eq!(oracle_dim(&pts).unwrap(), polytope_dim(&g));
    }

    #[test]
    fn simplicity_matches_oracle(g in graph_strategy(5)) {
        prop_assume!(g.num_edges() > 0);
        let a = OracleAnalysis::new(&EdgePolytope::new(&g).points).unwrap();
        let c = classify(&g);
        prop_assert_eq!(a.is_simplex(), c.is_simplex());
        prop_assert_eq!(a.is_simple(), c.is_simple());
    }

    #[test]
    fn walk_binomials_lie_in_the_kernel(g in graph_strategy(5)) {
        for b in generators(&g) {
            prop_assert!(kernel_check(&b, &g), "{}", b);
            prop_assert!(!b.is_zero());
        }
    }

    #[test]
    fn counts_grow_with_dilation(g in graph_strategy(5)) {
        prop_assume!(g.num_edges() > 0);
        let pts = EdgePolytope::new(&g).points;
        let counts: Vec<u64> = (0..4).map(|m| count_lattice_points(&pts, m).unwrap()).collect();
        prop_assert_eq!(counts[0], 1);
        prop_assert_eq!(counts[1] as usize, g.num_edges());
        prop_assert!(counts.windows(2).all(|w| w[0] <= w[1]));
    }
}

fn family_instance() -> impl Strategy<Value = Graph> {
    prop_oneof![
        (2..=4usize, 2..=4usize).prop_map(|(p, q)| {
            let edges = (1..=p).flat_map(|i| (p + 1..=p + q).map(move |j| (i, j)));
            Graph::new(p + q, edges).unwrap()
        }),
        (2..=3usize, 2..=3usize).prop_map(|(p, q)| {
            let d = p + q + 1;
            let mut edges: Vec<_> = (1..=d).map(|j| (1, j)).collect();
            edges.extend((2..=p + 1).flat_map(|i| (p + 2..=d).map(move |j| (i, j))));
            Graph::new(d, edges).unwrap()
        }),
        (2..=3usize, 1..=3usize).prop_map(|(p, w)| {
            let d = p + w;
            let mut edges = Vec::new();
            for i in 1..=p {
                for j in i..=d {
                    edges.push((i, j));
                }
            }
            Graph::new(d, edges).unwrap()
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closed_form_counts_sorted_monomials(g in family_instance(), m in 0u64..4) {
        let c = classify(&g);
        prop_assert!(c.is_simple_non_simplex(), "{:?}", g.edges());
        let poly = ehrhart_closed_form(&c).unwrap();
        prop_assert_eq!(eval_u64(&poly, m), Some(count_sorted_monomials(&g, m)));
    }
}

#[test]
fn permuted_helper_keeps_edges() {
    let g = Graph::new(3, [(1, 1), (1, 2), (2, 3)]).unwrap();
    let h = permuted(&g, &[3, 1, 2]);
    assert!(h.contains(Edge::loop_at(3)) && h.contains(Edge::new(1, 3)));
}
