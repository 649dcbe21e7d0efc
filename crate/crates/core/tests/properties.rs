use dchordal::generators::{generate, Family, GenSpec};
use dchordal::io::{parse_dimacs, write_dimacs};
use dchordal::oracle::{brute_force_k_colorable, maximal_cliques};
use dchordal::recognition::{exhaustive_mno_search, satisfies_path_condition};
use dchordal::structure::construction_order;
use dchordal::{
    blocks, build_compatible_tree, find_k4, find_mno, three_color, three_color_checked, validate_coloring,
    verify_compatible_tree, Error, Graph, ThreeColoring,
};
use proptest::prelude::*;

/// Any graph on up to `max_n` vertices.
fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn connected_small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    small_graph(max_n).prop_filter("connected", |g| g.is_connected())
}

fn family_graph(family: Family, max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.0..=1.0f64, any::<u64>())
        .prop_map(move |(n, d, seed)| generate(&GenSpec::new(family, n, d, seed)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn graph_invariants(g in small_graph(12)) {
        prop_assert!(g.check_invariants());
        prop_assert_eq!(g.edges().count(), g.m());
        let degrees: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degrees, 2 * g.m());
        for (u, v) in g.edges() {
            prop_assert!(u < v && g.has_edge(v, u));
        }
    }

    #[test]
    fn dimacs_round_trip(g in small_graph(12)) {
        prop_assert_eq!(parse_dimacs(&write_dimacs(&g)).unwrap(), g);
    }

    #[test]
    fn block_invariants(g in connected_small_graph(10)) {
        let b = blocks(&g).unwrap();
        prop_assert!(b.check_invariants(&g));
        let total: usize = b.blocks.iter().map(|blk| blk.edges.len()).sum();
        prop_assert_eq!(total, g.m());
        for (u, v) in g.edges() {
            prop_assert!(b.block_of_edge(&g, u, v).is_some());
        }
    }

    #[test]
    fn mno_agrees_with_exhaustive_search(g in connected_small_graph(7)) {
        let fast = find_mno(&g).unwrap();
        let slow = exhaustive_mno_search(&g).unwrap();
        prop_assert_eq!(fast.is_some(), slow.is_some());
        if let Some(mno) = fast {
            prop_assert!(mno.is_valid_for(&g));
        }
    }

    #[test]
    fn compatible_tree_on_dually_chordal(g in family_graph(Family::DuallyChordal, 40)) {
        let mno = find_mno(&g).unwrap().expect("generator output is dually chordal");
        let t = build_compatible_tree(&g, &mno).unwrap();
        prop_assert!(satisfies_path_condition(&g, &t));
        if g.n() <= 20 {
            prop_assert!(verify_compatible_tree(&g, &t, &maximal_cliques(&g).unwrap()).all());
        }
    }

    #[test]
    fn coloring_matches_brute_force_on_blocks(g in family_graph(Family::LocallyConnectedBlocks, 14)) {
        let out = three_color_checked(&g).unwrap();
        let exact = brute_force_k_colorable(&g, 3).unwrap();
        match out {
            ThreeColoring::Colored(c) => prop_assert!(validate_coloring(&g, &c, 3)),
            ThreeColoring::NotThreeColorable { .. } => prop_assert!(exact.is_none()),
            ThreeColoring::NotApplicable { .. } => prop_assert!(false, "generator output has locally connected blocks"),
        }
    }

    #[test]
    fn k4_free_dually_chordal_is_k4_free(g in family_graph(Family::K4FreeDuallyChordal, 40)) {
        prop_assert!(find_k4(&g).is_none());
        prop_assert!(find_mno(&g).unwrap().is_some());
    }

    #[test]
    fn unchecked_coloring_is_proper_or_refused(g in connected_small_graph(9)) {
        // without the precondition the run may fail, but never returns a bad colouring
        if let ThreeColoring::Colored(c) = three_color(&g).unwrap() {
            prop_assert!(validate_coloring(&g, &c, 3));
        }
    }

    #[test]
    fn maximal_cliques_are_valid(g in small_graph(10)) {
        let cs = maximal_cliques(&g).unwrap();
        prop_assert!(cs.is_valid_for(&g));
    }

    #[test]
    fn construction_order_for_single_blocks(n in 2..60usize, d in 0.0..=1.0f64, seed in any::<u64>()) {
        let g = dchordal::generators::gen_locally_connected_block(n, d, seed).unwrap();
        let o = construction_order(&g).expect("locally connected block");
        prop_assert!(o.is_valid_for(&g));
    }

    #[test]
    fn disconnected_input_is_rejected(a in connected_small_graph(6), b in connected_small_graph(6)) {
        let n = a.n() + b.n();
        let edges = a.edges().chain(b.edges().map(|(u, v)| (u + a.n(), v + a.n())));
        let g = Graph::from_edges(n, edges).unwrap();
        prop_assert_eq!(three_color(&g).unwrap_err(), Error::Disconnected);
        prop_assert_eq!(three_color_checked(&g).unwrap_err(), Error::Disconnected);
        prop_assert_eq!(find_mno(&g).unwrap_err(), Error::Disconnected);
    }
}
