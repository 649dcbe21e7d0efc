//! Brute-force reference implementations used to check the fast paths.

pub mod cliques;
pub mod cycles;
pub mod exact_coloring;

pub use cliques::{
    clique_graph, clique_number, is_chordal, is_clique_chordal, maximal_cliques,
    maximum_cardinality_search, CliqueSet,
};
pub use cycles::{
    find_chordless_cycles, find_odd_hole_or_antihole, is_perfect_desk, is_perfect_exhaustive,
    CycleKind, CycleWitness,
};
pub use exact_coloring::{brute_force_k_colorable, chromatic_number};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::recognition::{satisfies_path_condition, SpanningTree};
use crate::structure::find_k4;

/// Result of [`wheel_hub`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WheelCheck {
    /// Smallest vertex adjacent to every cycle vertex.
    pub hub: Option<VertexId>,
    /// No consecutive cycle pair is a tree edge.
    pub no_cycle_edge_in_tree: bool,
}

/// For an induced cycle of length at least 4 in a `K4`-free graph with a
/// tree satisfying the path condition: a common neighbour of the whole
/// cycle, and whether the tree avoids every cycle edge.
pub fn wheel_hub(g: &Graph, cycle: &CycleWitness, t: &SpanningTree) -> Result<WheelCheck> {
    if cycle.kind != CycleKind::Chordless || !cycle.is_induced_in(g) {
        return Err(Error::PreconditionViolated("not an induced cycle of length >= 4".into()));
    }
    if let Some(k4) = find_k4(g) {
        return Err(Error::PreconditionViolated(format!("graph contains K4 {k4:?}")));
    }
    if t.n() != g.n() || !satisfies_path_condition(g, t) {
        return Err(Error::PreconditionViolated("tree fails the path condition".into()));
    }
    let vs = &cycle.vertices;
    let hub = g
        .neighbors(vs[0])
        .iter()
        .copied()
        .find(|&h| vs[1..].iter().all(|&c| g.has_edge(h, c)));
    Ok(WheelCheck {
        hub,
        no_cycle_edge_in_tree: cycle.edges().all(|(a, b)| !t.has_edge(a, b)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognition::{build_compatible_tree, find_mno};

    #[test]
    fn w4_rim_with_hub_tree() {
        let w4 = Graph::wheel(4);
        let t = SpanningTree::from_parents(&w4, vec![Some(4), Some(4), Some(4), Some(4), None]).unwrap();
        let rim = &find_chordless_cycles(&w4, 4).unwrap()[0];
        let check = wheel_hub(&w4, rim, &t).unwrap();
        assert_eq!(check.hub, Some(4));
        assert!(check.no_cycle_edge_in_tree);
    }

    #[test]
    fn w5_rim() {
        let w5 = Graph::wheel(5);
        let t = build_compatible_tree(&w5, &find_mno(&w5).unwrap().unwrap()).unwrap();
        let rim = &find_chordless_cycles(&w5, 4).unwrap()[0];
        assert_eq!(rim.len(), 5);
        let check = wheel_hub(&w5, rim, &t).unwrap();
        assert_eq!(check.hub, Some(5));
        assert!(check.no_cycle_edge_in_tree);
    }

    #[test]
    fn preconditions() {
        // octahedron: K4-free, but every spanning tree fails the path condition
        let edges = (0..6)
            .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
            .filter(|&(u, v)| u / 2 != v / 2);
        let oct = Graph::from_edges(6, edges).unwrap();
        let rim = find_chordless_cycles(&oct, 4).unwrap().remove(0);
        let path_tree = SpanningTree::from_edges(&oct, &[(0, 2), (2, 1), (1, 3), (3, 4), (3, 5)], 0);
        let t = path_tree.unwrap();
        assert!(matches!(wheel_hub(&oct, &rim, &t), Err(Error::PreconditionViolated(_))));

        let k5 = Graph::complete(5);
        let star = SpanningTree::from_parents(&k5, vec![None, Some(0), Some(0), Some(0), Some(0)]).unwrap();
        let fake = CycleWitness {
            vertices: vec![0, 1, 2, 3],
            kind: CycleKind::Chordless,
            hub: None,
        };
        assert!(wheel_hub(&k5, &fake, &star).is_err());
    }
}
