//! Induced cycle enumeration, odd holes and antiholes, perfection.

use std::ops::ControlFlow;

use crate::error::{guard, Result};
use crate::graph::{Graph, VertexId};
use crate::oracle::cliques::{clique_number, neighbour_masks};
use crate::oracle::exact_coloring::chromatic_number;

/// Vertex limit for induced-cycle enumeration and [`is_perfect_desk`].
pub const CYCLE_LIMIT: usize = 14;
/// Vertex limit for [`is_perfect_exhaustive`].
pub const EXHAUSTIVE_PERFECT_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleKind {
    /// Induced cycle of the graph itself.
    Chordless,
    /// Induced cycle of the complement; the vertices form an antihole.
    Antihole,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness {
    /// Cyclic order, smallest vertex first, smaller of its two cycle
    /// neighbours second.
    pub vertices: Vec<VertexId>,
    pub kind: CycleKind,
    /// A vertex adjacent to every cycle vertex, if one exists.
    pub hub: Option<VertexId>,
}

impl CycleWitness {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive pairs (including the closing pair).
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| (self.vertices[i], self.vertices[(i + 1) % k]))
    }

    /// Checks that the vertices form an induced cycle of length at least 4
    /// in `g` (or in its complement, for the antihole kind).
    pub fn is_induced_in(&self, g: &Graph) -> bool {
        let k = self.vertices.len();
        if k < 4 {
            return false;
        }
        let mut sorted = self.vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != k || sorted.last().is_some_and(|&v| v >= g.n()) {
            return false;
        }
        let want_edge = |u, v| match self.kind {
            CycleKind::Chordless => g.has_edge(u, v),
            CycleKind::Antihole => !g.has_edge(u, v),
        };
        for i in 0..k {
            for j in i + 1..k {
                let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                if want_edge(self.vertices[i], self.vertices[j]) != consecutive {
                    return false;
                }
            }
        }
        true
    }
}

/// Calls `visit` for every induced cycle of length at least `min_len`
/// (and at least 4), each reported once in canonical orientation.
/// Vertex count must not exceed 64.
pub(crate) fn for_each_chordless_cycle<F>(g: &Graph, min_len: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[VertexId]) -> ControlFlow<()>,
{
    debug_assert!(g.n() <= 64);
    let min_len = min_len.max(4);
    let nbr = neighbour_masks(g);
    let mut path = Vec::with_capacity(g.n());
    for s in 0..g.n() {
        path.clear();
        path.push(s);
        let mut p1s = nbr[s] & above(s);
        while p1s != 0 {
            let p1 = p1s.trailing_zeros() as usize;
            p1s &= p1s - 1;
            path.push(p1);
            extend(&nbr, s, &mut path, 1u64 << s | 1 << p1, 0, min_len, &mut visit)?;
            path.pop();
        }
    }
    ControlFlow::Continue(())
}

/// Vertices with index greater than `s`.
fn above(s: usize) -> u64 {
    if s >= 63 {
        0
    } else {
        !((2u64 << s) - 1)
    }
}

/// `interior` holds the neighbourhoods of path vertices strictly between
/// the start and the last vertex.
fn extend<F>(
    nbr: &[u64],
    s: usize,
    path: &mut Vec<VertexId>,
    on_path: u64,
    interior: u64,
    min_len: usize,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[VertexId]) -> ControlFlow<()>,
{
    let last = *path.last().unwrap();
    let mut cand = nbr[last] & above(s) & !on_path & !interior;
    while cand != 0 {
        let x = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        if nbr[s] >> x & 1 == 1 {
            // closes the cycle; a triangle when the path is just s-p1
            if path.len() + 1 >= min_len && path[1] < x {
                path.push(x);
                let r = visit(path);
                path.pop();
                r?;
            }
        } else {
            path.push(x);
            extend(nbr, s, path, on_path | 1 << x, interior | nbr[last], min_len, visit)?;
            path.pop();
        }
    }
    ControlFlow::Continue(())
}

fn common_hub(g: &Graph, cycle: &[VertexId]) -> Option<VertexId> {
    let first = cycle[0];
    g.neighbors(first)
        .iter()
        .copied()
        .find(|&h| cycle[1..].iter().all(|&c| g.has_edge(h, c)))
}

/// All induced cycles of length at least `max(min_len, 4)`.
pub fn find_chordless_cycles(g: &Graph, min_len: usize) -> Result<Vec<CycleWitness>> {
    guard("induced cycle search vertex count", g.n(), CYCLE_LIMIT)?;
    let mut out = Vec::new();
    let _ = for_each_chordless_cycle(g, min_len, |c| {
        out.push(CycleWitness {
            vertices: c.to_vec(),
            kind: CycleKind::Chordless,
            hub: common_hub(g, c),
        });
        ControlFlow::Continue(())
    });
    Ok(out)
}

fn first_odd_cycle(g: &Graph) -> Option<Vec<VertexId>> {
    let mut found = None;
    let _ = for_each_chordless_cycle(g, 5, |c| {
        if c.len() % 2 == 1 {
            found = Some(c.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

/// An odd hole of `g`, or failing that an odd antihole (an odd hole of the
/// complement). `C5` is reported as a hole.
pub fn find_odd_hole_or_antihole(g: &Graph) -> Result<Option<CycleWitness>> {
    guard("perfection check vertex count", g.n(), CYCLE_LIMIT)?;
    if let Some(c) = first_odd_cycle(g) {
        let hub = common_hub(g, &c);
        return Ok(Some(CycleWitness {
            vertices: c,
            kind: CycleKind::Chordless,
            hub,
        }));
    }
    let co = g.complement()?;
    Ok(first_odd_cycle(&co).map(|c| CycleWitness {
        vertices: c,
        kind: CycleKind::Antihole,
        hub: None,
    }))
}

/// Perfection via the forbidden odd holes and odd antiholes.
pub fn is_perfect_desk(g: &Graph) -> Result<bool> {
    Ok(find_odd_hole_or_antihole(g)?.is_none())
}

/// Perfection straight from the definition: clique number equals chromatic
/// number on every induced subgraph.
pub fn is_perfect_exhaustive(g: &Graph) -> Result<bool> {
    guard("exhaustive perfection vertex count", g.n(), EXHAUSTIVE_PERFECT_LIMIT)?;
    let n = g.n();
    for mask in 1u32..(1 << n) {
        let set: Vec<VertexId> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let (h, _) = g.induced_subgraph(&set);
        if clique_number(&h)? != chromatic_number(&h)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chordal_graph_has_no_long_induced_cycles() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (1, 3), (3, 4)]).unwrap();
        assert!(find_chordless_cycles(&g, 4).unwrap().is_empty());
    }

    #[test]
    fn c5_has_one_cycle() {
        let cs = find_chordless_cycles(&Graph::cycle(5), 4).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(cs[0].hub, None);
        assert!(cs[0].is_induced_in(&Graph::cycle(5)));
    }

    #[test]
    fn w4_rim_is_the_only_induced_c4() {
        let w4 = Graph::wheel(4);
        let cs = find_chordless_cycles(&w4, 4).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].vertices, vec![0, 1, 2, 3]);
        assert_eq!(cs[0].hub, Some(4));
    }

    #[test]
    fn octahedron_has_three_induced_c4() {
        // K_{2,2,2}: parts {0,1},{2,3},{4,5}
        let edges = (0..6)
            .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
            .filter(|&(u, v)| u / 2 != v / 2);
        let g = Graph::from_edges(6, edges).unwrap();
        let cs = find_chordless_cycles(&g, 4).unwrap();
        assert_eq!(cs.len(), 3);
        assert!(cs.iter().all(|c| c.len() == 4 && c.is_induced_in(&g)));
    }

    #[test]
    fn min_len_filters() {
        let g = Graph::cycle(6);
        assert_eq!(find_chordless_cycles(&g, 7).unwrap().len(), 0);
        assert_eq!(find_chordless_cycles(&g, 6).unwrap().len(), 1);
        assert!(find_chordless_cycles(&Graph::empty(15), 4).is_err());
    }

    #[test]
    fn perfection_examples() {
        assert!(is_perfect_desk(&Graph::cycle(6)).unwrap());
        assert!(is_perfect_desk(&Graph::path(5)).unwrap());
        assert!(!is_perfect_desk(&Graph::cycle(5)).unwrap());
        assert!(!is_perfect_desk(&Graph::wheel(5)).unwrap());
        assert!(!is_perfect_desk(&Graph::cycle(7)).unwrap());
        // complement of C7 has no odd hole but is itself an odd antihole
        let anti = Graph::cycle(7).complement().unwrap();
        let w = find_odd_hole_or_antihole(&anti).unwrap().unwrap();
        assert_eq!(w.kind, CycleKind::Antihole);
        assert!(w.is_induced_in(&anti));
        assert!(is_perfect_desk(&Graph::wheel(4)).unwrap());
    }

    #[test]
    fn exhaustive_perfection_matches_on_examples() {
        for g in [Graph::cycle(5), Graph::wheel(5), Graph::cycle(6), Graph::wheel(4)] {
            assert_eq!(is_perfect_exhaustive(&g).unwrap(), is_perfect_desk(&g).unwrap());
        }
        let anti = Graph::cycle(7).complement().unwrap();
        assert!(!is_perfect_exhaustive(&anti).unwrap());
    }
}
