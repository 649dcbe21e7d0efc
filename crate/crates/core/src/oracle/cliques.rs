//! Maximal cliques, clique graphs and chordality.

use crate::error::{guard, Result};
use crate::graph::{Graph, VertexId};

/// Vertex limit for clique enumeration (one machine word per vertex set).
pub const CLIQUE_LIMIT: usize = 64;

/// All maximal cliques of a graph, each sorted, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CliqueSet {
    pub cliques: Vec<Vec<VertexId>>,
}

impl CliqueSet {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vec<VertexId>> {
        self.cliques.iter()
    }

    /// Checks pairwise adjacency, maximality, pairwise incomparability and
    /// edge coverage against `g`.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let sets: Vec<u64> = self.cliques.iter().map(|c| to_mask(c)).collect();
        let nbr = neighbour_masks(g);
        for (c, &mask) in self.cliques.iter().zip(&sets) {
            if c.is_empty() {
                return false;
            }
            for (i, &u) in c.iter().enumerate() {
                if c[i + 1..].iter().any(|&v| !g.has_edge(u, v)) {
                    return false;
                }
            }
            // maximal: no outside vertex adjacent to the whole clique
            let common = c.iter().fold(!0u64, |acc, &v| acc & nbr[v]) & !mask;
            if common & full_mask(g.n()) != 0 {
                return false;
            }
        }
        for (i, &a) in sets.iter().enumerate() {
            if sets.iter().enumerate().any(|(j, &b)| i != j && a & b == a) {
                return false;
            }
        }
        g.edges()
            .all(|(u, v)| sets.iter().any(|&s| s >> u & 1 == 1 && s >> v & 1 == 1))
            && (0..g.n()).all(|v| sets.iter().any(|&s| s >> v & 1 == 1))
    }
}

pub(crate) fn neighbour_masks(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| to_mask(g.neighbors(v))).collect()
}

pub(crate) fn to_mask(set: &[VertexId]) -> u64 {
    set.iter().fold(0u64, |acc, &v| acc | 1 << v)
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

fn from_mask(mut mask: u64) -> Vec<VertexId> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

/// Bron–Kerbosch with Tomita pivoting over word-sized vertex sets.
pub fn maximal_cliques(g: &Graph) -> Result<CliqueSet> {
    guard("clique enumeration vertex count", g.n(), CLIQUE_LIMIT)?;
    let nbr = neighbour_masks(g);
    let mut found = Vec::new();
    if g.n() > 0 {
        expand(0, full_mask(g.n()), 0, &nbr, &mut found);
    }
    let mut cliques: Vec<Vec<VertexId>> = found.into_iter().map(from_mask).collect();
    cliques.sort();
    Ok(CliqueSet { cliques })
}

fn expand(r: u64, mut p: u64, mut x: u64, nbr: &[u64], out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = from_mask(p | x)
        .into_iter()
        .max_by_key(|&u| (p & nbr[u]).count_ones())
        .unwrap();
    let mut cand = p & !nbr[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        let bit = 1u64 << v;
        expand(r | bit, p & nbr[v], x & nbr[v], nbr, out);
        p &= !bit;
        x |= bit;
        cand &= !bit;
    }
}

pub fn clique_number(g: &Graph) -> Result<usize> {
    Ok(maximal_cliques(g)?
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0))
}

/// The intersection graph of the maximal cliques: vertex `i` stands for
/// `cliques.cliques[i]`.
pub fn clique_graph(g: &Graph) -> Result<(Graph, CliqueSet)> {
    let cliques = maximal_cliques(g)?;
    let masks: Vec<u64> = cliques.iter().map(|c| to_mask(c)).collect();
    let mut edges = Vec::new();
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            if masks[i] & masks[j] != 0 {
                edges.push((i, j));
            }
        }
    }
    Ok((Graph::from_edges(masks.len(), edges)?, cliques))
}

/// Maximum cardinality search; returns vertices in visiting order.
pub fn maximum_cardinality_search(g: &Graph) -> Vec<VertexId> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut buckets: Vec<Vec<VertexId>> = vec![(0..n).rev().collect()];
    let mut top = 0usize;
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let v = loop {
            match buckets[top].pop() {
                // stale entries are skipped lazily
                Some(v) if !done[v] && weight[v] == top => break v,
                Some(_) => {}
                None => top -= 1,
            }
        };
        done[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !done[w] {
                weight[w] += 1;
                if buckets.len() <= weight[w] {
                    buckets.push(Vec::new());
                }
                buckets[weight[w]].push(w);
                top = top.max(weight[w]);
            }
        }
    }
    order
}

/// True iff `order` (first eliminated first) is a perfect elimination
/// ordering of `g`.
pub fn is_perfect_elimination_ordering(g: &Graph, order: &[VertexId]) -> bool {
    let n = g.n();
    if order.len() != n {
        return false;
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if pos[v] != usize::MAX {
            return false;
        }
        pos[v] = i;
    }
    for &v in order {
        let later: Vec<VertexId> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| pos[w] > pos[v])
            .collect();
        if let Some(&parent) = later.iter().min_by_key(|&&w| pos[w]) {
            if later
                .iter()
                .any(|&w| w != parent && !g.has_edge(w, parent))
            {
                return false;
            }
        }
    }
    true
}

/// Chordality via maximum cardinality search: the reverse visiting order is
/// a perfect elimination ordering iff the graph is chordal.
pub fn is_chordal(g: &Graph) -> bool {
    let mut order = maximum_cardinality_search(g);
    order.reverse();
    is_perfect_elimination_ordering(g, &order)
}

pub fn is_clique_chordal(g: &Graph) -> Result<bool> {
    let (k, _) = clique_graph(g)?;
    Ok(is_chordal(&k))
}
