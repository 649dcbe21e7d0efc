//! Simple undirected graphs over dense vertex indices.
//!
//! A [`Graph`] is immutable once built. Neighbour lists are stored back to
//! back in one array, sorted and free of duplicates, which makes membership
//! a binary search and set intersections a linear merge.

use std::collections::VecDeque;

use crate::error::{guard, Error, Result};

/// Dense vertex index in `0..n`.
pub type VertexId = usize;

/// Largest vertex count accepted by [`Graph::complement`].
pub const COMPLEMENT_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    /// Neighbours of `v` are `targets[offsets[v]..offsets[v + 1]]`.
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
}

impl Default for Graph {
    fn default() -> Self {
        Graph::empty(0)
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are collapsed; loops are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_raw_adjacency(adj))
    }

    /// Sorts and dedups each list. Caller guarantees symmetry and no loops.
    pub(crate) fn from_raw_adjacency(mut adj: Vec<Vec<VertexId>>) -> Self {
        let mut offsets = Vec::with_capacity(adj.len() + 1);
        offsets.push(0);
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            offsets.push(offsets.last().unwrap() + list.len());
        }
        let targets = adj.concat();
        Graph { offsets, targets }
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| (0..n).filter(|&u| u != v).collect())
            .collect();
        Self::from_raw_adjacency(adj)
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    /// Chordless cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    /// Wheel: rim `0..k` forming a cycle, hub `k` adjacent to every rim vertex.
    pub fn wheel(k: usize) -> Self {
        let rim = (0..k).map(|v| (v, (v + 1) % k));
        let spokes = (0..k).map(|v| (v, k));
        Self::from_edges(k + 1, rim.chain(spokes)).unwrap()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// `u == v` or `uv` is an edge, i.e. `u` lies in the closed
    /// neighbourhood of `v`.
    #[inline]
    pub fn is_closed_neighbour(&self, u: VertexId, v: VertexId) -> bool {
        u == v || self.has_edge(u, v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.n()).flat_map(move |u| {
            let list = self.neighbors(u);
            let start = list.partition_point(|&v| v <= u);
            list[start..].iter().map(move |&v| (u, v))
        })
    }

    /// Sorted common neighbours of `u` and `v`.
    pub fn common_neighbors(&self, u: VertexId, v: VertexId) -> Vec<VertexId> {
        sorted_intersection(self.neighbors(u), self.neighbors(v))
    }

    /// True iff one traversal from vertex 0 reaches every vertex. The
    /// null graph counts as connected.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        self.components_from(0).1 == n
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out: Vec<Vec<VertexId>> = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            queue.push_back(s);
            let mut members = Vec::new();
            while let Some(v) = queue.pop_front() {
                members.push(v);
                for &w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    fn components_from(&self, s: VertexId) -> (Vec<bool>, usize) {
        let mut seen = vec![false; self.n()];
        let mut stack = vec![s];
        seen[s] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        (seen, count)
    }

    /// Induced subgraph `G[S]`. Vertex `i` of the result is `map[i]` in
    /// `self`; `map` is `S` sorted and deduplicated.
    pub fn induced_subgraph(&self, set: &[VertexId]) -> (Graph, Vec<VertexId>) {
        let mut map = set.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let adj = map
            .iter()
            .map(|&v| {
                self.neighbors(v)
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect()
            })
            .collect();
        (Graph::from_raw_adjacency(adj), map)
    }

    pub fn complement(&self) -> Result<Graph> {
        let n = self.n();
        guard("complement vertex count", n, COMPLEMENT_LIMIT)?;
        let adj = (0..n)
            .map(|v| {
                let mut it = self.neighbors(v).iter().peekable();
                (0..n)
                    .filter(|&u| {
                        if it.peek() == Some(&&u) {
                            it.next();
                            false
                        } else {
                            u != v
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(Graph::from_raw_adjacency(adj))
    }

    /// Full scan of the representation invariants.
    pub fn check_invariants(&self) -> bool {
        if self.offsets.first() != Some(&0)
            || self.offsets.last() != Some(&self.targets.len())
            || self.offsets.windows(2).any(|w| w[0] > w[1])
            || !self.targets.len().is_multiple_of(2)
        {
            return false;
        }
        (0..self.n()).all(|v| {
            let list = self.neighbors(v);
            list.windows(2).all(|w| w[0] < w[1])
                && list
                    .iter()
                    .all(|&w| w != v && w < self.n() && self.neighbors(w).binary_search(&v).is_ok())
        })
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[VertexId]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let mut adj = vec![Vec::new(); self.n()];
        for v in 0..self.n() {
            adj[perm[v]] = self.neighbors(v).iter().map(|&w| perm[w]).collect();
        }
        Graph::from_raw_adjacency(adj)
    }
}

pub(crate) fn sorted_intersection(a: &[VertexId], b: &[VertexId]) -> Vec<VertexId> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
