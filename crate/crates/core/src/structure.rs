//! Blocks, local connectivity, `K4` detection and construction orders of
//! locally connected graphs.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{sorted_intersection, Graph, VertexId};

const NIL: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Sorted.
    pub vertices: Vec<VertexId>,
    /// Sorted, each `(u, v)` with `u < v`.
    pub edges: Vec<(VertexId, VertexId)>,
}

/// Maximal biconnected subgraphs of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Ordered by smallest contained edge. An edgeless single-vertex graph
    /// has one block holding that vertex.
    pub blocks: Vec<Block>,
    /// Sorted articulation points.
    pub articulation: Vec<VertexId>,
    arc_offset: Vec<usize>,
    arc_block: Vec<usize>,
}

impl BlockDecomposition {
    /// Block containing edge `uv`, if it is an edge.
    pub fn block_of_edge(&self, g: &Graph, u: VertexId, v: VertexId) -> Option<usize> {
        let i = g.neighbors(u).binary_search(&v).ok()?;
        Some(self.arc_block[self.arc_offset[u] + i])
    }

    /// Block indices of every edge, aligned with [`Graph::edges`].
    pub fn block_of(&self, g: &Graph) -> Vec<usize> {
        g.edges()
            .map(|(u, v)| self.block_of_edge(g, u, v).unwrap())
            .collect()
    }

    /// Every edge in exactly one block, block edge counts summing to `m`,
    /// intersecting blocks sharing exactly one articulation point, and
    /// articulation points being exactly the vertices in two or more blocks.
    pub fn check_invariants(&self, g: &Graph) -> bool {
        let total: usize = self.blocks.iter().map(|b| b.edges.len()).sum();
        if total != g.m() {
            return false;
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if b.edges.iter().any(|&(u, v)| self.block_of_edge(g, u, v) != Some(i)) {
                return false;
            }
        }
        let mut membership = vec![0usize; g.n()];
        for b in &self.blocks {
            for &v in &b.vertices {
                membership[v] += 1;
            }
        }
        let multi: Vec<VertexId> = (0..g.n()).filter(|&v| membership[v] >= 2).collect();
        if multi != self.articulation {
            return false;
        }
        for (i, a) in self.blocks.iter().enumerate() {
            for b in &self.blocks[i + 1..] {
                let shared = sorted_intersection(&a.vertices, &b.vertices);
                if shared.len() > 1 || shared.iter().any(|v| self.articulation.binary_search(v).is_err()) {
                    return false;
                }
            }
        }
        true
    }
}

/// Hopcroft–Tarjan lowpoint DFS with an edge stack, iterative.
pub fn blocks(g: &Graph) -> Result<BlockDecomposition> {
    let n = g.n();
    if n == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut arc_offset = Vec::with_capacity(n + 1);
    let mut acc = 0;
    for v in 0..n {
        arc_offset.push(acc);
        acc += g.degree(v);
    }
    arc_offset.push(acc);
    let mut arc_block = vec![NIL; acc];

    let mut disc = vec![NIL; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<(VertexId, VertexId)> = Vec::new();
    let mut raw_blocks: Vec<Vec<(VertexId, VertexId)>> = Vec::new();
    // (vertex, parent, next neighbour index)
    let mut stack: Vec<(VertexId, VertexId, usize)> = vec![(0, NIL, 0)];
    disc[0] = 0;
    low[0] = 0;
    time += 1;
    while let Some(frame) = stack.last_mut() {
        let (v, parent, idx) = *frame;
        if idx < g.degree(v) {
            frame.2 += 1;
            let w = g.neighbors(v)[idx];
            if disc[w] == NIL {
                disc[w] = time;
                low[w] = time;
                time += 1;
                edge_stack.push((v, w));
                stack.push((w, v, 0));
            } else if w != parent && disc[w] < disc[v] {
                edge_stack.push((v, w));
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(u, _, _)) = stack.last() {
                low[u] = low[u].min(low[v]);
                if low[v] >= disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        block.push(e);
                        if e == (u, v) {
                            break;
                        }
                    }
                    raw_blocks.push(block);
                }
            }
        }
    }

    let mut blocks: Vec<Block> = raw_blocks
        .into_iter()
        .map(|es| {
            let mut edges: Vec<_> = es.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
            edges.sort_unstable();
            let mut vertices: Vec<_> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
            vertices.sort_unstable();
            vertices.dedup();
            Block { vertices, edges }
        })
        .collect();
    if blocks.is_empty() {
        blocks.push(Block {
            vertices: vec![0],
            edges: Vec::new(),
        });
    }
    blocks.sort_by(|a, b| a.edges.first().cmp(&b.edges.first()));

    let mut membership = vec![0usize; n];
    for (i, b) in blocks.iter().enumerate() {
        for &v in &b.vertices {
            membership[v] += 1;
        }
        for &(u, v) in &b.edges {
            let iu = g.neighbors(u).binary_search(&v).unwrap();
            let iv = g.neighbors(v).binary_search(&u).unwrap();
            arc_block[arc_offset[u] + iu] = i;
            arc_block[arc_offset[v] + iv] = i;
        }
    }
    let articulation = (0..n).filter(|&v| membership[v] >= 2).collect();
    Ok(BlockDecomposition {
        blocks,
        articulation,
        arc_offset,
        arc_block,
    })
}

/// BFS inside the vertex group marked with `stamp`, starting at `group[0]`;
/// true iff the whole group is reached.
fn group_connected(g: &Graph, group: &[VertexId], stamp: usize, mark: &mut [usize], seen: &mut [usize]) -> bool {
    let Some(&start) = group.first() else {
        return false;
    };
    let mut queue = VecDeque::from([start]);
    seen[start] = stamp;
    let mut reached = 1;
    while let Some(w) = queue.pop_front() {
        for &x in g.neighbors(w) {
            if mark[x] == stamp && seen[x] != stamp {
                seen[x] = stamp;
                reached += 1;
                queue.push_back(x);
            }
        }
    }
    reached == group.len()
}

/// True iff every open neighbourhood is non-empty and induces a connected
/// subgraph; otherwise also returns the smallest violating vertex.
pub fn is_locally_connected(g: &Graph) -> (bool, Option<VertexId>) {
    let n = g.n();
    let mut mark = vec![NIL; n];
    let mut seen = vec![NIL; n];
    for v in 0..n {
        let nb = g.neighbors(v);
        for &w in nb {
            mark[w] = v;
        }
        if !group_connected(g, nb, v, &mut mark, &mut seen) {
            return (false, Some(v));
        }
    }
    (true, None)
}

/// A vertex whose neighbourhood inside one of its blocks (of at least three
/// vertices) is disconnected, if any.
pub fn locally_connected_block_violation(g: &Graph) -> Result<Option<VertexId>> {
    let dec = blocks(g)?;
    let n = g.n();
    let mut mark = vec![NIL; n];
    let mut seen = vec![NIL; n];
    let mut stamp = 0;
    let mut by_block: Vec<(usize, VertexId)> = Vec::new();
    for v in 0..n {
        by_block.clear();
        by_block.extend(
            g.neighbors(v)
                .iter()
                .enumerate()
                .map(|(i, &w)| (dec.arc_block[dec.arc_offset[v] + i], w)),
        );
        by_block.sort_unstable();
        for group in by_block.chunk_by(|a, b| a.0 == b.0) {
            if dec.blocks[group[0].0].vertices.len() < 3 {
                continue;
            }
            let members: Vec<VertexId> = group.iter().map(|&(_, w)| w).collect();
            for &w in &members {
                mark[w] = stamp;
            }
            // edges between two neighbours of v in a block stay in that block
            if !group_connected(g, &members, stamp, &mut mark, &mut seen) {
                return Ok(Some(v));
            }
            stamp += 1;
        }
    }
    Ok(None)
}

/// True iff every block with at least three vertices is locally connected.
/// Single-edge blocks pass.
pub fn blocks_locally_connected(g: &Graph) -> Result<bool> {
    Ok(locally_connected_block_violation(g)?.is_none())
}

/// Any 4-clique, found by looking for an adjacent pair among the common
/// neighbours of each edge.
pub fn find_k4(g: &Graph) -> Option<[VertexId; 4]> {
    for (u, v) in g.edges() {
        let common = g.common_neighbors(u, v);
        if common.len() < 2 {
            continue;
        }
        for &a in &common {
            let hit = sorted_intersection(g.neighbors(a), &common);
            if let Some(&b) = hit.first() {
                let mut k = [u, v, a, b];
                k.sort_unstable();
                return Some(k);
            }
        }
    }
    None
}

/// Vertex sequence starting with an edge in which every later vertex has two
/// adjacent, earlier neighbours (recorded in `attach`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionOrder {
    pub order: Vec<VertexId>,
    /// `attach[i]` witnesses `order[i + 2]`.
    pub attach: Vec<(VertexId, VertexId)>,
}

impl ConstructionOrder {
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let n = g.n();
        if self.order.len() != n || n < 2 || self.attach.len() != n - 2 {
            return false;
        }
        let mut pos = vec![NIL; n];
        for (i, &v) in self.order.iter().enumerate() {
            if v >= n || pos[v] != NIL {
                return false;
            }
            pos[v] = i;
        }
        if !g.has_edge(self.order[0], self.order[1]) {
            return false;
        }
        self.attach.iter().enumerate().all(|(i, &(a, b))| {
            let v = self.order[i + 2];
            a < n
                && b < n
                && pos[a] < i + 2
                && pos[b] < i + 2
                && g.has_edge(a, b)
                && g.has_edge(a, v)
                && g.has_edge(b, v)
        })
    }
}

/// Greedy construction order from the smallest edge, or `None` if the
/// greedy stalls (or the graph has fewer than two vertices).
pub fn construction_order(g: &Graph) -> Option<ConstructionOrder> {
    let (u, v) = g.edges().next()?;
    let n = g.n();
    let mut placed = vec![false; n];
    let mut queued = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut attach = Vec::with_capacity(n.saturating_sub(2));
    let mut pending: VecDeque<(VertexId, (VertexId, VertexId))> = VecDeque::new();

    let place = |x: VertexId,
                     placed: &mut Vec<bool>,
                     queued: &mut Vec<bool>,
                     pending: &mut VecDeque<(VertexId, (VertexId, VertexId))>| {
        placed[x] = true;
        for &y in g.neighbors(x) {
            if placed[y] || queued[y] {
                continue;
            }
            if let Some(&z) = sorted_intersection(g.neighbors(x), g.neighbors(y))
                .iter()
                .find(|&&z| placed[z])
            {
                queued[y] = true;
                pending.push_back((y, (x, z)));
            }
        }
    };

    for x in [u, v] {
        order.push(x);
        queued[x] = true;
        place(x, &mut placed, &mut queued, &mut pending);
    }
    while let Some((y, wit)) = pending.pop_front() {
        order.push(y);
        attach.push(wit);
        place(y, &mut placed, &mut queued, &mut pending);
    }
    (order.len() == n).then_some(ConstructionOrder { order, attach })
}
