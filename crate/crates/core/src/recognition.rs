//! Maximum neighbourhood orderings and compatible spanning trees.
//!
//! A vertex `u` in the closed neighbourhood `N[v]` is a maximum neighbour
//! of `v` when `N[w] ⊆ N[u]` for every `w ∈ N[v]`. A graph is dually
//! chordal iff its vertices can be eliminated one by one, each having a
//! maximum neighbour in what remains.
//!
//! [`find_mno`] only eliminates vertices whose maximum neighbour is a
//! *different* vertex. Such a vertex `v` is dominated by its maximum
//! neighbour `u`, and re-hanging the tree neighbours of `v` onto `u` turns
//! a compatible tree of `G` into one of `G - v`, so the residual graph stays
//! dually chordal and the greedy never paints itself into a corner. A
//! vertex that is only its own maximum neighbour is universal in the
//! residual graph; once two or more vertices remain, every other vertex
//! then has it as maximum neighbour, so the restriction loses nothing.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::error::{guard, Error, Result};
use crate::graph::{Graph, VertexId};
use crate::oracle::cliques::CliqueSet;

/// Vertex limit for [`exhaustive_mno_search`] and the exhaustive tree
/// fallback.
pub const EXHAUSTIVE_LIMIT: usize = 8;

/// An elimination order with a maximum neighbour for each position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxNeighbourhoodOrdering {
    pub order: Vec<VertexId>,
    /// `witness[i]` is a maximum neighbour of `order[i]` in the graph
    /// induced by `order[i..]`.
    pub witness: Vec<VertexId>,
}

impl MaxNeighbourhoodOrdering {
    /// Checks the ordering against its definition from scratch.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let n = g.n();
        if self.order.len() != n || self.witness.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &v in &self.order {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        let mut alive = vec![true; n];
        for (&v, &u) in self.order.iter().zip(&self.witness) {
            if u >= n || !is_maximum_neighbour(g, v, u, &alive) {
                return false;
            }
            alive[v] = false;
        }
        true
    }
}

/// Whether `u` is a maximum neighbour of `v` in `G[alive]`.
pub fn is_maximum_neighbour(g: &Graph, v: VertexId, u: VertexId, alive: &[bool]) -> bool {
    if !alive[v] || !alive[u] || !g.is_closed_neighbour(u, v) {
        return false;
    }
    std::iter::once(v)
        .chain(g.neighbors(v).iter().copied())
        .filter(|&w| alive[w])
        .all(|w| {
            std::iter::once(w)
                .chain(g.neighbors(w).iter().copied())
                .filter(|&x| alive[x])
                .all(|x| g.is_closed_neighbour(x, u))
        })
}

/// Reusable scratch space for maximum-neighbour queries.
struct Scratch {
    ball: Vec<usize>,
    stamp: usize,
    members: Vec<VertexId>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            ball: vec![usize::MAX; n],
            stamp: 0,
            members: Vec::new(),
        }
    }

    /// Smallest maximum neighbour of `v` in `G[alive]` other than `v`,
    /// falling back to `v` itself when `allow_self`.
    fn candidates(&mut self, g: &Graph, v: VertexId, alive: &[bool], allow_self: bool) -> Option<VertexId> {
        // the union of N[w] over w in N[v] is the radius-2 ball around v;
        // u qualifies iff the whole ball lies in N[u]
        self.stamp += 1;
        let stamp = self.stamp;
        self.members.clear();
        let add = |x: VertexId, ball: &mut Vec<usize>, members: &mut Vec<VertexId>| {
            if alive[x] && ball[x] != stamp {
                ball[x] = stamp;
                members.push(x);
            }
        };
        add(v, &mut self.ball, &mut self.members);
        for &w in g.neighbors(v) {
            if !alive[w] {
                continue;
            }
            add(w, &mut self.ball, &mut self.members);
            for &x in g.neighbors(w) {
                add(x, &mut self.ball, &mut self.members);
            }
        }
        let size = self.members.len();
        let covers = |u: VertexId| {
            // N[u] ∩ alive ⊆ ball always holds for u ∈ N[v], so count suffices
            1 + g
                .neighbors(u)
                .iter()
                .filter(|&&x| alive[x] && self.ball[x] == stamp)
                .count()
                == size
        };
        let found = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| alive[u] && g.degree(u) + 1 >= size)
            .find(|&u| covers(u));
        found.or_else(|| (allow_self && covers(v)).then_some(v))
    }
}

/// A maximum neighbour of `v` within `G[alive]`, preferring vertices other
/// than `v` and then the smallest index. `v` must be alive.
pub fn maximum_neighbour(g: &Graph, v: VertexId, alive: &[bool]) -> Option<VertexId> {
    if !alive[v] {
        return None;
    }
    Scratch::new(g.n()).candidates(g, v, alive, true)
}

/// Greedy elimination: repeatedly remove the smallest vertex that has a
/// maximum neighbour other than itself. `None` iff the greedy gets stuck,
/// which happens exactly when the graph is not dually chordal.
pub fn find_mno(g: &Graph) -> Result<Option<MaxNeighbourhoodOrdering>> {
    let n = g.n();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut alive = vec![true; n];
    let mut scratch = Scratch::new(n);
    let mut status: Vec<Option<VertexId>> = (0..n)
        .map(|v| scratch.candidates(g, v, &alive, false))
        .collect();
    let mut ready: BTreeSet<VertexId> = (0..n).filter(|&v| status[v].is_some()).collect();
    let mut order = Vec::with_capacity(n);
    let mut witness = Vec::with_capacity(n);
    let mut remaining = n;
    let mut affected = Vec::new();
    let mut touched = vec![usize::MAX; n];

    while remaining > 1 {
        let Some(v) = ready.pop_first() else {
            return Ok(None);
        };
        order.push(v);
        witness.push(status[v].take().unwrap());
        alive[v] = false;
        remaining -= 1;

        // statuses can only change within distance two of v
        affected.clear();
        for &w in g.neighbors(v) {
            if alive[w] {
                for x in std::iter::once(w).chain(g.neighbors(w).iter().copied()) {
                    if alive[x] && touched[x] != v {
                        touched[x] = v;
                        affected.push(x);
                    }
                }
            }
        }
        for &x in &affected {
            status[x] = scratch.candidates(g, x, &alive, false);
            if status[x].is_some() {
                ready.insert(x);
            } else {
                ready.remove(&x);
            }
        }
    }
    if let Some(last) = (0..n).find(|&v| alive[v]) {
        order.push(last);
        witness.push(last);
    }
    Ok(Some(MaxNeighbourhoodOrdering { order, witness }))
}

/// Whether the graph has a maximum neighbourhood ordering.
pub fn is_dually_chordal(g: &Graph) -> Result<bool> {
    Ok(find_mno(g)?.is_some())
}

/// Exhaustive search over elimination orders with memoised dead ends,
/// using its own bitset neighbourhood test. Works on disconnected graphs.
pub fn exhaustive_mno_search(g: &Graph) -> Result<Option<MaxNeighbourhoodOrdering>> {
    let n = g.n();
    guard("exhaustive MNO search vertex count", n, EXHAUSTIVE_LIMIT)?;
    let closed: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(1u32 << v, |acc, &w| acc | 1 << w))
        .collect();
    let full = (1u32 << n) - 1;
    let mut dead = vec![false; 1 << n];
    let mut order = Vec::with_capacity(n);
    let mut witness = Vec::with_capacity(n);
    if n == 0 || descend(&closed, full, &mut dead, &mut order, &mut witness) {
        Ok(Some(MaxNeighbourhoodOrdering { order, witness }))
    } else {
        Ok(None)
    }
}

fn descend(closed: &[u32], alive: u32, dead: &mut [bool], order: &mut Vec<VertexId>, witness: &mut Vec<VertexId>) -> bool {
    if alive == 0 {
        return true;
    }
    if dead[alive as usize] {
        return false;
    }
    for v in (0..closed.len()).filter(|&v| alive >> v & 1 == 1) {
        let nv = closed[v] & alive;
        let max_nbr = (0..closed.len())
            .filter(|&u| nv >> u & 1 == 1)
            .find(|&u| {
                let nu = closed[u] & alive;
                (0..closed.len())
                    .filter(|&w| nv >> w & 1 == 1)
                    .all(|w| closed[w] & alive & !nu == 0)
            });
        if let Some(u) = max_nbr {
            order.push(v);
            witness.push(u);
            if descend(closed, alive & !(1 << v), dead, order, witness) {
                return true;
            }
            order.pop();
            witness.pop();
        }
    }
    dead[alive as usize] = true;
    false
}

/// A rooted spanning tree of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    parent: Vec<Option<VertexId>>,
    depth: Vec<usize>,
    root: VertexId,
}

impl SpanningTree {
    /// Validates that `parent` describes a spanning tree of `g` whose links
    /// are all edges of `g`.
    pub fn from_parents(g: &Graph, parent: Vec<Option<VertexId>>) -> Result<Self> {
        let n = g.n();
        let bad = |msg: &str| Error::PreconditionViolated(format!("not a spanning tree: {msg}"));
        if parent.len() != n || n == 0 {
            return Err(bad("wrong length"));
        }
        let roots: Vec<_> = (0..n).filter(|&v| parent[v].is_none()).collect();
        let [root] = roots[..] else {
            return Err(bad("expected exactly one root"));
        };
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n || !g.has_edge(v, p) {
                    return Err(bad("parent link is not a graph edge"));
                }
            }
        }
        let mut depth = vec![usize::MAX; n];
        depth[root] = 0;
        let mut chain = Vec::new();
        for start in 0..n {
            let mut v = start;
            chain.clear();
            while depth[v] == usize::MAX {
                if chain.len() > n {
                    return Err(bad("cycle in parent links"));
                }
                chain.push(v);
                v = parent[v].unwrap();
            }
            let mut d = depth[v];
            for &c in chain.iter().rev() {
                d += 1;
                depth[c] = d;
            }
        }
        Ok(SpanningTree { parent, depth, root })
    }

    /// Roots an undirected edge set at `root`.
    pub fn from_edges(g: &Graph, edges: &[(VertexId, VertexId)], root: VertexId) -> Result<Self> {
        let n = g.n();
        if edges.len() + 1 != n || root >= n {
            return Err(Error::PreconditionViolated("not a spanning tree: wrong edge count".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::PreconditionViolated("not a spanning tree: disconnected".into()));
        }
        Self::from_parents(g, parent)
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<VertexId>] {
        &self.parent
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// Tree edges as `(child, parent)`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (v, p)))
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.parent[u] == Some(v) || self.parent[v] == Some(u)
    }
}

/// Interior of the tree path from `u` to `v`, listed from the `u` end.
/// Empty when `uv` is a tree edge or `u == v`.
pub fn tree_path_interior(t: &SpanningTree, u: VertexId, v: VertexId) -> Vec<VertexId> {
    let (mut a, mut b) = (u, v);
    let mut from_u = Vec::new();
    let mut from_v = Vec::new();
    while a != b {
        if t.depth[a] >= t.depth[b] {
            a = t.parent[a].unwrap();
            from_u.push(a);
        } else {
            b = t.parent[b].unwrap();
            from_v.push(b);
        }
    }
    // a == b is the meeting vertex, recorded by whichever side reached it
    if from_u.last() == Some(&a) && from_v.last() == Some(&a) {
        from_v.pop();
    }
    from_u.extend(from_v.into_iter().rev());
    from_u.retain(|&x| x != u && x != v);
    from_u
}

/// Every edge's tree-path interior is adjacent to both endpoints.
pub fn satisfies_path_condition(g: &Graph, t: &SpanningTree) -> bool {
    g.edges().all(|(u, v)| {
        tree_path_interior(t, u, v)
            .iter()
            .all(|&w| g.has_edge(u, w) && g.has_edge(v, w))
    })
}

/// Every vertex set in `sets` induces a connected subtree of `t`.
pub fn sets_induce_subtrees(t: &SpanningTree, sets: &[Vec<VertexId>]) -> bool {
    let mut member = vec![usize::MAX; t.n()];
    sets.iter().enumerate().all(|(i, set)| {
        for &v in set {
            member[v] = i;
        }
        let inner = set
            .iter()
            .filter(|&&v| t.parent[v].is_some_and(|p| member[p] == i))
            .count();
        !set.is_empty() && inner + 1 == set.len()
    })
}

/// Result of [`verify_compatible_tree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeReport {
    /// Every edge's tree-path interior is adjacent to both endpoints.
    pub path_condition: bool,
    /// Every maximal clique induces a subtree.
    pub clique_subtrees: bool,
    /// Every edge's closed tree path is a clique.
    pub closed_paths_are_cliques: bool,
}

impl TreeReport {
    pub fn all(&self) -> bool {
        self.path_condition && self.clique_subtrees && self.closed_paths_are_cliques
    }
}

/// Checks `t` against `g` and its maximal cliques.
pub fn verify_compatible_tree(g: &Graph, t: &SpanningTree, cliques: &CliqueSet) -> TreeReport {
    let closed_paths_are_cliques = g.edges().all(|(u, v)| {
        let mut path = tree_path_interior(t, u, v);
        path.push(u);
        path.push(v);
        path.iter()
            .enumerate()
            .all(|(i, &a)| path[i + 1..].iter().all(|&b| g.has_edge(a, b)))
    });
    TreeReport {
        path_condition: satisfies_path_condition(g, t),
        clique_subtrees: sets_induce_subtrees(t, &cliques.cliques),
        closed_paths_are_cliques,
    }
}

/// Largest closed tree path `|P[u, v]|` over all graph edges.
pub fn max_closed_path_len(g: &Graph, t: &SpanningTree) -> usize {
    g.edges()
        .map(|(u, v)| tree_path_interior(t, u, v).len() + 2)
        .max()
        .unwrap_or(0)
}

/// Which construction produced a compatible tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeSource {
    /// Each vertex hung from its maximum neighbour in the ordering.
    Witness,
    /// Maximum-weight spanning tree under `|N[x] ∩ N[y]|` edge weights.
    MaxWeight,
    /// Exhaustive search over all spanning trees.
    Exhaustive,
}

/// Builds a spanning tree satisfying the path condition.
///
/// First tries hanging every vertex from its maximum neighbour. If that
/// fails verification, takes a maximum-weight spanning tree with weight
/// `|N[x] ∩ N[y]|` on edge `xy`: its weight reaches `Σ (|N[z]| - 1)` exactly
/// when every closed neighbourhood induces a subtree, which for a dually
/// chordal graph is achievable and implies the path condition. Small graphs
/// finally fall back to enumerating all spanning trees.
pub fn build_compatible_tree(g: &Graph, mno: &MaxNeighbourhoodOrdering) -> Result<SpanningTree> {
    build_compatible_tree_detailed(g, mno).map(|(t, _)| t)
}

pub fn build_compatible_tree_detailed(
    g: &Graph,
    mno: &MaxNeighbourhoodOrdering,
) -> Result<(SpanningTree, TreeSource)> {
    let n = g.n();
    if mno.order.len() != n || n == 0 {
        return Err(Error::PreconditionViolated("ordering does not match graph".into()));
    }
    if let Some(t) = witness_tree(g, mno) {
        if satisfies_path_condition(g, &t) {
            return Ok((t, TreeSource::Witness));
        }
    }
    let root = *mno.order.last().unwrap();
    if let Some(t) = max_weight_tree(g, root) {
        if satisfies_path_condition(g, &t) {
            return Ok((t, TreeSource::MaxWeight));
        }
    }
    if n <= EXHAUSTIVE_LIMIT {
        let mut found = None;
        let _ = for_each_spanning_tree(g, |t| {
            if satisfies_path_condition(g, t) {
                found = Some(t.clone());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if let Some(t) = found {
            return Ok((t, TreeSource::Exhaustive));
        }
    }
    Err(Error::NoCompatibleTree)
}

fn witness_tree(g: &Graph, mno: &MaxNeighbourhoodOrdering) -> Option<SpanningTree> {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in mno.order.iter().enumerate() {
        pos[v] = i;
    }
    let mut parent = vec![None; n];
    for (i, (&v, &u)) in mno.order.iter().zip(&mno.witness).enumerate().take(n - 1) {
        parent[v] = if u != v {
            Some(u)
        } else {
            g.neighbors(v).iter().copied().find(|&w| pos[w] > i)
        };
        parent[v]?;
    }
    SpanningTree::from_parents(g, parent).ok()
}

fn max_weight_tree(g: &Graph, root: VertexId) -> Option<SpanningTree> {
    let mut weighted: Vec<(usize, VertexId, VertexId)> = g
        .edges()
        .map(|(u, v)| (g.common_neighbors(u, v).len() + 2, u, v))
        .collect();
    weighted.sort_by(|a, b| b.0.cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    let mut dsu: Vec<usize> = (0..g.n()).collect();
    fn find(dsu: &mut [usize], mut x: usize) -> usize {
        while dsu[x] != x {
            dsu[x] = dsu[dsu[x]];
            x = dsu[x];
        }
        x
    }
    let mut edges = Vec::with_capacity(g.n().saturating_sub(1));
    for (_, u, v) in weighted {
        let (a, b) = (find(&mut dsu, u), find(&mut dsu, v));
        if a != b {
            dsu[a] = b;
            edges.push((u, v));
        }
    }
    SpanningTree::from_edges(g, &edges, root).ok()
}

/// Calls `visit` on every spanning tree of `g` (rooted at 0). Only for
/// graphs within [`EXHAUSTIVE_LIMIT`].
pub fn for_each_spanning_tree<F>(g: &Graph, mut visit: F) -> Result<()>
where
    F: FnMut(&SpanningTree) -> ControlFlow<()>,
{
    guard("spanning tree enumeration vertex count", g.n(), EXHAUSTIVE_LIMIT)?;
    if g.n() == 0 {
        return Ok(());
    }
    let edges: Vec<_> = g.edges().collect();
    let mut chosen = Vec::with_capacity(g.n());
    let comp: Vec<usize> = (0..g.n()).collect();
    let _ = choose_edges(g, &edges, 0, &mut chosen, comp, &mut visit);
    Ok(())
}

fn choose_edges<F>(
    g: &Graph,
    edges: &[(VertexId, VertexId)],
    next: usize,
    chosen: &mut Vec<(VertexId, VertexId)>,
    comp: Vec<usize>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&SpanningTree) -> ControlFlow<()>,
{
    let need = g.n() - 1 - chosen.len();
    if need == 0 {
        let t = SpanningTree::from_edges(g, chosen, 0).expect("acyclic edge set of size n - 1");
        return visit(&t);
    }
    if edges.len() - next < need {
        return ControlFlow::Continue(());
    }
    let (u, v) = edges[next];
    if comp[u] != comp[v] {
        let (from, to) = (comp[u], comp[v]);
        let merged: Vec<usize> = comp.iter().map(|&c| if c == from { to } else { c }).collect();
        chosen.push((u, v));
        choose_edges(g, edges, next + 1, chosen, merged, visit)?;
        chosen.pop();
    }
    choose_edges(g, edges, next + 1, chosen, comp, visit)
}
