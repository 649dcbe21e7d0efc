//! Seeded generation of test graphs.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded
//! with `ChaCha8Rng::seed_from_u64(seed)`, using a separate stream
//! (`set_stream`) per concern: [`STREAM_TREE`] for random trees,
//! [`STREAM_EDGES`] for edge decisions, [`STREAM_BLOCKS`] for block
//! structure, [`STREAM_LABELS`] for the final vertex relabelling and
//! [`STREAM_VERIFY`] for sampled self-checks on large outputs. Equal
//! [`GenSpec`]s therefore produce identical graphs.

pub mod atlas;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{guard, Error, Result};
use crate::graph::{Graph, VertexId};
use crate::recognition::{find_mno, satisfies_path_condition, tree_path_interior, SpanningTree};
use crate::structure::{blocks_locally_connected, find_k4, is_locally_connected};

pub const STREAM_TREE: u64 = 0;
pub const STREAM_EDGES: u64 = 1;
pub const STREAM_BLOCKS: u64 = 2;
pub const STREAM_LABELS: u64 = 3;
pub const STREAM_VERIFY: u64 = 4;

/// Above this size the costly checks run on a sample of vertices only.
pub const VERIFY_LIMIT: usize = 200;
/// Vertices examined by a sampled check.
pub const VERIFY_SAMPLES: usize = 64;
/// Size limit for families that consider every vertex pair.
pub const PAIRWISE_LIMIT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Family {
    DuallyChordal,
    K4FreeDuallyChordal,
    LocallyConnectedBlocks,
    ConnectedRandom,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::DuallyChordal,
        Family::K4FreeDuallyChordal,
        Family::LocallyConnectedBlocks,
        Family::ConnectedRandom,
    ];

    pub fn from_name(name: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::DuallyChordal => "dually-chordal",
            Family::K4FreeDuallyChordal => "k4-free-dually-chordal",
            Family::LocallyConnectedBlocks => "locally-connected-blocks",
            Family::ConnectedRandom => "connected-random",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    /// Probability in `[0, 1]`; its exact role depends on the family.
    pub density: f64,
    pub seed: u64,
    pub family: Family,
}

impl GenSpec {
    pub fn new(family: Family, n: usize, density: f64, seed: u64) -> Self {
        GenSpec {
            n,
            density,
            seed,
            family,
        }
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    fn expect(&self, family: Family) -> Result<()> {
        if self.family != family {
            return Err(Error::PreconditionViolated(format!(
                "spec is for {}, not {}",
                self.family.name(),
                family.name()
            )));
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(Error::PreconditionViolated(format!(
                "density {} outside [0, 1]",
                self.density
            )));
        }
        Ok(())
    }
}

/// Dispatches on `spec.family`.
pub fn generate(spec: &GenSpec) -> Result<Graph> {
    match spec.family {
        Family::DuallyChordal => gen_dually_chordal(spec),
        Family::K4FreeDuallyChordal => gen_k4_free_dually_chordal(spec),
        Family::LocallyConnectedBlocks => gen_locally_connected_blocks(spec),
        Family::ConnectedRandom => gen_connected_random(spec),
    }
}

/// `G` plus one new vertex (index `n`) adjacent to every vertex.
pub fn add_universal_vertex(g: &Graph) -> Graph {
    let n = g.n();
    let edges = g.edges().chain((0..n).map(|v| (v, n)));
    Graph::from_edges(n + 1, edges).expect("valid by construction")
}

/// `G` is 3-colourable iff the returned graph is 4-colourable; the returned
/// graph is always dually chordal.
pub fn reduce_3col_to_4col(g: &Graph) -> Graph {
    add_universal_vertex(g)
}

/// Random recursive tree: vertex `i > 0` hangs from a uniform earlier vertex.
fn random_parents(n: usize, rng: &mut ChaCha8Rng) -> Vec<Option<VertexId>> {
    (0..n)
        .map(|i| (i > 0).then(|| rng.random_range(0..i)))
        .collect()
}

fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<VertexId> {
    let mut perm: Vec<VertexId> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Dense adjacency used while growing a graph.
struct Builder {
    matrix: Vec<Vec<bool>>,
    adj: Vec<Vec<VertexId>>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder {
            matrix: vec![vec![false; n]; n],
            adj: vec![Vec::new(); n],
        }
    }

    fn add(&mut self, u: VertexId, v: VertexId) {
        if !self.matrix[u][v] {
            self.matrix[u][v] = true;
            self.matrix[v][u] = true;
            self.adj[u].push(v);
            self.adj[v].push(u);
        }
    }

    fn creates_k4(&self, u: VertexId, v: VertexId) -> bool {
        let common: Vec<VertexId> = self.adj[u].iter().copied().filter(|&c| self.matrix[v][c]).collect();
        common
            .iter()
            .enumerate()
            .any(|(i, &a)| common[i + 1..].iter().any(|&b| self.matrix[a][b]))
    }

    fn finish(self) -> Graph {
        Graph::from_raw_adjacency(self.adj)
    }
}

/// Interior of the path between `u` and `v` in a tree with `parent[i] < i`.
fn path_interior(parent: &[Option<VertexId>], depth: &[usize], u: VertexId, v: VertexId) -> Vec<VertexId> {
    let (mut a, mut b) = (u, v);
    let mut out = Vec::new();
    while a != b {
        if depth[a] >= depth[b] {
            a = parent[a].unwrap();
            out.push(a);
        } else {
            b = parent[b].unwrap();
            out.push(b);
        }
    }
    out.sort_unstable();
    out.dedup();
    out.retain(|&x| x != u && x != v);
    out
}

/// Adds non-tree edges whose tree-path interior is already adjacent to both
/// endpoints, each with probability `density`. Pairs are decided once, in
/// order of tree distance (random within a distance), so every pair is
/// judged after all shorter pairs it depends on.
fn grow_from_tree(parent: &[Option<VertexId>], density: f64, k4_free: bool, rng: &mut ChaCha8Rng) -> Graph {
    let n = parent.len();
    let mut depth = vec![0usize; n];
    for v in 0..n {
        if let Some(p) = parent[v] {
            depth[v] = depth[p] + 1;
        }
    }
    let mut b = Builder::new(n);
    for (v, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            b.add(v, p);
        }
    }
    let mut pairs: Vec<(usize, VertexId, VertexId, Vec<VertexId>)> = Vec::new();
    for v in 0..n {
        for u in 0..v {
            if b.matrix[u][v] {
                continue;
            }
            let interior = path_interior(parent, &depth, u, v);
            pairs.push((interior.len(), u, v, interior));
        }
    }
    pairs.shuffle(rng);
    pairs.sort_by_key(|p| p.0);
    for (_, u, v, interior) in pairs {
        let saturated = interior.iter().all(|&w| b.matrix[u][w] && b.matrix[v][w]);
        if saturated && rng.random_bool(density) && !(k4_free && b.creates_k4(u, v)) {
            b.add(u, v);
        }
    }
    b.finish()
}

fn tree_and_growth(spec: &GenSpec, k4_free: bool) -> Result<(Graph, SpanningTree)> {
    guard("pairwise generator vertex count", spec.n, PAIRWISE_LIMIT)?;
    if spec.n == 0 {
        return Err(Error::PreconditionViolated("need at least one vertex".into()));
    }
    let parent = random_parents(spec.n, &mut spec.rng(STREAM_TREE));
    let g = grow_from_tree(&parent, spec.density, k4_free, &mut spec.rng(STREAM_EDGES));
    let perm = random_permutation(spec.n, &mut spec.rng(STREAM_LABELS));
    let mut relabelled = vec![None; spec.n];
    for (v, p) in parent.iter().enumerate() {
        relabelled[perm[v]] = p.map(|p| perm[p]);
    }
    let g = g.relabel(&perm);
    let t = SpanningTree::from_parents(&g, relabelled)?;
    Ok((g, t))
}

fn verify_sample(g: &Graph, seed: u64) -> Vec<VertexId> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(STREAM_VERIFY);
    (0..VERIFY_SAMPLES.min(g.n())).map(|_| rng.random_range(0..g.n())).collect()
}

/// Path condition on the edges at sampled vertices.
fn sampled_path_condition(g: &Graph, t: &SpanningTree, sample: &[VertexId]) -> bool {
    sample.iter().all(|&v| {
        g.neighbors(v)
            .iter()
            .all(|&u| tree_path_interior(t, u, v).iter().all(|&x| g.has_edge(x, u) && g.has_edge(x, v)))
    })
}

/// A K4 through `v` is a triangle in its neighbourhood.
fn k4_at(g: &Graph, v: VertexId) -> bool {
    let nb = g.neighbors(v);
    nb.iter().any(|&a| {
        g.neighbors(a).iter().any(|&b| {
            a < b && g.has_edge(v, b) && g.neighbors(b).iter().any(|&c| b < c && g.has_edge(v, c) && g.has_edge(a, c))
        })
    })
}

fn verify_dually_chordal(g: &Graph, t: &SpanningTree, seed: u64) -> Result<()> {
    let ok = if g.n() <= VERIFY_LIMIT {
        satisfies_path_condition(g, t)
    } else {
        sampled_path_condition(g, t, &verify_sample(g, seed))
    };
    if !ok {
        return Err(Error::VerificationFailed("generating tree fails the path condition".into()));
    }
    if g.n() <= VERIFY_LIMIT && find_mno(g)?.is_none() {
        return Err(Error::VerificationFailed("no maximum neighbourhood ordering".into()));
    }
    Ok(())
}

/// Random dually chordal graph together with the tree that certifies it.
pub fn gen_dually_chordal_with_tree(spec: &GenSpec) -> Result<(Graph, SpanningTree)> {
    spec.expect(Family::DuallyChordal)?;
    let (g, t) = tree_and_growth(spec, false)?;
    verify_dually_chordal(&g, &t, spec.seed)?;
    Ok((g, t))
}

/// Random spanning tree grown by edges that keep the tree compatible.
/// `density` is the probability of adding each eligible pair.
pub fn gen_dually_chordal(spec: &GenSpec) -> Result<Graph> {
    gen_dually_chordal_with_tree(spec).map(|(g, _)| g)
}

pub fn gen_k4_free_dually_chordal_with_tree(spec: &GenSpec) -> Result<(Graph, SpanningTree)> {
    spec.expect(Family::K4FreeDuallyChordal)?;
    let (g, t) = tree_and_growth(spec, true)?;
    verify_dually_chordal(&g, &t, spec.seed)?;
    if g.n() <= VERIFY_LIMIT {
        if let Some(k4) = find_k4(&g) {
            return Err(Error::VerificationFailed(format!("contains K4 {k4:?}")));
        }
    } else if let Some(v) = verify_sample(&g, spec.seed).into_iter().find(|&v| k4_at(&g, v)) {
        return Err(Error::VerificationFailed(format!("contains a K4 through {v}")));
    }
    Ok((g, t))
}

/// As [`gen_dually_chordal`], skipping any edge that would complete a `K4`.
pub fn gen_k4_free_dually_chordal(spec: &GenSpec) -> Result<Graph> {
    gen_k4_free_dually_chordal_with_tree(spec).map(|(g, _)| g)
}

/// Grows one block from `start` (an existing vertex) by `extra` new
/// vertices, appending edges to `edges`. Each new vertex is joined to both
/// ends of a random existing block edge; with probability `density` it is
/// also joined to another block neighbour of one of those ends. Both moves
/// keep every block neighbourhood connected.
fn grow_block(
    start: VertexId,
    next_id: &mut usize,
    extra: usize,
    density: f64,
    rng: &mut ChaCha8Rng,
    edges: &mut Vec<(VertexId, VertexId)>,
) {
    // local indices: 0 is `start`
    let mut global = vec![start];
    let mut local_adj: Vec<Vec<usize>> = vec![Vec::new()];
    let mut local_edges: Vec<(usize, usize)> = Vec::new();
    let join = |a: usize, b: usize, adj: &mut Vec<Vec<usize>>, le: &mut Vec<(usize, usize)>| {
        adj[a].push(b);
        adj[b].push(a);
        le.push((a, b));
    };
    if extra == 0 {
        return;
    }
    global.push(*next_id);
    *next_id += 1;
    local_adj.push(Vec::new());
    join(0, 1, &mut local_adj, &mut local_edges);
    for _ in 1..extra {
        let x = global.len();
        global.push(*next_id);
        *next_id += 1;
        local_adj.push(Vec::new());
        let (a, b) = local_edges[rng.random_range(0..local_edges.len())];
        join(x, a, &mut local_adj, &mut local_edges);
        join(x, b, &mut local_adj, &mut local_edges);
        if rng.random_bool(density) {
            let (hinge, other) = if rng.random_bool(0.5) { (a, b) } else { (b, a) };
            let choices = &local_adj[hinge];
            let c = choices[rng.random_range(0..choices.len())];
            if c != x && c != other {
                join(x, c, &mut local_adj, &mut local_edges);
            }
        }
    }
    edges.extend(local_edges.into_iter().map(|(a, b)| (global[a], global[b])));
}

/// One locally connected block on `n >= 2` vertices, grown from an edge.
pub fn gen_locally_connected_block(n: usize, density: f64, seed: u64) -> Result<Graph> {
    let spec = GenSpec::new(Family::LocallyConnectedBlocks, n, density, seed);
    spec.expect(Family::LocallyConnectedBlocks)?;
    if n < 2 {
        return Err(Error::PreconditionViolated("a block needs two vertices".into()));
    }
    let mut rng = spec.rng(STREAM_BLOCKS);
    let mut edges = Vec::new();
    let mut next = 1;
    grow_block(0, &mut next, n - 1, density, &mut rng, &mut edges);
    let perm = random_permutation(n, &mut spec.rng(STREAM_LABELS));
    let g = Graph::from_edges(n, edges)?.relabel(&perm);
    if !is_locally_connected(&g).0 {
        return Err(Error::VerificationFailed("block is not locally connected".into()));
    }
    Ok(g)
}

/// Locally connected blocks glued into a random block tree. Each block
/// takes a uniform number of the remaining vertices and hangs from a
/// uniform existing vertex; `density` is the per-vertex chance of an extra
/// chord inside its block.
pub fn gen_locally_connected_blocks(spec: &GenSpec) -> Result<Graph> {
    spec.expect(Family::LocallyConnectedBlocks)?;
    let n = spec.n;
    if n == 0 {
        return Err(Error::PreconditionViolated("need at least one vertex".into()));
    }
    let mut rng = spec.rng(STREAM_BLOCKS);
    let mut edges = Vec::new();
    let mut next = 1;
    while next < n {
        let extra = rng.random_range(1..=n - next);
        let start = if next == 1 { 0 } else { rng.random_range(0..next) };
        grow_block(start, &mut next, extra, spec.density, &mut rng, &mut edges);
    }
    let perm = random_permutation(n, &mut spec.rng(STREAM_LABELS));
    let g = Graph::from_edges(n, edges)?.relabel(&perm);
    if !blocks_locally_connected(&g)? {
        return Err(Error::VerificationFailed("a block is not locally connected".into()));
    }
    Ok(g)
}

/// Random recursive spanning tree plus every other pair with probability
/// `density`.
pub fn gen_connected_random(spec: &GenSpec) -> Result<Graph> {
    spec.expect(Family::ConnectedRandom)?;
    guard("pairwise generator vertex count", spec.n, PAIRWISE_LIMIT)?;
    let n = spec.n;
    let parent = random_parents(n, &mut spec.rng(STREAM_TREE));
    let mut rng = spec.rng(STREAM_EDGES);
    let mut edges: Vec<(VertexId, VertexId)> = parent
        .iter()
        .enumerate()
        .filter_map(|(v, p)| p.map(|p| (p, v)))
        .collect();
    for (v, &pv) in parent.iter().enumerate() {
        for u in 0..v {
            if pv != Some(u) && rng.random_bool(spec.density) {
                edges.push((u, v));
            }
        }
    }
    let perm = random_permutation(n, &mut spec.rng(STREAM_LABELS));
    Ok(Graph::from_edges(n, edges)?.relabel(&perm))
}
