use crate::coloring::Coloring;
use crate::error::{guard, Result};
use crate::graph::{Graph, VertexId};

/// Vertex limit for [`brute_force_k_colorable`].
pub const BRUTE_FORCE_LIMIT: usize = 20;
/// Vertex limit for [`chromatic_number`].
pub const CHROMATIC_LIMIT: usize = 14;

/// Exact k-colourability by backtracking.
///
/// Vertices are visited in a static order where each vertex has as many
/// already-visited neighbours as possible. A vertex may only open colour
/// `c + 1` when colours `1..=c` are already in use, which removes the
/// colour-permutation symmetry.
pub fn brute_force_k_colorable(g: &Graph, k: usize) -> Result<Option<Coloring>> {
    guard("brute-force colouring vertex count", g.n(), BRUTE_FORCE_LIMIT)?;
    let n = g.n();
    if n == 0 {
        return Ok(Some(Coloring::new(Vec::new())));
    }
    if k == 0 {
        return Ok(None);
    }
    let k = k.min(n);
    let order = connectivity_order(g);
    let mut colors = vec![0u8; n];
    if search(g, &order, 0, k as u8, 0, &mut colors) {
        Ok(Some(Coloring::new(colors)))
    } else {
        Ok(None)
    }
}

fn search(g: &Graph, order: &[VertexId], pos: usize, k: u8, used: u8, colors: &mut [u8]) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    let mut forbidden = 0u32;
    for &w in g.neighbors(v) {
        forbidden |= 1 << colors[w];
    }
    let top = (used + 1).min(k);
    for c in 1..=top {
        if forbidden & (1 << c) != 0 {
            continue;
        }
        colors[v] = c;
        if search(g, order, pos + 1, k, used.max(c), colors) {
            return true;
        }
    }
    colors[v] = 0;
    false
}

/// Greedy order maximising back-connections, restarted per component.
fn connectivity_order(g: &Graph) -> Vec<VertexId> {
    let n = g.n();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        placed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            links[w] += 1;
        }
    }
    order
}

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    guard("chromatic number vertex count", g.n(), CHROMATIC_LIMIT)?;
    for k in 0..=g.n() {
        if brute_force_k_colorable(g, k)?.is_some() {
            return Ok(k);
        }
    }
    unreachable!("every graph is n-colourable")
}
