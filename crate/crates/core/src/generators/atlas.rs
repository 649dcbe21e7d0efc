//! Isomorphism-free enumeration of small graphs.
//!
//! Graphs on up to 8 vertices are encoded as the upper triangle of their
//! adjacency matrix in one `u32`. Canonical codes minimise that word over
//! all relabellings that respect an iterated degree refinement, which is
//! isomorphism-invariant, so two graphs share a code iff they are
//! isomorphic.

use std::collections::HashSet;

use crate::error::{guard, Result};
use crate::graph::Graph;

/// Largest vertex count the atlas will enumerate.
pub const ATLAS_LIMIT: usize = 7;

fn pair_bit(i: usize, j: usize) -> u32 {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    // row-major upper triangle without the diagonal
    1 << (b * (b - 1) / 2 + a)
}

fn has(code: u32, i: usize, j: usize) -> bool {
    code & pair_bit(i, j) != 0
}

fn to_graph(n: usize, code: u32) -> Graph {
    let edges = (0..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(i, j)| has(code, i, j));
    Graph::from_edges(n, edges).unwrap()
}

/// Ordered cells of the stable degree refinement.
fn refined_cells(n: usize, code: u32) -> Vec<Vec<usize>> {
    let mut colour: Vec<usize> = (0..n)
        .map(|v| (0..n).filter(|&w| w != v && has(code, v, w)).count())
        .collect();
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n)
                    .filter(|&w| w != v && has(code, v, w))
                    .map(|w| colour[w])
                    .collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = signatures
            .iter()
            .map(|s| distinct.binary_search(s).unwrap())
            .collect();
        let before = colour.iter().collect::<HashSet<_>>().len();
        colour = next;
        if distinct.len() == before {
            break;
        }
    }
    let classes = colour.iter().max().map_or(0, |&c| c + 1);
    let mut cells = vec![Vec::new(); classes];
    for v in 0..n {
        cells[colour[v]].push(v);
    }
    cells.retain(|c| !c.is_empty());
    cells
}

fn canonical_code(n: usize, code: u32) -> u32 {
    let cells = refined_cells(n, code);
    let mut best = u32::MAX;
    let mut position = vec![0usize; n];
    let mut cells = cells;
    permute_cells(&mut cells, 0, 0, &mut position, &mut |pos| {
        let mut c = 0u32;
        for j in 0..n {
            for i in 0..j {
                if has(code, i, j) {
                    c |= pair_bit(pos[i], pos[j]);
                }
            }
        }
        best = best.min(c);
    });
    best
}

/// Assigns positions cell by cell, trying every order inside each cell.
fn permute_cells(
    cells: &mut [Vec<usize>],
    cell: usize,
    offset: usize,
    position: &mut [usize],
    emit: &mut impl FnMut(&[usize]),
) {
    if cell == cells.len() {
        emit(position);
        return;
    }
    let len = cells[cell].len();
    heap_permutations(&mut cells[cell].clone(), len, &mut |perm| {
        for (k, &v) in perm.iter().enumerate() {
            position[v] = offset + k;
        }
        permute_cells(cells, cell + 1, offset + len, position, emit);
    });
}

fn heap_permutations(items: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k <= 1 {
        f(items);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(items, k - 1, f);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
    heap_permutations(items, k - 1, f);
}

fn all_codes(n: usize) -> Vec<u32> {
    if n <= 1 {
        return vec![0];
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for base in all_codes(n - 1) {
        for subset in 0u32..(1 << (n - 1)) {
            let mut code = base;
            for i in 0..n - 1 {
                if subset >> i & 1 == 1 {
                    code |= pair_bit(i, n - 1);
                }
            }
            let canon = canonical_code(n, code);
            if seen.insert(canon) {
                out.push(canon);
            }
        }
    }
    out.sort_unstable();
    out
}

/// One representative per isomorphism class of graphs on `n` vertices.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    guard("atlas vertex count", n, ATLAS_LIMIT)?;
    Ok(all_codes(n).into_iter().map(|c| to_graph(n, c)).collect())
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(all_graphs(n)?.into_iter().filter(Graph::is_connected).collect())
}

/// Connected graphs on `1..=max_n` vertices.
pub fn connected_graphs_up_to(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(connected_graphs(n)?);
    }
    Ok(out)
}
