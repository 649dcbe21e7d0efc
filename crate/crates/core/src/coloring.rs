//! Linear-time 3-colouring for graphs whose blocks are locally connected.
//!
//! [`three_color`] keeps three FIFO queues of uncoloured vertices, keyed by
//! how many colours are still available to them (three, two, at most one).
//! It repeatedly colours a vertex from the lowest non-empty queue with its
//! smallest available colour and strikes that colour from the uncoloured
//! neighbours. The two lower queues are intrusive doubly linked lists over
//! per-vertex `prev`/`next` arrays, so every queue move is O(1). Nothing
//! ever enters the top queue, so it is kept implicitly as the untouched
//! vertices in label order behind a cursor. A full run is O(n + m).
//!
//! On graphs whose blocks are locally connected the result is a colouring
//! iff one exists. On other inputs the returned colouring is still proper,
//! but a "not 3-colourable" verdict may be spurious.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::structure::locally_connected_block_violation;

/// Proper vertex colouring with colours numbered from 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<u8>,
}

impl Coloring {
    pub fn new(colors: Vec<u8>) -> Self {
        Coloring { colors }
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn color(&self, v: VertexId) -> u8 {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Largest colour in use.
    pub fn num_colors(&self) -> usize {
        self.colors.iter().copied().max().unwrap_or(0) as usize
    }

    /// Colours renamed in order of first appearance.
    pub fn canonical(&self) -> Vec<u8> {
        let mut rename = [0u8; 256];
        let mut next = 0u8;
        self.colors
            .iter()
            .map(|&c| {
                if rename[c as usize] == 0 {
                    next += 1;
                    rename[c as usize] = next;
                }
                rename[c as usize]
            })
            .collect()
    }

    pub fn same_up_to_renaming(&self, other: &Coloring) -> bool {
        self.colors.len() == other.colors.len() && self.canonical() == other.canonical()
    }
}

/// Outcome of a 3-colouring attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThreeColoring {
    Colored(Coloring),
    /// The algorithm reached `stuck` with no colour left.
    NotThreeColorable { stuck: VertexId },
    /// Only from [`three_color_checked`]: `vertex` lies in a block that is
    /// not locally connected.
    NotApplicable { vertex: VertexId },
}

impl ThreeColoring {
    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            ThreeColoring::Colored(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_colored(&self) -> bool {
        matches!(self, ThreeColoring::Colored(_))
    }
}

/// True iff `c` assigns every vertex a colour in `1..=k` and no edge is
/// monochromatic.
pub fn validate_coloring(g: &Graph, c: &Coloring, k: u8) -> bool {
    c.len() == g.n()
        && c.colors().iter().all(|&x| (1..=k).contains(&x))
        && g.edges().all(|(u, v)| c.color(u) != c.color(v))
}

/// BFS bipartition with colours 1 and 2, or `None` if an odd cycle exists.
/// Every component is handled.
pub fn two_color(g: &Graph) -> Option<Coloring> {
    let mut colors = vec![0u8; g.n()];
    let mut queue = std::collections::VecDeque::new();
    for s in 0..g.n() {
        if colors[s] != 0 {
            continue;
        }
        colors[s] = 1;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if colors[w] == 0 {
                    colors[w] = 3 - colors[v];
                    queue.push_back(w);
                } else if colors[w] == colors[v] {
                    return None;
                }
            }
        }
    }
    Some(Coloring::new(colors))
}

const NIL: u32 = u32::MAX;
const FULL: u8 = 0b111;
/// Set in a vertex state byte once the vertex is coloured.
const DONE: u8 = 0b1000_0000;

/// Queue index for a colour mask: 0 for at most one colour, 1 for two,
/// 2 for three.
#[inline]
fn queue_of(avail: u8) -> usize {
    (avail.count_ones() as usize).saturating_sub(1)
}

/// Working state: available colours per vertex and the three queues.
///
/// A vertex's queue is a function of its colour mask, so the hot per-edge
/// check reads a single byte; the list links are only touched when a vertex
/// changes queue, at most twice per vertex.
struct ColorState {
    /// Available colour mask, plus [`DONE`].
    state: Vec<u8>,
    prev: Vec<u32>,
    next: Vec<u32>,
    head: [u32; 2],
    tail: [u32; 2],
    len: [usize; 3],
    /// No vertex below this index is still in the top queue.
    cursor: usize,
}

impl ColorState {
    fn new(n: usize) -> Self {
        assert!(n < NIL as usize, "vertex count exceeds the queue index range");
        ColorState {
            state: vec![FULL; n],
            prev: vec![NIL; n],
            next: vec![NIL; n],
            head: [NIL; 2],
            tail: [NIL; 2],
            len: [0, 0, n],
            cursor: 0,
        }
    }

    #[inline]
    fn avail(&self, v: VertexId) -> u8 {
        self.state[v] & FULL
    }

    fn push_back(&mut self, q: usize, v: VertexId) {
        let t = self.tail[q];
        self.prev[v] = t;
        self.next[v] = NIL;
        match t {
            NIL => self.head[q] = v as u32,
            t => self.next[t as usize] = v as u32,
        }
        self.tail[q] = v as u32;
        self.len[q] += 1;
    }

    /// Takes `v`, currently in queue `q`, out of it.
    fn unlink(&mut self, q: usize, v: VertexId) {
        if q < 2 {
            let (p, n) = (self.prev[v], self.next[v]);
            match p {
                NIL => self.head[q] = n,
                p => self.next[p as usize] = n,
            }
            match n {
                NIL => self.tail[q] = p,
                n => self.prev[n as usize] = p,
            }
        }
        self.len[q] -= 1;
    }

    /// Removes and returns a vertex from the lowest non-empty queue; `pick`
    /// chooses its position within that queue (0 is the front).
    fn pop_min(&mut self, pick: &mut impl FnMut(usize) -> usize) -> Option<VertexId> {
        let q = (0..3).find(|&q| self.len[q] > 0)?;
        let offset = match self.len[q] {
            1 => 0,
            len => pick(len),
        };
        let v = if q < 2 {
            let mut v = self.head[q];
            for _ in 0..offset {
                v = self.next[v as usize];
            }
            v as usize
        } else {
            while self.state[self.cursor] != FULL {
                self.cursor += 1;
            }
            (self.cursor..self.state.len())
                .filter(|&v| self.state[v] == FULL)
                .nth(offset)
                .unwrap()
        };
        self.unlink(q, v);
        self.state[v] |= DONE;
        Some(v)
    }

    #[inline]
    fn strike(&mut self, w: VertexId, color_bit: u8) {
        let s = self.state[w];
        if s & (DONE | color_bit) != color_bit {
            return;
        }
        let avail = s & !color_bit;
        self.state[w] = avail;
        let (from, to) = (queue_of(s), queue_of(avail));
        if from != to {
            self.unlink(from, w);
            self.push_back(to, w);
        }
    }

    fn min_uncolored_queue(&self) -> Option<usize> {
        self.state
            .iter()
            .filter(|&&s| s & DONE == 0)
            .map(|&s| queue_of(s))
            .min()
    }
}

/// One iteration of the colouring loop, as recorded by [`three_color_trace`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep {
    pub vertex: VertexId,
    /// Number of colours available to `vertex` when it was selected.
    pub available: u8,
    /// Smallest queue index over all uncoloured vertices at selection time.
    pub min_queue: usize,
}

/// The colouring loop. In a connected graph every vertex after the first
/// has a coloured neighbour when it is selected, so a second pick from the
/// top queue means the graph is disconnected.
fn run<P>(g: &Graph, mut pick: P, mut trace: Option<&mut Vec<TraceStep>>) -> Result<ThreeColoring>
where
    P: FnMut(usize) -> usize,
{
    let mut st = ColorState::new(g.n());
    loop {
        let min_queue = trace.as_ref().and_then(|_| st.min_uncolored_queue());
        let fresh = st.len[0] + st.len[1] == 0;
        let Some(v) = st.pop_min(&mut pick) else {
            break;
        };
        if fresh && st.len[2] + 1 < g.n() {
            return Err(Error::Disconnected);
        }
        if let (Some(t), Some(min_queue)) = (trace.as_deref_mut(), min_queue) {
            t.push(TraceStep {
                vertex: v,
                available: st.avail(v).count_ones() as u8,
                min_queue,
            });
        }
        let avail = st.avail(v);
        if avail == 0 {
            // the verdict is only promised for connected graphs
            require_connected(g)?;
            return Ok(ThreeColoring::NotThreeColorable { stuck: v });
        }
        let bit = avail & avail.wrapping_neg();
        st.state[v] = DONE | bit;
        for &w in g.neighbors(v) {
            st.strike(w, bit);
        }
    }
    let colors = st.state.iter().map(|&s| (s & FULL).trailing_zeros() as u8 + 1).collect();
    Ok(ThreeColoring::Colored(Coloring::new(colors)))
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

/// Runs the queue-based 3-colouring on a connected graph. Never returns
/// [`ThreeColoring::NotApplicable`].
pub fn three_color(g: &Graph) -> Result<ThreeColoring> {
    run(g, |_| 0, None)
}

/// Like [`three_color`], but each pop takes a uniformly random member of the
/// lowest non-empty queue instead of its front.
pub fn three_color_randomized<R: Rng>(g: &Graph, rng: &mut R) -> Result<ThreeColoring> {
    run(g, |len| rng.random_range(0..len), None)
}

/// [`three_color`] with a record of every selection.
pub fn three_color_trace(g: &Graph) -> Result<(ThreeColoring, Vec<TraceStep>)> {
    let mut steps = Vec::with_capacity(g.n());
    let out = run(g, |_| 0, Some(&mut steps))?;
    Ok((out, steps))
}

/// Checks that every block is locally connected before colouring.
pub fn three_color_checked(g: &Graph) -> Result<ThreeColoring> {
    require_connected(g)?;
    if let Some(vertex) = locally_connected_block_violation(g)? {
        return Ok(ThreeColoring::NotApplicable { vertex });
    }
    run(g, |_| 0, None)
}

/// Colours each connected component on its own and merges the results.
/// The first failing component decides the outcome.
pub fn three_color_components(g: &Graph, checked: bool) -> Result<ThreeColoring> {
    let mut colors = vec![0u8; g.n()];
    for comp in g.components() {
        let (h, map) = g.induced_subgraph(&comp);
        let out = if checked {
            three_color_checked(&h)?
        } else {
            three_color(&h)?
        };
        match out {
            ThreeColoring::Colored(c) => {
                for (i, &v) in map.iter().enumerate() {
                    colors[v] = c.color(i);
                }
            }
            ThreeColoring::NotThreeColorable { stuck } => {
                return Ok(ThreeColoring::NotThreeColorable { stuck: map[stuck] })
            }
            ThreeColoring::NotApplicable { vertex } => {
                return Ok(ThreeColoring::NotApplicable { vertex: map[vertex] })
            }
        }
    }
    Ok(ThreeColoring::Colored(Coloring::new(colors)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn two_triangles() -> Graph {
        Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
    }

    #[test]
    fn triangle_gets_three_colours() {
        let out = three_color(&Graph::complete(3)).unwrap();
        assert_eq!(out.coloring().unwrap().colors(), &[1, 2, 3]);
    }

    #[test]
    fn k4_and_w5_fail() {
        assert!(matches!(
            three_color(&Graph::complete(4)).unwrap(),
            ThreeColoring::NotThreeColorable { .. }
        ));
        assert!(!three_color(&Graph::wheel(5)).unwrap().is_colored());
    }

    #[test]
    fn w4_hub_one_colour_rim_alternates() {
        let g = Graph::wheel(4);
        let out = three_color(&g).unwrap();
        let c = out.coloring().unwrap();
        assert!(validate_coloring(&g, c, 3));
        assert_eq!(c.color(0), c.color(2));
        assert_eq!(c.color(1), c.color(3));
        assert!(c.color(4) != c.color(0) && c.color(4) != c.color(1));
    }

    #[test]
    fn disconnected_rejected() {
        assert_eq!(three_color(&Graph::empty(2)), Err(Error::Disconnected));
        assert_eq!(three_color_checked(&Graph::empty(2)), Err(Error::Disconnected));
    }

    #[test]
    fn checked_variant() {
        assert!(matches!(
            three_color_checked(&Graph::cycle(6)).unwrap(),
            ThreeColoring::NotApplicable { .. }
        ));
        let g = two_triangles();
        let out = three_color_checked(&g).unwrap();
        assert!(validate_coloring(&g, out.coloring().unwrap(), 3));
        assert!(matches!(
            three_color_checked(&Graph::complete(4)).unwrap(),
            ThreeColoring::NotThreeColorable { .. }
        ));
    }

    #[test]
    fn component_driver() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        let out = three_color_components(&g, true).unwrap();
        assert!(validate_coloring(&g, out.coloring().unwrap(), 3));
    }

    #[test]
    fn validation() {
        let k3 = Graph::complete(3);
        assert!(validate_coloring(&k3, &Coloring::new(vec![1, 2, 3]), 3));
        assert!(!validate_coloring(&k3, &Coloring::new(vec![1, 1, 2]), 3));
        assert!(!validate_coloring(&k3, &Coloring::new(vec![1, 2, 3]), 2));
        assert!(!validate_coloring(&k3, &Coloring::new(vec![1, 2]), 3));
        assert!(validate_coloring(&Graph::path(3), &Coloring::new(vec![1, 2, 1]), 2));
    }

    #[test]
    fn bipartition() {
        assert!(two_color(&Graph::path(4)).is_some());
        assert!(two_color(&Graph::complete(3)).is_none());
        let c6 = Graph::cycle(6);
        assert!(validate_coloring(&c6, &two_color(&c6).unwrap(), 2));
    }

    #[test]
    fn odd_cycle_outside_contract_is_never_improper() {
        // C7 has no locally connected block; any colouring produced is still proper
        let g = Graph::cycle(7);
        if let ThreeColoring::Colored(c) = three_color(&g).unwrap() {
            assert!(validate_coloring(&g, &c, 3));
        }
    }

    #[test]
    fn trace_pops_from_minimal_queue() {
        let g = Graph::wheel(6);
        let (_, steps) = three_color_trace(&g).unwrap();
        assert_eq!(steps.len(), g.n());
        for s in steps {
            assert_eq!(queue_of((1u8 << s.available) - 1), s.min_queue);
        }
    }

    #[test]
    fn randomized_tiebreak_same_up_to_renaming() {
        let g = Graph::wheel(6);
        let base = three_color(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let other = three_color_randomized(&g, &mut rng).unwrap();
            assert!(base
                .coloring()
                .unwrap()
                .same_up_to_renaming(other.coloring().unwrap()));
        }
    }

    #[test]
    fn canonical_renaming() {
        let a = Coloring::new(vec![3, 1, 3, 2]);
        let b = Coloring::new(vec![2, 3, 2, 1]);
        assert_eq!(a.canonical(), vec![1, 2, 1, 3]);
        assert!(a.same_up_to_renaming(&b));
        assert!(!a.same_up_to_renaming(&Coloring::new(vec![1, 1, 2, 3])));
    }
}
