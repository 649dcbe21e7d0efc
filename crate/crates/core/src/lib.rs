//! Linear-time 3-colouring of dually chordal graphs whose blocks are
//! locally connected, with recognition, block structure, seeded generators
//! and brute-force oracles to check it all.

pub mod cli;
pub mod coloring;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod properties;
pub mod recognition;
pub mod structure;

pub use coloring::{
    three_color, three_color_checked, three_color_components, three_color_randomized,
    validate_coloring, Coloring, ThreeColoring,
};
pub use error::{Error, Result};
pub use graph::{Graph, VertexId};
pub use recognition::{
    build_compatible_tree, find_mno, is_dually_chordal, verify_compatible_tree,
    MaxNeighbourhoodOrdering, SpanningTree,
};
pub use structure::{blocks, blocks_locally_connected, find_k4, is_locally_connected};
