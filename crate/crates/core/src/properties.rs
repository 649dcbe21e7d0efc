//! Per-graph structural checks, each cross-validating a fast routine or a
//! structural claim against the oracles. Used by `dchordal check` and the
//! test suites.

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{
    brute_force_k_colorable, find_chordless_cycles, is_clique_chordal, is_perfect_desk,
    maximal_cliques, wheel_hub, CycleWitness,
};
use crate::recognition::{
    build_compatible_tree_detailed, find_mno, max_closed_path_len, verify_compatible_tree,
    MaxNeighbourhoodOrdering, SpanningTree, TreeReport, TreeSource,
};
use crate::structure::{blocks_locally_connected, construction_order, find_k4, is_locally_connected};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Property {
    /// Compatible tree conditions on the built tree.
    #[value(name = "tree")]
    Tree,
    /// 3-colourable iff perfect and K4-free, for dually chordal graphs.
    #[value(name = "theorem3")]
    Colorability,
    /// Every long induced cycle of a K4-free dually chordal graph is a wheel
    /// rim avoiding the tree.
    #[value(name = "lemma3")]
    Wheels,
    /// Clique-chordal graphs have locally connected blocks.
    #[value(name = "lemma4")]
    CliqueChordalBlocks,
    /// Locally connected graphs admit a construction order.
    #[value(name = "construction")]
    Construction,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::Tree,
        Property::Colorability,
        Property::Wheels,
        Property::CliqueChordalBlocks,
        Property::Construction,
    ];

    pub fn from_name(name: &str) -> Option<Property> {
        Property::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn name(self) -> &'static str {
        match self {
            Property::Tree => "tree",
            Property::Colorability => "theorem3",
            Property::Wheels => "lemma3",
            Property::CliqueChordalBlocks => "lemma4",
            Property::Construction => "construction",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub property: &'static str,
    /// False when the graph falls outside the property's hypothesis; the
    /// property then holds vacuously.
    pub applicable: bool,
    pub holds: bool,
    pub details: serde_json::Value,
}

/// An ordering, or `None` for graphs that are disconnected or not dually
/// chordal.
fn ordering(g: &Graph) -> Result<Option<MaxNeighbourhoodOrdering>> {
    match find_mno(g) {
        Err(Error::Disconnected) => Ok(None),
        other => other,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCheck {
    pub tree: SpanningTree,
    pub source: TreeSource,
    pub report: TreeReport,
    pub k4_free: bool,
    /// Largest `|P[u, v]|` over the edges.
    pub max_closed_path: usize,
}

impl TreeCheck {
    pub fn holds(&self) -> bool {
        self.report.all() && (!self.k4_free || self.max_closed_path <= 3)
    }
}

/// Builds a compatible tree and verifies it; `None` if `g` is not dually
/// chordal.
pub fn check_tree(g: &Graph) -> Result<Option<TreeCheck>> {
    let Some(mno) = ordering(g)? else {
        return Ok(None);
    };
    let (tree, source) = build_compatible_tree_detailed(g, &mno)?;
    let report = verify_compatible_tree(g, &tree, &maximal_cliques(g)?);
    Ok(Some(TreeCheck {
        max_closed_path: max_closed_path_len(g, &tree),
        k4_free: find_k4(g).is_none(),
        tree,
        source,
        report,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorabilityCheck {
    pub three_colorable: bool,
    pub has_k4: bool,
    pub perfect: bool,
}

impl ColorabilityCheck {
    pub fn holds(&self) -> bool {
        self.three_colorable == (!self.has_k4 && self.perfect)
    }
}

/// Compares exhaustive 3-colourability with "perfect and K4-free".
pub fn check_colorability(g: &Graph) -> Result<ColorabilityCheck> {
    Ok(ColorabilityCheck {
        three_colorable: brute_force_k_colorable(g, 3)?.is_some(),
        has_k4: find_k4(g).is_some(),
        perfect: is_perfect_desk(g)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WheelsCheck {
    pub cycles: usize,
    /// Cycles without a hub or with an edge in the tree.
    pub failures: Vec<CycleWitness>,
}

/// Examines every induced cycle of length at least 4 against `t`.
pub fn check_wheels(g: &Graph, t: &SpanningTree) -> Result<WheelsCheck> {
    let cycles = find_chordless_cycles(g, 4)?;
    let mut failures = Vec::new();
    for c in &cycles {
        let w = wheel_hub(g, c, t)?;
        if w.hub.is_none() || !w.no_cycle_edge_in_tree {
            failures.push(c.clone());
        }
    }
    Ok(WheelsCheck {
        cycles: cycles.len(),
        failures,
    })
}

fn report(p: Property, applicable: bool, holds: bool, details: serde_json::Value) -> PropertyReport {
    PropertyReport {
        property: p.name(),
        applicable,
        holds: holds || !applicable,
        details,
    }
}

fn one_based(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

pub fn check_property(g: &Graph, p: Property) -> Result<PropertyReport> {
    let out = match p {
        Property::Tree => match check_tree(g)? {
            None => report(p, false, true, json!({"reason": "not dually chordal"})),
            Some(c) => report(
                p,
                true,
                c.holds(),
                json!({
                    "source": format!("{:?}", c.source).to_lowercase(),
                    "path_condition": c.report.path_condition,
                    "clique_subtrees": c.report.clique_subtrees,
                    "closed_paths_are_cliques": c.report.closed_paths_are_cliques,
                    "k4_free": c.k4_free,
                    "max_closed_path": c.max_closed_path,
                    "tree_edges": c.tree.edges().map(|(a, b)| [a + 1, b + 1]).collect::<Vec<_>>(),
                }),
            ),
        },
        Property::Colorability => {
            if ordering(g)?.is_none() {
                report(p, false, true, json!({"reason": "not dually chordal"}))
            } else {
                let c = check_colorability(g)?;
                report(
                    p,
                    true,
                    c.holds(),
                    json!({"three_colorable": c.three_colorable, "has_k4": c.has_k4, "perfect": c.perfect}),
                )
            }
        }
        Property::Wheels => match check_tree(g)? {
            None => report(p, false, true, json!({"reason": "not dually chordal"})),
            Some(c) if !c.k4_free => report(p, false, true, json!({"reason": "contains K4"})),
            Some(c) => {
                let w = check_wheels(g, &c.tree)?;
                let failures: Vec<Vec<usize>> = w.failures.iter().map(|f| one_based(&f.vertices)).collect();
                report(
                    p,
                    true,
                    w.failures.is_empty(),
                    json!({"induced_cycles": w.cycles, "failures": failures}),
                )
            }
        },
        Property::CliqueChordalBlocks => {
            if g.n() == 0 || !g.is_connected() || !is_clique_chordal(g)? {
                report(p, false, true, json!({"reason": "not a connected clique-chordal graph"}))
            } else {
                let ok = blocks_locally_connected(g)?;
                report(p, true, ok, json!({"blocks_locally_connected": ok}))
            }
        }
        Property::Construction => {
            if g.n() < 2 || !g.is_connected() || !is_locally_connected(g).0 {
                report(p, false, true, json!({"reason": "not a connected locally connected graph"}))
            } else {
                match construction_order(g) {
                    Some(o) => {
                        let ok = o.is_valid_for(g);
                        report(p, true, ok, json!({"order": one_based(&o.order), "valid": ok}))
                    }
                    None => report(p, true, false, json!({"reason": "greedy order stalled"})),
                }
            }
        }
    };
    Ok(out)
}
