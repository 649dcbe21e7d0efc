//! DIMACS `.col` reading and writing, and the result object printed by the
//! command line tool.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::coloring::Coloring;
use crate::graph::{Graph, VertexId};

/// Parse errors carry 1-based line numbers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("missing, repeated or malformed \"p edge <n> <m>\" header")]
    BadHeader,
    #[error("line {0}: malformed edge line")]
    BadEdgeLine(usize),
    #[error("line {0}: vertex label out of range")]
    VertexOutOfRange(usize),
    #[error("line {0}: loop edge")]
    LoopEdge(usize),
}

fn parse_header(fields: &[&str]) -> Option<usize> {
    match fields {
        ["p", "edge", n, m] => {
            m.parse::<usize>().ok()?;
            n.parse().ok()
        }
        _ => None,
    }
}

/// Reads `c` comments, one `p edge <n> <m>` header and `e <u> <v>` lines
/// with 1-based labels. The header edge count is not checked; duplicate
/// edges collapse.
pub fn parse_dimacs(text: &str) -> Result<Graph, DimacsError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.first() {
            None | Some(&"c") => {}
            Some(&"p") => {
                if n.is_some() {
                    return Err(DimacsError::BadHeader);
                }
                n = Some(parse_header(&fields).ok_or(DimacsError::BadHeader)?);
            }
            Some(&"e") => {
                let n = n.ok_or(DimacsError::BadHeader)?;
                if fields.len() != 3 {
                    return Err(DimacsError::BadEdgeLine(line_no));
                }
                let label = |s: &str| -> Result<VertexId, DimacsError> {
                    let x: usize = s.parse().map_err(|_| DimacsError::BadEdgeLine(line_no))?;
                    if x == 0 || x > n {
                        return Err(DimacsError::VertexOutOfRange(line_no));
                    }
                    Ok(x - 1)
                };
                let (u, v) = (label(fields[1])?, label(fields[2])?);
                if u == v {
                    return Err(DimacsError::LoopEdge(line_no));
                }
                edges.push((u, v));
            }
            Some(_) => return Err(DimacsError::BadEdgeLine(line_no)),
        }
    }
    let n = n.ok_or(DimacsError::BadHeader)?;
    Ok(Graph::from_edges(n, edges).expect("labels checked above"))
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = String::with_capacity(16 * (g.m() + 1));
    writeln!(out, "p edge {} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Colorable,
    #[serde(rename = "not_3_colorable")]
    Not3Colorable,
    NotApplicable,
    DuallyChordal,
    NotDuallyChordal,
    PropertyHolds,
    PropertyFails,
    Written,
}

impl Verdict {
    pub fn is_positive(self) -> bool {
        matches!(
            self,
            Verdict::Colorable | Verdict::DuallyChordal | Verdict::PropertyHolds | Verdict::Written
        )
    }

    /// 0 for a positive verdict, 1 for a negative one. Usage and parse
    /// errors exit with 2 before any verdict exists.
    pub fn exit_code(self) -> i32 {
        if self.is_positive() {
            0
        } else {
            1
        }
    }
}

/// One run of the command line tool. Fields serialize in declaration order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunResult {
    pub command: String,
    pub input: String,
    pub verdict: Verdict,
    /// 1-based vertex label to colour in `1..=3`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colors: Option<BTreeMap<usize, u8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<serde_json::Value>,
    pub timing_ms: f64,
    pub seed: Option<u64>,
}

impl RunResult {
    pub fn new(command: &str, input: &str, verdict: Verdict) -> Self {
        RunResult {
            command: command.to_string(),
            input: input.to_string(),
            verdict,
            colors: None,
            report: None,
            timing_ms: 0.0,
            seed: None,
        }
    }

    pub fn with_coloring(mut self, c: &Coloring) -> Self {
        self.colors = Some(c.colors().iter().enumerate().map(|(v, &k)| (v + 1, k)).collect());
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }
}

pub fn write_result(r: &RunResult) -> String {
    serde_json::to_string(r).expect("plain data serializes")
}
