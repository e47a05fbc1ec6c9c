//! JSON documents for the command line and test harness.
//!
//! Field order in each struct is the key order in the output.

use serde::Serialize;

use crate::geometry::Direction;
use crate::reeb::{ReebGraph, ReebNode};

#[derive(Clone, Debug, Serialize)]
pub struct ReebExport<'a> {
    pub direction: Direction,
    pub nodes: &'a [ReebNode],
    pub edges: &'a [(usize, usize)],
    pub l: usize,
    pub b: usize,
    pub h: usize,
    pub morse: bool,
}

impl<'a> From<&'a ReebGraph> for ReebExport<'a> {
    fn from(g: &'a ReebGraph) -> Self {
        ReebExport {
            direction: g.direction,
            nodes: &g.nodes,
            edges: &g.edges,
            l: g.leaves,
            b: g.branches,
            h: g.holes,
            morse: g.morse,
        }
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("export types always serialize");
    text.push('\n');
    text
}
