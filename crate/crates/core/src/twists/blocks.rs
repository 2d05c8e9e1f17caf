use std::collections::{BTreeSet, VecDeque};

use petgraph::graph::NodeIndex;
use petgraph::visit::EdgeRef;
use serde::Serialize;

use crate::construction::ChamberGraph;

use super::TwistError;

/// The chambers reachable from `side` without crossing a wall of type
/// `edge_type`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub edge_type: String,
    pub side: usize,
    pub chambers: BTreeSet<usize>,
}

impl Block {
    pub fn is_proper(&self, g: &ChamberGraph) -> bool {
        self.chambers.len() < g.node_count()
    }
}

/// Wall types that occur on some edge of the chamber graph, sorted.
pub fn edge_types(g: &ChamberGraph) -> Vec<String> {
    let types: BTreeSet<String> = g.graph().edge_weights().map(|e| e.ty.clone()).collect();
    types.into_iter().collect()
}

/// The `(e, v)`-block: the component of `v` once walls of type `e` are
/// removed.
pub fn blocks(g: &ChamberGraph, edge_type: &str, side: usize) -> Result<Block, TwistError> {
    if !g.graph().edge_weights().any(|e| e.ty == edge_type) {
        return Err(TwistError::UnknownType(edge_type.to_string()));
    }
    if side >= g.node_count() {
        return Err(TwistError::UnknownChamber(side));
    }
    let mut chambers = BTreeSet::from([side]);
    let mut queue = VecDeque::from([side]);
    while let Some(x) = queue.pop_front() {
        for e in g.graph().edges(NodeIndex::new(x)) {
            if e.weight().ty == edge_type {
                continue;
            }
            let y = if e.source().index() == x { e.target().index() } else { e.source().index() };
            if chambers.insert(y) {
                queue.push_back(y);
            }
        }
    }
    Ok(Block { edge_type: edge_type.to_string(), side, chambers })
}

/// The distinct `(e, v)`-blocks over all `v`, ordered by least chamber.
pub fn all_blocks(g: &ChamberGraph, edge_type: &str) -> Result<Vec<Block>, TwistError> {
    let mut out: Vec<Block> = Vec::new();
    for v in 0..g.node_count() {
        if out.iter().any(|b| b.chambers.contains(&v)) {
            continue;
        }
        out.push(blocks(g, edge_type, v)?);
    }
    Ok(out)
}

/// Whether the chamber graph is a tree, counting parallel edges and loops.
pub fn is_tree(g: &ChamberGraph) -> bool {
    g.is_connected() && g.edge_count() + 1 == g.node_count()
}
