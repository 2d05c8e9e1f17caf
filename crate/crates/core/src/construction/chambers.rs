use std::collections::BTreeMap;

use petgraph::dot::{Config, Dot};
use petgraph::graph::{NodeIndex, UnGraph};
use serde::Serialize;

use crate::coxeter::Word;

use super::{ConstructionError, GluedComplex, GluedKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberEdge {
    pub a: usize,
    pub b: usize,
    /// Id of the stratum of `X` the shared wall projects to.
    #[serde(rename = "type")]
    pub ty: String,
    /// The generator whose mirror the wall lies in.
    pub generator: String,
}

/// Chambers and the walls between them, each wall labelled by its type.
#[derive(Clone, Debug)]
pub struct ChamberGraph {
    chambers: Vec<Word>,
    graph: UnGraph<Word, ChamberEdge>,
}

impl ChamberGraph {
    pub fn build(u: &GluedComplex) -> Result<Self, ConstructionError> {
        if u.kind() == GluedKind::Davis {
            return Err(ConstructionError::WrongKind(u.kind()));
        }
        let chambers: Vec<Word> = {
            let mut v: Vec<Word> = u.chamber_cells().map(|c| u.cell(c).rep.clone()).collect();
            v.sort();
            v.dedup();
            v
        };
        let node_of: BTreeMap<&Word, usize> = chambers.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut graph = UnGraph::new_undirected();
        for w in &chambers {
            graph.add_node(w.clone());
        }
        for c in 0..u.len() {
            let cell = u.cell(c);
            let ty = &u.types()[cell.ty];
            if ty.codim != 1 || ty.mirror_set.is_empty() {
                continue;
            }
            let mut ends: Vec<usize> = u
                .cofaces_of(c)
                .filter(|&d| u.types()[u.cell(d).ty].codim == 0)
                .map(|d| node_of[&u.cell(d).rep])
                .collect();
            ends.sort_unstable();
            ends.dedup();
            let generator = u.generators()[ty.mirror_set.iter().next().expect("nonempty")].clone();
            let edge = |a: usize, b: usize| ChamberEdge { a, b, ty: ty.id.clone(), generator: generator.clone() };
            match ends.as_slice() {
                [a, b] => {
                    graph.add_edge(NodeIndex::new(*a), NodeIndex::new(*b), edge(*a, *b));
                }
                // A wall folded onto itself in a quotient.
                [a] if u.kind() == GluedKind::Quotient && cell.complete => {
                    graph.add_edge(NodeIndex::new(*a), NodeIndex::new(*a), edge(*a, *a));
                }
                _ => {}
            }
        }
        Ok(ChamberGraph { chambers, graph })
    }

    pub fn chambers(&self) -> &[Word] {
        &self.chambers
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn edges(&self) -> Vec<ChamberEdge> {
        let mut e: Vec<ChamberEdge> = self.graph.edge_references().map(|e| e.weight().clone()).collect();
        e.sort_by(|x, y| (x.a, x.b, &x.ty).cmp(&(y.a, y.b, &y.ty)));
        e
    }

    pub fn graph(&self) -> &UnGraph<Word, ChamberEdge> {
        &self.graph
    }

    pub fn degree(&self, node: usize) -> usize {
        self.graph.edges(NodeIndex::new(node)).count()
    }

    pub fn neighbours(&self, node: usize) -> Vec<usize> {
        let mut n: Vec<usize> = self.graph.neighbors(NodeIndex::new(node)).map(|i| i.index()).collect();
        n.sort_unstable();
        n
    }

    pub fn is_connected(&self) -> bool {
        petgraph::algo::connected_components(&self.graph) <= 1
    }

    /// Graphviz rendering with the wall type as the edge attribute `type`.
    pub fn to_dot(&self, format_word: impl Fn(&Word) -> String) -> String {
        let edge_attrs = |_: &UnGraph<Word, ChamberEdge>, e: petgraph::graph::EdgeReference<'_, ChamberEdge>| {
            format!("type=\"{}\", generator=\"{}\"", e.weight().ty, e.weight().generator)
        };
        let node_attrs =
            |_: &UnGraph<Word, ChamberEdge>, (_, w): (NodeIndex, &Word)| format!("label=\"{}\"", format_word(w));
        let dot =
            Dot::with_attr_getters(&self.graph, &[Config::EdgeNoLabel, Config::NodeNoLabel], &edge_attrs, &node_attrs);
        format!("{dot:?}")
    }
}
