use std::collections::{BTreeMap, BTreeSet};

use petgraph::graph::NodeIndex;
use petgraph::unionfind::UnionFind;

use super::CogError;

/// A directed edge `a` from `i(a)` to `t(a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScwolEdge {
    pub source: usize,
    pub target: usize,
}

/// A small category without loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scwol {
    vertices: Vec<String>,
    edges: Vec<ScwolEdge>,
    /// `(a, b) -> ab` for every composable pair, `t(b) = i(a)`.
    composites: BTreeMap<(usize, usize), usize>,
}

impl Scwol {
    /// Checks that edges join distinct vertices, that the graph is acyclic,
    /// that every composable pair has a composite with the right endpoints,
    /// and that composition is associative.
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<ScwolEdge>,
        composites: BTreeMap<(usize, usize), usize>,
    ) -> Result<Self, CogError> {
        let bad = |m: String| Err(CogError::InvalidScwol(m));
        let n = vertices.len();
        if vertices.iter().collect::<BTreeSet<_>>().len() != n {
            return bad("duplicate vertex name".into());
        }
        for (k, e) in edges.iter().enumerate() {
            if e.source >= n || e.target >= n {
                return bad(format!("edge {k} has an endpoint out of range"));
            }
            if e.source == e.target {
                return bad(format!("edge {k} is a loop"));
            }
        }
        let mut graph = petgraph::graph::DiGraph::<(), ()>::new();
        for _ in 0..n {
            graph.add_node(());
        }
        for e in &edges {
            graph.add_edge(NodeIndex::new(e.source), NodeIndex::new(e.target), ());
        }
        if petgraph::algo::is_cyclic_directed(&graph) {
            return bad("edges contain a directed cycle".into());
        }
        let m = edges.len();
        for (&(a, b), &c) in &composites {
            if a >= m || b >= m || c >= m {
                return bad(format!("composite ({a}, {b}) -> {c} refers to a missing edge"));
            }
            if edges[b].target != edges[a].source {
                return bad(format!("edges {a} and {b} are not composable"));
            }
            if edges[c].source != edges[b].source || edges[c].target != edges[a].target {
                return bad(format!("composite of ({a}, {b}) has the wrong endpoints"));
            }
        }
        for a in 0..m {
            for b in 0..m {
                if edges[b].target == edges[a].source && !composites.contains_key(&(a, b)) {
                    return bad(format!("composable pair ({a}, {b}) has no composite"));
                }
            }
        }
        let s = Scwol { vertices, edges, composites };
        for (a, b, c) in s.composable_triples() {
            if s.compose(s.compose(a, b), c) != s.compose(a, s.compose(b, c)) {
                return bad(format!("composition is not associative on ({a}, {b}, {c})"));
            }
        }
        Ok(s)
    }

    /// The scwol of a poset given by its strict relations `(lower, upper)`:
    /// one edge per relation, from the lower element to the upper one.
    pub fn from_poset(vertices: Vec<String>, strict: &[(usize, usize)]) -> Result<Self, CogError> {
        let mut pairs: Vec<(usize, usize)> = strict.to_vec();
        pairs.sort_unstable();
        pairs.dedup();
        let edges: Vec<ScwolEdge> = pairs.iter().map(|&(l, u)| ScwolEdge { source: l, target: u }).collect();
        let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let mut composites = BTreeMap::new();
        let mut out_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (k, e) in edges.iter().enumerate() {
            out_of.entry(e.source).or_default().push(k);
        }
        for (b, eb) in edges.iter().enumerate() {
            for &a in out_of.get(&eb.target).into_iter().flatten() {
                let c = index
                    .get(&(eb.source, edges[a].target))
                    .copied()
                    .ok_or_else(|| CogError::InvalidScwol(format!("relations are not transitive at edges {a}, {b}")))?;
                composites.insert((a, b), c);
            }
        }
        Scwol::new(vertices, edges, composites)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edges(&self) -> &[ScwolEdge] {
        &self.edges
    }

    pub fn edge(&self, a: usize) -> ScwolEdge {
        self.edges[a]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn composites(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.composites
    }

    /// The composite `ab`; panics if the pair is not composable.
    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.composites[&(a, b)]
    }

    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.composites.keys().copied()
    }

    /// Triples `(a, b, c)` with `(a, b)` and `(b, c)` composable.
    pub fn composable_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for &(a, b) in self.composites.keys() {
            for &(b2, c) in self.composites.range((b, 0)..=(b, usize::MAX)).map(|(k, _)| k) {
                debug_assert_eq!(b, b2);
                out.push((a, b, c));
            }
        }
        out
    }

    pub fn incoming(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&a| self.edges[a].target == v)
    }

    pub fn outgoing(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&a| self.edges[a].source == v)
    }

    /// Checks that `tree` is a spanning tree of the underlying undirected
    /// multigraph.
    pub fn check_spanning_tree(&self, tree: &[usize]) -> Result<(), CogError> {
        let n = self.vertices.len();
        let bad = |m: String| Err(CogError::NotSpanningTree(m));
        let set: BTreeSet<usize> = tree.iter().copied().collect();
        if set.len() != tree.len() {
            return bad("repeated edge".into());
        }
        if let Some(&a) = set.iter().find(|&&a| a >= self.edges.len()) {
            return bad(format!("edge {a} does not exist"));
        }
        let mut uf = UnionFind::new(n);
        for &a in &set {
            if !uf.union(self.edges[a].source, self.edges[a].target) {
                return bad(format!("edge e{a} closes a cycle"));
            }
        }
        if n > 0 && set.len() != n - 1 {
            return bad(format!(
                "{} edges for {} vertices; the scwol is disconnected or the tree is too small",
                set.len(),
                n
            ));
        }
        Ok(())
    }

    /// The spanning tree chosen greedily in edge order.
    pub fn default_spanning_tree(&self) -> Result<Vec<usize>, CogError> {
        let mut uf = UnionFind::new(self.vertices.len());
        let tree: Vec<usize> =
            (0..self.edges.len()).filter(|&a| uf.union(self.edges[a].source, self.edges[a].target)).collect();
        self.check_spanning_tree(&tree)?;
        Ok(tree)
    }

    /// Every spanning tree, by brute force over edge subsets. Returns `None`
    /// if there are more than `cap` candidate subsets.
    pub fn spanning_trees(&self, cap: usize) -> Option<Vec<Vec<usize>>> {
        let m = self.edges.len();
        let k = self.vertices.len().saturating_sub(1);
        if m >= 64 || binomial(m, k).is_none_or(|b| b > cap as u128) {
            return None;
        }
        let mut out = Vec::new();
        let mut subset: Vec<usize> = (0..k).collect();
        if k > m {
            return Some(out);
        }
        loop {
            if self.check_spanning_tree(&subset).is_ok() {
                out.push(subset.clone());
            }
            // Next k-subset in lexicographic order.
            let Some(i) = (0..k).rev().find(|&i| subset[i] < m - k + i) else {
                break;
            };
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
        }
        Some(out)
    }
}

fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let mut r: u128 = 1;
    for i in 0..k.min(n - k) as u128 {
        r = r.checked_mul(n as u128 - i)? / (i + 1);
    }
    Some(r)
}
