//! Finite abstract simplicial complexes.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::graph::UnGraph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("simplex {0:?} uses a vertex outside 0..{1}")]
    VertexOutOfRange(Vec<usize>, usize),
    #[error("simplex {0:?} repeats a vertex")]
    RepeatedVertex(Vec<usize>),
    #[error("empty simplex")]
    EmptySimplex,
    #[error("face {face:?} of simplex {simplex:?} is missing")]
    MissingFace { simplex: Vec<usize>, face: Vec<usize> },
}

/// A simplicial complex on labelled vertices `0..labels.len()`. Simplices are
/// stored as sorted vertex lists; the empty simplex is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    simplices: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn new(labels: Vec<String>) -> Self {
        SimplicialComplex { labels, simplices: BTreeSet::new() }
    }

    /// Builds a complex from an explicit simplex list, rejecting lists that
    /// are not closed under faces.
    pub fn from_simplices(labels: Vec<String>, simplices: Vec<Vec<usize>>) -> Result<Self, ComplexError> {
        let mut c = SimplicialComplex::new(labels);
        for s in simplices {
            let s = c.normalize(s)?;
            c.simplices.insert(s);
        }
        if let Some((simplex, face)) = c.missing_face() {
            return Err(ComplexError::MissingFace { simplex, face });
        }
        Ok(c)
    }

    /// Builds the closure of the given simplices.
    pub fn from_maximal(labels: Vec<String>, maximal: Vec<Vec<usize>>) -> Result<Self, ComplexError> {
        let mut c = SimplicialComplex::new(labels);
        for s in maximal {
            c.insert_closed(s)?;
        }
        Ok(c)
    }

    fn normalize(&self, mut s: Vec<usize>) -> Result<Vec<usize>, ComplexError> {
        if s.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::RepeatedVertex(s));
        }
        if s.iter().any(|&v| v >= self.labels.len()) {
            return Err(ComplexError::VertexOutOfRange(s, self.labels.len()));
        }
        Ok(s)
    }

    /// Inserts a simplex and all of its faces.
    pub fn insert_closed(&mut self, s: Vec<usize>) -> Result<(), ComplexError> {
        let s = self.normalize(s)?;
        let n = s.len();
        for mask in 1u64..(1u64 << n) {
            let face: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
            self.simplices.insert(face);
        }
        Ok(())
    }

    /// Inserts one sorted simplex without inserting its faces.
    pub(crate) fn insert_simplex_unchecked(&mut self, s: Vec<usize>) {
        debug_assert!(s.windows(2).all(|w| w[0] < w[1]));
        self.simplices.insert(s);
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        let mut v = s.to_vec();
        v.sort_unstable();
        self.simplices.contains(&v)
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Dimension, or `-1` for the empty complex.
    pub fn dimension(&self) -> isize {
        self.simplices.iter().map(|s| s.len() as isize - 1).max().unwrap_or(-1)
    }

    /// Number of simplices of each dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dimension() + 1) as usize];
        for s in &self.simplices {
            f[s.len() - 1] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.simplices.iter().filter(|s| s.len() == 2).map(|s| (s[0], s[1]))
    }

    fn missing_face(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        for s in &self.simplices {
            if s.len() < 2 {
                continue;
            }
            for skip in 0..s.len() {
                let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                if !self.simplices.contains(&face) {
                    return Some((s.clone(), face));
                }
            }
        }
        None
    }

    pub fn is_face_closed(&self) -> bool {
        self.missing_face().is_none()
    }

    /// Flag condition: every set of pairwise adjacent vertices spans a simplex.
    pub fn is_flag(&self) -> bool {
        self.flag_violation().is_none()
    }

    /// A clique that is not a simplex, if any.
    pub fn flag_violation(&self) -> Option<Vec<usize>> {
        let n = self.labels.len();
        let mut adj = vec![BTreeSet::new(); n];
        for (a, b) in self.edges() {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        for s in &self.simplices {
            for v in 0..n {
                if s.contains(&v) || !s.iter().all(|u| adj[v].contains(u)) {
                    continue;
                }
                let mut bigger = s.clone();
                bigger.push(v);
                bigger.sort_unstable();
                if !self.simplices.contains(&bigger) {
                    return Some(bigger);
                }
            }
        }
        None
    }

    /// The link of a simplex, on the vertices that occur in it. Vertices keep
    /// their labels; the returned map sends new indices to old ones.
    pub fn link(&self, simplex: &[usize]) -> (SimplicialComplex, Vec<usize>) {
        let mut sigma = simplex.to_vec();
        sigma.sort_unstable();
        let mut rest: BTreeSet<Vec<usize>> = BTreeSet::new();
        for s in &self.simplices {
            if s.iter().any(|v| sigma.contains(v)) {
                continue;
            }
            let mut joined = s.clone();
            joined.extend_from_slice(&sigma);
            joined.sort_unstable();
            if self.simplices.contains(&joined) || sigma.is_empty() {
                rest.insert(s.clone());
            }
        }
        let verts: Vec<usize> = rest.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let index: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let labels = verts.iter().map(|&v| self.labels[v].clone()).collect();
        let simplices = rest.into_iter().map(|s| s.iter().map(|v| index[v]).collect()).collect();
        (SimplicialComplex { labels, simplices }, verts)
    }

    /// The subcomplex induced on a vertex subset, re-indexed in the given
    /// order.
    pub fn induced(&self, verts: &[usize]) -> SimplicialComplex {
        let index: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let simplices = self
            .simplices
            .iter()
            .filter(|s| s.iter().all(|v| index.contains_key(v)))
            .map(|s| {
                let mut t: Vec<usize> = s.iter().map(|v| index[v]).collect();
                t.sort_unstable();
                t
            })
            .collect();
        SimplicialComplex { labels: verts.iter().map(|&v| self.labels[v].clone()).collect(), simplices }
    }

    /// Combinatorial isomorphism, ignoring labels and vertices that lie in no
    /// simplex. Decided on the face-incidence graph with simplices coloured by
    /// dimension.
    pub fn is_isomorphic(&self, other: &SimplicialComplex) -> bool {
        if self.f_vector() != other.f_vector() {
            return false;
        }
        let a = self.incidence_graph();
        let b = other.incidence_graph();
        petgraph::algo::is_isomorphic_matching(&a, &b, |x, y| x == y, |_, _| true)
    }

    fn incidence_graph(&self) -> UnGraph<usize, ()> {
        let mut g = UnGraph::new_undirected();
        let mut node = BTreeMap::new();
        for s in &self.simplices {
            node.insert(s.clone(), g.add_node(s.len()));
        }
        for s in &self.simplices {
            if s.len() < 2 {
                continue;
            }
            for skip in 0..s.len() {
                let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                if let Some(&f) = node.get(&face) {
                    g.add_edge(node[s], f, ());
                }
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    fn cycle(n: usize) -> SimplicialComplex {
        SimplicialComplex::from_maximal(labels(n), (0..n).map(|i| vec![i, (i + 1) % n]).collect()).unwrap()
    }

    #[test]
    fn face_closure_is_enforced() {
        let err = SimplicialComplex::from_simplices(labels(3), vec![vec![0], vec![1], vec![0, 1, 2]]).unwrap_err();
        assert!(matches!(err, ComplexError::MissingFace { .. }));
        let c = SimplicialComplex::from_maximal(labels(3), vec![vec![2, 0, 1]]).unwrap();
        assert_eq!(c.f_vector(), vec![3, 3, 1]);
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn flagness() {
        let hollow = SimplicialComplex::from_maximal(labels(3), vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert!(!hollow.is_flag());
        assert_eq!(hollow.flag_violation(), Some(vec![0, 1, 2]));
        assert!(cycle(4).is_flag());
        assert!(cycle(5).is_flag());
    }

    #[test]
    fn links() {
        // Cone over a 4-cycle: the link of the apex is the cycle.
        let mut maximal = Vec::new();
        for i in 0..4 {
            maximal.push(vec![4, i, (i + 1) % 4]);
        }
        let cone = SimplicialComplex::from_maximal(labels(5), maximal).unwrap();
        let (lk, verts) = cone.link(&[4]);
        assert_eq!(verts, vec![0, 1, 2, 3]);
        assert!(lk.is_isomorphic(&cycle(4)));
        assert!(!lk.is_isomorphic(&cycle(5)));
        let (lk, _) = cone.link(&[4, 0]);
        assert_eq!(lk.f_vector(), vec![2]);
    }

    #[test]
    fn isomorphism_ignores_labels() {
        let a = cycle(6);
        let b = SimplicialComplex::from_maximal(
            labels(6),
            vec![vec![0, 3], vec![3, 1], vec![1, 4], vec![4, 2], vec![2, 5], vec![5, 0]],
        )
        .unwrap();
        assert!(a.is_isomorphic(&b));
        let two_triangles = SimplicialComplex::from_maximal(
            labels(6),
            vec![vec![0, 1], vec![1, 2], vec![2, 0], vec![3, 4], vec![4, 5], vec![5, 3]],
        )
        .unwrap();
        assert!(!a.is_isomorphic(&two_triangles));
    }
}
