use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::coxeter::{CoxeterMatrix, CoxeterSystem, GenSet, Order};

use super::{CurvatureError, TOLERANCE};

/// Length of an edge of a piecewise spherical complex.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeLength {
    /// `pi - pi/m`, with exact cosine `-cos(pi/m)`.
    Coxeter(u32),
    Radians(f64),
}

impl EdgeLength {
    pub fn radians(self) -> f64 {
        match self {
            EdgeLength::Coxeter(m) => PI - PI / m as f64,
            EdgeLength::Radians(r) => r,
        }
    }

    pub fn cosine(self) -> f64 {
        match self {
            EdgeLength::Coxeter(2) => 0.0,
            EdgeLength::Coxeter(m) => -(PI / m as f64).cos(),
            EdgeLength::Radians(r) if (r - PI / 2.0).abs() <= TOLERANCE => 0.0,
            EdgeLength::Radians(r) => r.cos(),
        }
    }
}

/// A simplicial complex with a length on every edge.
#[derive(Clone, Debug)]
pub struct MetricNerve {
    complex: SimplicialComplex,
    lengths: BTreeMap<(usize, usize), EdgeLength>,
}

impl MetricNerve {
    /// Every edge of `complex` needs a length; extra keys are rejected.
    pub fn new(
        complex: SimplicialComplex,
        lengths: BTreeMap<(usize, usize), EdgeLength>,
    ) -> Result<Self, CurvatureError> {
        let edges: BTreeSet<(usize, usize)> = complex.edges().collect();
        for &(a, b) in lengths.keys() {
            if !edges.contains(&(a.min(b), a.max(b))) {
                return Err(CurvatureError::Invalid(format!("length given for non-edge ({a}, {b})")));
            }
        }
        let lengths: BTreeMap<(usize, usize), EdgeLength> =
            lengths.into_iter().map(|((a, b), l)| ((a.min(b), a.max(b)), l)).collect();
        for &(a, b) in &edges {
            match lengths.get(&(a, b)) {
                None => return Err(CurvatureError::Invalid(format!("edge ({a}, {b}) has no length"))),
                Some(l) if !(l.radians() > 0.0 && l.radians() < PI) => {
                    return Err(CurvatureError::Invalid(format!("edge ({a}, {b}) has length outside (0, pi)")))
                }
                Some(_) => {}
            }
        }
        Ok(MetricNerve { complex, lengths })
    }

    /// Every edge of length `radians`.
    pub fn uniform(complex: SimplicialComplex, radians: f64) -> Result<Self, CurvatureError> {
        let lengths = complex.edges().map(|e| (e, EdgeLength::Radians(radians))).collect();
        MetricNerve::new(complex, lengths)
    }

    /// The nerve `L(W,S)` with the lengths `pi - pi/m(s,t)`.
    pub fn from_coxeter(sys: &CoxeterSystem) -> Self {
        let complex = sys.nerve();
        let lengths = complex
            .edges()
            .map(|(a, b)| ((a, b), EdgeLength::Coxeter(sys.m(a, b).finite().expect("nerve edges are spherical"))))
            .collect();
        MetricNerve { complex, lengths }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn length(&self, a: usize, b: usize) -> Option<EdgeLength> {
        self.lengths.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn lengths(&self) -> &BTreeMap<(usize, usize), EdgeLength> {
        &self.lengths
    }

    /// True when every length comes from a Coxeter label, so positive
    /// definiteness is decided by classification rather than numerically.
    pub fn is_exact(&self) -> bool {
        self.lengths.values().all(|l| matches!(l, EdgeLength::Coxeter(_)))
    }

    /// Cosine matrix on a vertex set: 1 on the diagonal, `cos l(s,t)` off it.
    pub fn gram(&self, verts: &[usize]) -> DMatrix<f64> {
        DMatrix::from_fn(verts.len(), verts.len(), |i, j| {
            if i == j {
                1.0
            } else {
                self.length(verts[i], verts[j]).map_or(-1.0, |l| l.cosine())
            }
        })
    }

    /// Whether the cosine matrix on `verts` (all pairwise joined) is
    /// positive definite.
    pub fn is_positive_definite(&self, verts: &[usize]) -> bool {
        let exact: Option<Vec<u32>> = verts
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| verts[i + 1..].iter().map(move |&b| (a, b)))
            .map(|(a, b)| match self.length(a, b) {
                Some(EdgeLength::Coxeter(m)) => Some(m),
                _ => None,
            })
            .collect();
        match exact {
            Some(ms) => {
                let n = verts.len();
                let mut matrix = CoxeterMatrix::uniform(n, Order::Infinite);
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        matrix.set(i, j, Order::Finite(ms[k]));
                        k += 1;
                    }
                }
                CoxeterSystem::with_default_labels(matrix).is_spherical(GenSet::full(n))
            }
            None => self.gram(verts).symmetric_eigen().eigenvalues.min() > TOLERANCE,
        }
    }

    /// The first edge shorter than `pi/2`.
    pub fn short_edge(&self) -> Option<((usize, usize), f64)> {
        self.lengths.iter().map(|(&e, l)| (e, l.radians())).find(|&(_, r)| r < PI / 2.0 - TOLERANCE)
    }
}

/// A pairwise-joined vertex set with positive definite cosine matrix that
/// does not span a simplex.
pub fn metric_flag_violation(mn: &MetricNerve) -> Result<Option<Vec<usize>>, CurvatureError> {
    if let Some(((a, b), length)) = mn.short_edge() {
        return Err(CurvatureError::EdgeTooShort { a, b, length });
    }
    let n = mn.complex.vertex_count();
    let mut adj = vec![BTreeSet::new(); n];
    for (a, b) in mn.complex.edges() {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    // Grow cliques in increasing vertex order. A principal submatrix of a
    // positive definite matrix is positive definite, so non-definite cliques
    // need no extension.
    let mut stack: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    stack.reverse();
    while let Some(c) = stack.pop() {
        if c.len() >= 2 {
            if !mn.is_positive_definite(&c) {
                continue;
            }
            if !mn.complex.contains(&c) {
                return Ok(Some(c));
            }
        }
        let last = *c.last().expect("nonempty");
        for v in (last + 1..n).rev() {
            if c.iter().all(|u| adj[*u].contains(&v)) {
                let mut bigger = c.clone();
                bigger.push(v);
                stack.push(bigger);
            }
        }
    }
    Ok(None)
}

pub fn is_metric_flag(mn: &MetricNerve) -> Result<bool, CurvatureError> {
    Ok(metric_flag_violation(mn)?.is_none())
}
