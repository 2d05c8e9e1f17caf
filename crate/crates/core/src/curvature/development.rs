use std::collections::BTreeSet;

use serde::Serialize;

use crate::cog::{compose, Backend, ComplexOfGroups, Perm};
use crate::complex::SimplicialComplex;

use super::CurvatureError;

/// Coset spaces larger than this are reported as not enumerable.
pub const MAX_COSETS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DevVertex {
    /// The lift of the vertex itself.
    Center,
    /// The `index`-th coset of `psi_a(G_{i(a)})` for an edge `a` into the
    /// vertex.
    Coset { edge: usize, index: usize },
    /// An edge out of the vertex.
    Upper { edge: usize },
}

/// The star of the lift of a vertex in the development: the flag complex of
/// the coset poset, with the center joined to everything.
#[derive(Clone, Debug)]
pub struct LocalDevelopment {
    vertex: usize,
    vertices: Vec<DevVertex>,
    star: SimplicialComplex,
}

impl LocalDevelopment {
    pub fn vertex(&self) -> usize {
        self.vertex
    }

    pub fn vertices(&self) -> &[DevVertex] {
        &self.vertices
    }

    pub fn star(&self) -> &SimplicialComplex {
        &self.star
    }

    pub fn coset_count(&self) -> usize {
        self.vertices.iter().filter(|v| matches!(v, DevVertex::Coset { .. })).count()
    }

    pub fn upper_count(&self) -> usize {
        self.vertices.iter().filter(|v| matches!(v, DevVertex::Upper { .. })).count()
    }

    /// The link of the center.
    pub fn link(&self) -> SimplicialComplex {
        self.star.link(&[0]).0
    }

    /// Collapses each coset vertex to the edge it comes from. For finite local
    /// groups these are the orbits of the action of the vertex group.
    pub fn orbit_quotient(&self) -> BTreeSet<Vec<DevVertex>> {
        let collapse = |v: &DevVertex| match v {
            DevVertex::Coset { edge, .. } => DevVertex::Coset { edge: *edge, index: 0 },
            other => other.clone(),
        };
        self.star
            .simplices()
            .map(|s| {
                let mut img: Vec<DevVertex> = s.iter().map(|&v| collapse(&self.vertices[v])).collect();
                img.sort();
                img.dedup();
                img
            })
            .collect()
    }
}

/// Echelon basis of a sublattice of `Z^n`, pivots strictly increasing.
#[derive(Clone, Debug)]
struct Lattice {
    rows: Vec<(usize, Vec<i64>)>,
}

impl Lattice {
    fn new(mut gens: Vec<Vec<i64>>, n: usize) -> Option<Self> {
        let mut rows = Vec::new();
        for col in 0..n {
            loop {
                let live: Vec<usize> = (0..gens.len()).filter(|&i| gens[i][col] != 0).collect();
                let Some(&p) = live.iter().min_by_key(|&&i| gens[i][col].unsigned_abs()) else {
                    break;
                };
                if live.len() == 1 {
                    let mut row = gens.swap_remove(p);
                    if row[col] < 0 {
                        row.iter_mut().for_each(|x| *x = -*x);
                    }
                    rows.push((col, row));
                    break;
                }
                let pivot = gens[p].clone();
                for &i in &live {
                    if i != p {
                        let q = gens[i][col].div_euclid(pivot[col]);
                        for (x, y) in gens[i].iter_mut().zip(&pivot) {
                            *x = x.checked_sub(q.checked_mul(*y)?)?;
                        }
                    }
                }
            }
        }
        Some(Lattice { rows })
    }

    fn is_full_rank(&self, n: usize) -> bool {
        self.rows.len() == n
    }

    fn diagonal(&self) -> Vec<i64> {
        self.rows.iter().map(|(c, r)| r[*c]).collect()
    }

    fn reduce(&self, v: &[i64]) -> Option<Vec<i64>> {
        let mut v = v.to_vec();
        for (c, row) in &self.rows {
            let q = v[*c].div_euclid(row[*c]);
            for (x, y) in v.iter_mut().zip(row) {
                *x = x.checked_sub(q.checked_mul(*y)?)?;
            }
        }
        Some(v)
    }

    fn contains(&self, v: &[i64]) -> Option<bool> {
        Some(self.reduce(v)?.iter().all(|&x| x == 0))
    }
}

enum Cosets {
    /// Left cosets as sorted element lists.
    Finite(Vec<Vec<Perm>>),
    /// Reduced representatives modulo a full-rank lattice.
    Lattice(Lattice, Vec<Vec<i64>>),
    /// The subgroup is the whole group.
    Whole,
}

impl Cosets {
    fn len(&self) -> usize {
        match self {
            Cosets::Finite(c) => c.len(),
            Cosets::Lattice(_, r) => r.len(),
            Cosets::Whole => 1,
        }
    }
}

fn not_enumerable(cog: &ComplexOfGroups, a: usize, why: &str) -> CurvatureError {
    let e = cog.scwol().edge(a);
    let names = cog.scwol().vertices();
    CurvatureError::NotEnumerable(format!("{} -> {}: {why}", names[e.source], names[e.target]))
}

fn cosets(cog: &ComplexOfGroups, a: usize) -> Result<Cosets, CurvatureError> {
    let target = cog.group(cog.scwol().edge(a).target);
    let images = cog.map(a).images();
    match target.backend() {
        Backend::Finite(g) => {
            let gens: Vec<Perm> = images.iter().map(|w| g.eval(w)).collect();
            let sub = g.subgroup(&gens);
            if g.order() / sub.len() > MAX_COSETS {
                return Err(not_enumerable(cog, a, "too many cosets"));
            }
            if sub.len() == g.order() {
                return Ok(Cosets::Whole);
            }
            let mut seen = BTreeSet::new();
            let mut out = Vec::new();
            for x in g.elements() {
                if seen.contains(x) {
                    continue;
                }
                let mut coset: Vec<Perm> = sub.iter().map(|h| compose(x, h)).collect();
                coset.sort();
                seen.extend(coset.iter().cloned());
                out.push(coset);
            }
            Ok(Cosets::Finite(out))
        }
        Backend::FreeAbelian(n) => {
            let n = *n;
            let gens = images.iter().map(|w| target.abelian_coordinates(w).expect("free abelian")).collect();
            let lattice = Lattice::new(gens, n).ok_or_else(|| not_enumerable(cog, a, "integer overflow"))?;
            if !lattice.is_full_rank(n) {
                return Err(not_enumerable(cog, a, "image has infinite index"));
            }
            let diag = lattice.diagonal();
            let count = diag.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d as usize)).unwrap_or(usize::MAX);
            if count > MAX_COSETS {
                return Err(not_enumerable(cog, a, "too many cosets"));
            }
            if count == 1 {
                return Ok(Cosets::Whole);
            }
            let mut reps = Vec::with_capacity(count);
            for mut k in 0..count {
                let mut v = vec![0i64; n];
                for (j, &d) in diag.iter().enumerate() {
                    v[lattice.rows[j].0] = (k % d as usize) as i64;
                    k /= d as usize;
                }
                reps.push(v);
            }
            Ok(Cosets::Lattice(lattice, reps))
        }
        Backend::Formal(_) => {
            // Index one is visible when every generator is hit by a letter.
            let hit: BTreeSet<usize> = images.iter().filter(|w| w.len() == 1).map(|w| w.letters()[0].gen).collect();
            if hit.len() == target.generator_count() {
                Ok(Cosets::Whole)
            } else {
                Err(not_enumerable(cog, a, "formal presentation"))
            }
        }
    }
}

/// Whether coset `i` of `lo` lies in coset `j` of `hi`.
fn coset_inside(lo: &Cosets, i: usize, hi: &Cosets, j: usize) -> Result<bool, CurvatureError> {
    let overflow = || CurvatureError::NotEnumerable("integer overflow".into());
    Ok(match (lo, hi) {
        (_, Cosets::Whole) => true,
        (Cosets::Whole, _) => false,
        (Cosets::Finite(a), Cosets::Finite(b)) => a[i].iter().all(|x| b[j].binary_search(x).is_ok()),
        (Cosets::Lattice(la, ra), Cosets::Lattice(lb, rb)) => {
            let diff: Vec<i64> = ra[i].iter().zip(&rb[j]).map(|(x, y)| x - y).collect();
            let mut sub = true;
            for (_, row) in &la.rows {
                sub &= lb.contains(row).ok_or_else(overflow)?;
            }
            sub && lb.contains(&diff).ok_or_else(overflow)?
        }
        _ => false,
    })
}

/// Checks an edge-into-vertex pair `a = a' b`.
fn factors_through(cog: &ComplexOfGroups, a: usize, a2: usize) -> bool {
    cog.scwol().composites().iter().any(|(&(x, _), &c)| x == a2 && c == a)
}

/// The local development at vertex `v`.
///
/// Vertices are the lift of `v`, one vertex per coset `g psi_a(G_{i(a)})` for
/// each edge `a` into `v`, and one per edge out of `v`. Cosets are ordered by
/// inclusion along factorisations `a = a' b`, edges out of `v` by
/// factorisation `c' = d c`, and simplices are the chains.
pub fn local_development(cog: &ComplexOfGroups, v: usize) -> Result<LocalDevelopment, CurvatureError> {
    if !cog.is_simple() {
        return Err(CurvatureError::NotSimple);
    }
    let scwol = cog.scwol();
    if v >= scwol.vertex_count() {
        return Err(CurvatureError::Invalid(format!("vertex {v} out of range")));
    }
    let incoming: Vec<usize> = scwol.incoming(v).collect();
    let outgoing: Vec<usize> = scwol.outgoing(v).collect();
    let spaces: Vec<Cosets> = incoming.iter().map(|&a| cosets(cog, a)).collect::<Result<_, _>>()?;

    let mut vertices = vec![DevVertex::Center];
    let mut labels = vec![scwol.vertices()[v].clone()];
    for (k, &a) in incoming.iter().enumerate() {
        let source = &scwol.vertices()[scwol.edge(a).source];
        for index in 0..spaces[k].len() {
            vertices.push(DevVertex::Coset { edge: a, index });
            labels.push(format!("{source}#{index}"));
        }
    }
    for &c in &outgoing {
        vertices.push(DevVertex::Upper { edge: c });
        labels.push(scwol.vertices()[scwol.edge(c).target].clone());
    }

    let slot = |a: usize| incoming.iter().position(|&x| x == a).expect("incoming edge");
    let n = vertices.len();
    let mut less = vec![vec![false; n]; n];
    for x in 0..n {
        for y in 0..n {
            less[x][y] = match (&vertices[x], &vertices[y]) {
                (DevVertex::Center, DevVertex::Upper { .. }) | (DevVertex::Coset { .. }, DevVertex::Center) => true,
                (DevVertex::Coset { .. }, DevVertex::Upper { .. }) => true,
                (&DevVertex::Coset { edge: a, index: i }, &DevVertex::Coset { edge: b, index: j }) => {
                    a != b && factors_through(cog, a, b) && coset_inside(&spaces[slot(a)], i, &spaces[slot(b)], j)?
                }
                (&DevVertex::Upper { edge: c }, &DevVertex::Upper { edge: d }) => {
                    scwol.composites().iter().any(|(&(_, y), &z)| y == c && z == d)
                }
                _ => false,
            };
        }
    }

    // Chains are the cliques of the comparability graph of a poset.
    let comparable = |x: usize, y: usize| less[x][y] || less[y][x];
    let mut chains = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).rev().map(|x| vec![x]).collect();
    while let Some(c) = stack.pop() {
        let last = *c.last().expect("nonempty");
        let mut extended = false;
        for y in (last + 1..n).rev() {
            if c.iter().all(|&x| comparable(x, y)) {
                let mut bigger = c.clone();
                bigger.push(y);
                stack.push(bigger);
                extended = true;
            }
        }
        if !extended {
            chains.push(c);
        }
    }
    let star = SimplicialComplex::from_maximal(labels, chains).expect("chains are valid simplices");
    Ok(LocalDevelopment { vertex: v, vertices, star })
}

/// The star of `v` in the scwol itself: the local development with every
/// coset space collapsed to a point.
pub fn scwol_star(cog: &ComplexOfGroups, v: usize) -> BTreeSet<Vec<DevVertex>> {
    let scwol = cog.scwol();
    let incoming: Vec<usize> = scwol.incoming(v).collect();
    let outgoing: Vec<usize> = scwol.outgoing(v).collect();
    let mut verts = vec![DevVertex::Center];
    verts.extend(incoming.iter().map(|&edge| DevVertex::Coset { edge, index: 0 }));
    verts.extend(outgoing.iter().map(|&edge| DevVertex::Upper { edge }));
    let less = |x: &DevVertex, y: &DevVertex| match (x, y) {
        (DevVertex::Center, DevVertex::Upper { .. }) | (DevVertex::Coset { .. }, DevVertex::Center) => true,
        (DevVertex::Coset { .. }, DevVertex::Upper { .. }) => true,
        (&DevVertex::Coset { edge: a, .. }, &DevVertex::Coset { edge: b, .. }) => a != b && factors_through(cog, a, b),
        (&DevVertex::Upper { edge: c }, &DevVertex::Upper { edge: d }) => {
            scwol.composites().iter().any(|(&(_, y), &z)| y == c && z == d)
        }
        _ => false,
    };
    let n = verts.len();
    let mut out = BTreeSet::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
    while let Some(c) = stack.pop() {
        out.insert(c.iter().map(|&i| verts[i].clone()).collect::<Vec<_>>());
        let last = *c.last().expect("nonempty");
        for y in last + 1..n {
            if c.iter().all(|&x| less(&verts[x], &verts[y]) || less(&verts[y], &verts[x])) {
                let mut bigger = c.clone();
                bigger.push(y);
                stack.push(bigger);
            }
        }
    }
    out.into_iter()
        .map(|mut s| {
            s.sort();
            s
        })
        .collect()
}

/// Index of the image of `psi_a` for finite source and target, by counting.
pub fn finite_index(cog: &ComplexOfGroups, a: usize) -> Option<usize> {
    let e = cog.scwol().edge(a);
    let (Backend::Finite(g), Some(_)) = (cog.group(e.target).backend(), cog.group(e.source).order()) else {
        return None;
    };
    let gens: Vec<Perm> = cog.map(a).images().iter().map(|w| g.eval(w)).collect();
    Some(g.order() / g.subgroup(&gens).len())
}
