use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::coxeter::{CoxeterSystem, GenSet, Word};

use super::basic::CosetReps;
use super::{Cell, CellType, ConstructionError, GluedComplex, GluedKind};

fn spherical_subsets(sys: &CoxeterSystem) -> Vec<GenSet> {
    let mut out = vec![GenSet::EMPTY];
    out.extend(sys.nerve().simplices().map(|s| s.iter().copied().collect::<GenSet>()));
    out.sort_by_key(|t| (t.len(), t.bits()));
    out
}

fn type_id(sys: &CoxeterSystem, t: GenSet) -> String {
    let names: Vec<&str> = t.iter().map(|s| sys.label(s)).collect();
    format!("{{{}}}", names.join(","))
}

/// The Davis complex `Σ(W, S)` over the ball of the given radius: one cell
/// per spherical coset `w W_T` lying entirely in the ball, of dimension
/// `|T|`, ordered by inclusion.
pub fn davis_complex(
    sys: &CoxeterSystem,
    radius: Option<usize>,
    cap: usize,
) -> Result<GluedComplex, ConstructionError> {
    let ball = sys.enumerate_ball(radius, cap)?;
    let full = ball.is_complete();
    let subsets = spherical_subsets(sys);
    let types: Vec<CellType> = subsets
        .iter()
        .map(|&t| CellType { id: type_id(sys, t), dim: t.len(), codim: t.len(), mirror_set: t })
        .collect();
    let mut reps = CosetReps::new(sys);
    let mut cosets: HashMap<(usize, Word), Vec<Word>> = HashMap::new();
    let mut cells = Vec::new();
    let mut lookup = HashMap::new();
    for (ty, &t) in subsets.iter().enumerate() {
        let order = sys.parabolic_order(t).expect("spherical") as usize;
        let distinct: BTreeSet<Word> = ball.elements().iter().map(|w| reps.rep(w, t)).collect();
        for rep in distinct {
            let coset = sys.coset_elements(&rep, t, order)?;
            if coset.iter().all(|w| ball.contains(w)) {
                lookup.insert((ty, rep.clone()), cells.len());
                cells.push(Cell { rep: rep.clone(), ty, dim: t.len(), complete: true });
                cosets.insert((ty, rep), coset);
            }
        }
    }
    let mut faces = Vec::new();
    for (upper, cell) in cells.iter().enumerate() {
        let t = subsets[cell.ty];
        let coset = &cosets[&(cell.ty, cell.rep.clone())];
        for (lower_ty, &u) in subsets.iter().enumerate() {
            if u == t || !u.is_subset(t) {
                continue;
            }
            let lowers: BTreeSet<Word> = coset.iter().map(|w| reps.rep(w, u)).collect();
            for rep in lowers {
                faces.push((lookup[&(lower_ty, rep)], upper));
            }
        }
    }
    if !full {
        // A cell's star is complete when every spherical coset through it
        // made it into the complex.
        for cell in cells.iter_mut() {
            let t = subsets[cell.ty];
            cell.complete = subsets.iter().enumerate().filter(|(_, &big)| t.is_subset(big)).all(|(ty, &big)| {
                let rep = reps.rep(&cell.rep, big);
                lookup.contains_key(&(ty, rep))
            });
        }
    }
    Ok(GluedComplex::assemble(GluedKind::Davis, sys.labels().to_vec(), types, cells, faces, radius, full))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub name: String,
    pub passed: bool,
    /// How many cells (or vertices) the property was checked on.
    pub checked: usize,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaReport {
    pub checks: Vec<PropertyCheck>,
}

impl SigmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&PropertyCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check(name: &str, checked: usize, witnesses: Vec<String>) -> PropertyCheck {
    PropertyCheck { name: name.to_string(), passed: witnesses.is_empty(), checked, witnesses }
}

/// Checks the defining properties of the Davis complex on a (possibly
/// truncated) `Σ`: the 1-skeleton is the Cayley graph, each cell of type `T`
/// has the face numbers of the Coxeter polytope of `W_T`, each interior
/// vertex link is isomorphic to `L(W, S)`, and vertex sets of cells are
/// exactly the spherical cosets.
pub fn verify_sigma_properties(sigma: &GluedComplex, sys: &CoxeterSystem) -> Result<SigmaReport, ConstructionError> {
    if sigma.kind() != GluedKind::Davis {
        return Err(ConstructionError::WrongKind(sigma.kind()));
    }
    let fmt = |w: &Word| sys.format_word(w);
    let vertex_ty = sigma.type_index("{}").ok_or_else(|| ConstructionError::Invalid("no vertex type".into()))?;
    let vertices: BTreeMap<Word, usize> =
        sigma.cells_of_type(vertex_ty).map(|i| (sigma.cell(i).rep.clone(), i)).collect();
    let vertex_set = |c: usize| -> BTreeSet<Word> {
        if sigma.cell(c).ty == vertex_ty {
            return BTreeSet::from([sigma.cell(c).rep.clone()]);
        }
        sigma.faces_of(c).filter(|&f| sigma.cell(f).ty == vertex_ty).map(|f| sigma.cell(f).rep.clone()).collect()
    };

    // (a) Cayley graph.
    let mut bad = Vec::new();
    let mut edges_seen: BTreeSet<(Word, usize)> = BTreeSet::new();
    let edge_cells: Vec<usize> = (0..sigma.len()).filter(|&c| sigma.cell(c).dim == 1).collect();
    for &e in &edge_cells {
        let cell = sigma.cell(e);
        let s = sigma.types()[cell.ty].mirror_set.iter().next().expect("edge type has one generator");
        let expected = BTreeSet::from([cell.rep.clone(), sys.right_multiply(&cell.rep, s)]);
        if vertex_set(e) != expected {
            bad.push(format!("edge {} of type {}", fmt(&cell.rep), sys.label(s)));
        }
        edges_seen.insert((cell.rep.clone(), s));
    }
    for v in vertices.keys() {
        for s in 0..sys.rank() {
            let vs = sys.right_multiply(v, s);
            if vertices.contains_key(&vs) {
                let low = if v < &vs { v.clone() } else { vs.clone() };
                if !edges_seen.contains(&(low, s)) {
                    bad.push(format!("missing edge {} -- {}", fmt(v), fmt(&vs)));
                }
            }
        }
    }
    let cayley = check("cayley_graph", vertices.len() + edge_cells.len(), bad);

    // (b) Face numbers of each cell.
    let mut bad = Vec::new();
    for c in 0..sigma.len() {
        let cell = sigma.cell(c);
        let t = sigma.types()[cell.ty].mirror_set;
        let order_t = sys.parabolic_order(t).unwrap_or(0);
        let mut counts: BTreeMap<usize, u128> = BTreeMap::new();
        for f in sigma.faces_of(c) {
            *counts.entry(sigma.cell(f).ty).or_default() += 1;
        }
        for (ty, u) in sigma.types().iter().enumerate() {
            if ty == cell.ty || !u.mirror_set.is_subset(t) {
                continue;
            }
            let expected = order_t / sys.parabolic_order(u.mirror_set).unwrap_or(1);
            let got = counts.get(&ty).copied().unwrap_or(0);
            if got != expected {
                bad.push(format!(
                    "cell {} of type {} has {got} faces of type {}, expected {expected}",
                    fmt(&cell.rep),
                    sigma.types()[cell.ty].id,
                    u.id
                ));
            }
        }
    }
    let polytopes = check("coxeter_polytope_faces", sigma.len(), bad);

    // (c) Vertex links.
    let nerve = sys.nerve();
    let mut bad = Vec::new();
    let mut checked = 0;
    for (v, &vc) in &vertices {
        if !sigma.cell(vc).complete {
            continue;
        }
        checked += 1;
        let cofaces: Vec<usize> = sigma.cofaces_of(vc).collect();
        let link_vertices: Vec<usize> = cofaces.iter().copied().filter(|&c| sigma.cell(c).dim == 1).collect();
        let pos: HashMap<usize, usize> = link_vertices.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let simplices: Vec<Vec<usize>> = cofaces
            .iter()
            .map(|&c| {
                if sigma.cell(c).dim == 1 {
                    vec![pos[&c]]
                } else {
                    sigma.faces_of(c).filter_map(|f| pos.get(&f).copied()).collect()
                }
            })
            .filter(|s: &Vec<usize>| !s.is_empty())
            .collect();
        let labels = link_vertices.iter().map(|&c| sigma.types()[sigma.cell(c).ty].id.clone()).collect();
        let ok = SimplicialComplex::from_simplices(labels, simplices)
            .map(|link| link.is_isomorphic(&nerve))
            .unwrap_or(false);
        if !ok {
            bad.push(fmt(v));
        }
    }
    let links = check("vertex_links", checked, bad);

    // (d) Vertex sets are exactly the spherical cosets.
    let mut bad = Vec::new();
    let mut seen: HashMap<BTreeSet<Word>, usize> = HashMap::new();
    for c in 0..sigma.len() {
        let cell = sigma.cell(c);
        let t = sigma.types()[cell.ty].mirror_set;
        let order = sys.parabolic_order(t).unwrap_or(0) as usize;
        let coset: BTreeSet<Word> = sys.coset_elements(&cell.rep, t, order.max(1))?.into_iter().collect();
        let verts = vertex_set(c);
        if verts != coset {
            bad.push(format!("cell {} of type {} has the wrong vertex set", fmt(&cell.rep), sigma.types()[cell.ty].id));
        }
        if let Some(&other) = seen.get(&verts) {
            bad.push(format!("cells {c} and {other} share a vertex set"));
        }
        seen.insert(verts, c);
    }
    let cosets = check("spherical_cosets", sigma.len(), bad);

    Ok(SigmaReport { checks: vec![cayley, polytopes, links, cosets] })
}
