use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use crate::coxeter::{CoxeterSystem, GenSet, Order, Word};

use super::{Cell, ConstructionError, GluedComplex, GluedKind};

pub type Perm = Vec<usize>;

/// `(p * q)[i] = p[q[i]]`: apply `q` first.
fn compose(p: &Perm, q: &Perm) -> Perm {
    q.iter().map(|&i| p[i]).collect()
}

fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// A homomorphism from `W` to the symmetric group on `0..degree`, given by
/// the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationAction {
    degree: usize,
    images: Vec<Perm>,
}

impl PermutationAction {
    /// Checks that every image is a permutation and that the images satisfy
    /// all Coxeter relations of `sys`.
    pub fn new(sys: &CoxeterSystem, images: Vec<Perm>) -> Result<Self, ConstructionError> {
        let bad = |msg: String| Err(ConstructionError::NotAnAction(msg));
        if images.len() != sys.rank() {
            return bad(format!("{} generator images for {} generators", images.len(), sys.rank()));
        }
        let degree = images.first().map_or(0, Vec::len);
        for (s, p) in images.iter().enumerate() {
            if p.len() != degree {
                return bad(format!("image of {} has degree {}, expected {degree}", sys.label(s), p.len()));
            }
            let mut seen = vec![false; degree];
            for &i in p {
                if i >= degree || std::mem::replace(&mut seen[i], true) {
                    return bad(format!("image of {} is not a permutation", sys.label(s)));
                }
            }
        }
        let id = identity(degree);
        for s in 0..sys.rank() {
            for t in s..sys.rank() {
                let Order::Finite(m) = sys.m(s, t) else {
                    continue;
                };
                let st = compose(&images[s], &images[t]);
                let mut power = id.clone();
                for _ in 0..m {
                    power = compose(&power, &st);
                }
                if power != id {
                    return bad(format!("({}{})^{m} is not the identity", sys.label(s), sys.label(t)));
                }
            }
        }
        Ok(PermutationAction { degree, images })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn image(&self, w: &Word) -> Perm {
        w.letters().iter().fold(identity(self.degree), |acc, &s| compose(&acc, &self.images[s]))
    }

    pub fn generator_image(&self, s: usize) -> &Perm {
        &self.images[s]
    }

    /// The group generated by the images of `t`, by closure.
    pub fn subgroup(&self, t: GenSet) -> Vec<Perm> {
        let id = identity(self.degree);
        let mut seen = BTreeMap::from([(id.clone(), ())]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for s in t.iter() {
                let q = compose(&p, &self.images[s]);
                if seen.insert(q.clone(), ()).is_none() {
                    queue.push_back(q);
                }
            }
        }
        seen.into_keys().collect()
    }

    /// The image group `ρ(W)`.
    pub fn image_group(&self) -> Vec<Perm> {
        self.subgroup(GenSet::full(self.images.len()))
    }

    /// The regular representation of a finite `W` on its elements (ordered
    /// ShortLex), acting by left multiplication.
    pub fn regular(sys: &CoxeterSystem, cap: usize) -> Result<Self, ConstructionError> {
        let elements = sys.enumerate_ball(None, cap)?.into_elements();
        let pos: HashMap<&Word, usize> = elements.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let images = (0..sys.rank())
            .map(|s| {
                elements
                    .iter()
                    .map(|w| sys.multiply(&Word::generator(s), w).map(|sw| pos[&sw]))
                    .collect::<Result<Perm, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        PermutationAction::new(sys, images)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    /// `|ρ(W)|`, the index of the kernel.
    pub group_order: usize,
    pub chambers: usize,
    /// True when `|ρ(W_T)| = |W_T|` for every cell type, i.e. the kernel
    /// meets no cell stabiliser nontrivially.
    pub free_on_cells: bool,
    /// Always `"unchecked"`: torsion-freeness of the kernel is not decided.
    pub torsion_freeness: String,
}

/// The quotient of `U(W, X)` by the kernel `Γ` of a permutation action.
///
/// Cells over a stratum `σ` with mirror set `T` correspond to cosets of
/// `ρ(W_T)` in `ρ(W)`. The ball `u` was built on must surject onto `ρ(W)`.
pub fn quotient_complex(
    u: &GluedComplex,
    sys: &CoxeterSystem,
    action: &PermutationAction,
) -> Result<(GluedComplex, QuotientReport), ConstructionError> {
    if u.kind() != GluedKind::Basic {
        return Err(ConstructionError::WrongKind(u.kind()));
    }
    let group = action.image_group();
    let mut reached: Vec<Perm> = u.chamber_cells().map(|c| action.image(&u.cell(c).rep)).collect();
    reached.sort();
    reached.dedup();
    if reached.len() < group.len() {
        return Err(ConstructionError::InsufficientRadius {
            radius: u.radius().unwrap_or(0),
            reached: reached.len(),
            order: group.len(),
        });
    }

    let mut subgroups: HashMap<GenSet, Vec<Perm>> = HashMap::new();
    let mut free_on_cells = true;
    for ty in u.types() {
        let h = subgroups.entry(ty.mirror_set).or_insert_with(|| action.subgroup(ty.mirror_set));
        if sys.parabolic_order(ty.mirror_set) != Some(h.len() as u128) {
            free_on_cells = false;
        }
    }
    // Coset gH is keyed by its least element.
    let coset_key = |g: &Perm, t: GenSet| -> Perm {
        subgroups[&t].iter().map(|h| compose(g, h)).min().expect("subgroup contains the identity")
    };

    let mut cells: Vec<Cell> = Vec::new();
    let mut lookup: HashMap<(usize, Perm), usize> = HashMap::new();
    let mut image_of = Vec::with_capacity(u.len());
    for c in 0..u.len() {
        let cell = u.cell(c);
        let key = coset_key(&action.image(&cell.rep), u.types()[cell.ty].mirror_set);
        let q = *lookup.entry((cell.ty, key)).or_insert_with(|| {
            cells.push(Cell { rep: cell.rep.clone(), ty: cell.ty, dim: cell.dim, complete: true });
            cells.len() - 1
        });
        if cell.rep < cells[q].rep {
            cells[q].rep = cell.rep.clone();
        }
        image_of.push(q);
    }
    let faces = u.faces().iter().map(|&(a, b)| (image_of[a], image_of[b])).collect();
    let quotient = GluedComplex::assemble(
        GluedKind::Quotient,
        u.generators().to_vec(),
        u.types().to_vec(),
        cells,
        faces,
        u.radius(),
        true,
    );
    let report = QuotientReport {
        group_order: group.len(),
        chambers: quotient.chamber_cells().count(),
        free_on_cells,
        torsion_freeness: "unchecked".to_string(),
    };
    Ok((quotient, report))
}
