use std::collections::{BTreeSet, HashMap};

use crate::coxeter::{CoxeterSystem, GenSet, Word};
use crate::mirrored::MirroredComplex;

use super::{check_input, Cell, CellType, ConstructionError, GluedComplex, GluedKind};

/// Memoised minimal coset representatives `min(w W_T)`.
pub(crate) struct CosetReps<'a> {
    sys: &'a CoxeterSystem,
    memo: HashMap<(GenSet, Word), Word>,
}

impl<'a> CosetReps<'a> {
    pub fn new(sys: &'a CoxeterSystem) -> Self {
        CosetReps { sys, memo: HashMap::new() }
    }

    pub fn rep(&mut self, w: &Word, t: GenSet) -> Word {
        if t.is_empty() {
            return w.clone();
        }
        if let Some(r) = self.memo.get(&(t, w.clone())) {
            return r.clone();
        }
        let r = self.sys.min_coset_representative(w, t);
        self.memo.insert((t, w.clone()), r.clone());
        r
    }
}

/// Builds `U(W, X)` over the ball of the given radius (`None` = all of `W`,
/// which must then be finite within `cap`).
///
/// A chamber cell is tagged incomplete when some neighbour `ws` falls outside
/// the ball; another cell is incomplete when some chamber containing it does.
pub fn build_u(
    sys: &CoxeterSystem,
    mx: &MirroredComplex,
    radius: Option<usize>,
    cap: usize,
) -> Result<GluedComplex, ConstructionError> {
    check_input(sys, mx)?;
    let ball = sys.enumerate_ball(radius, cap)?;
    let full = ball.is_complete();
    let x = mx.complex();
    let types: Vec<CellType> = (0..x.len())
        .map(|i| CellType {
            id: x.id(i).to_string(),
            dim: x.dim(i),
            codim: x.codim(i),
            mirror_set: mx.mirror_sets()[i],
        })
        .collect();

    let mut reps = CosetReps::new(sys);
    let mut cells = Vec::new();
    let mut lookup: HashMap<(usize, Word), usize> = HashMap::new();
    for (ty, t) in types.iter().enumerate() {
        let distinct: BTreeSet<Word> = ball.elements().iter().map(|w| reps.rep(w, t.mirror_set)).collect();
        for rep in distinct {
            let complete = full || star_in_ball(sys, &ball, &rep, t.mirror_set)?;
            lookup.insert((ty, rep.clone()), cells.len());
            cells.push(Cell { rep, ty, dim: t.dim, complete });
        }
    }

    let mut faces = Vec::new();
    for (upper, cell) in cells.iter().enumerate() {
        for lower_ty in x.below(cell.ty) {
            let rep = reps.rep(&cell.rep, types[lower_ty].mirror_set);
            let lower = lookup[&(lower_ty, rep)];
            faces.push((lower, upper));
        }
    }
    Ok(GluedComplex::assemble(GluedKind::Basic, sys.labels().to_vec(), types, cells, faces, radius, full))
}

fn star_in_ball(
    sys: &CoxeterSystem,
    ball: &crate::coxeter::Ball,
    rep: &Word,
    t: GenSet,
) -> Result<bool, ConstructionError> {
    if t.is_empty() {
        return Ok(sys.all_generators().iter().all(|s| ball.contains(&sys.right_multiply(rep, s))));
    }
    let order = sys.parabolic_order(t).expect("mirror sets are spherical") as usize;
    let coset = sys.coset_elements(rep, t, order)?;
    Ok(coset.iter().all(|w| ball.contains(w)))
}
