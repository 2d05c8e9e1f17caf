//! The basic construction `U(W, X)`, the Davis complex, chamber graphs,
//! Euler characteristics and quotients by kernels of finite actions.
//!
//! Every construction produces a [`GluedComplex`]: a finite poset of cells,
//! each a pair of a coset representative and a cell type. For `U(W, X)` the
//! types are the strata of `X`; for the Davis complex they are the spherical
//! subsets of `S`. Infinite groups are handled by truncating to a word-length
//! ball, and cells whose star is cut off by the truncation are tagged.

mod basic;
mod chambers;
mod davis;
mod export;
mod quotient;

use std::collections::HashMap;

use num_rational::Ratio;
use thiserror::Error;

use crate::coxeter::{CoxeterError, CoxeterSystem, GenSet, Word};
use crate::mirrored::{MirroredComplex, MirroredError};

pub use basic::build_u;
pub use chambers::{ChamberEdge, ChamberGraph};
pub use davis::{davis_complex, verify_sigma_properties, PropertyCheck, SigmaReport};
pub use export::{CellRecord, GluedComplexJson};
pub use quotient::{quotient_complex, PermutationAction, QuotientReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Mirrored(#[from] MirroredError),
    #[error("mirrored complex is not W-finite: stratum {stratum:?} has mirror set {mirror_set:?} generating an infinite group")]
    NotWFinite { stratum: String, mirror_set: Vec<String> },
    #[error(
        "mirrored complex is not nice: codimension-2 stratum {0:?} does not lie in exactly two codimension-1 strata"
    )]
    NotNice(String),
    #[error("complex is truncated at radius {0}; the operation needs the full complex")]
    Truncated(usize),
    #[error("the action does not respect the Coxeter relations: {0}")]
    NotAnAction(String),
    #[error("the ball of radius {radius} reaches {reached} of the {order} elements of the image group")]
    InsufficientRadius { radius: usize, reached: usize, order: usize },
    #[error("operation not available for a {0:?} complex")]
    WrongKind(GluedKind),
    #[error("invalid complex data: {0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GluedKind {
    Basic,
    Davis,
    Quotient,
}

/// A cell type: a stratum of `X`, or a spherical subset for the Davis complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellType {
    pub id: String,
    pub dim: usize,
    pub codim: usize,
    pub mirror_set: GenSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// ShortLex-least element of the coset the cell is indexed by. For a
    /// quotient, the least such word over all preimages in the ball.
    pub rep: Word,
    pub ty: usize,
    pub dim: usize,
    /// False when the truncation cuts off part of the star of this cell.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedComplex {
    kind: GluedKind,
    generators: Vec<String>,
    types: Vec<CellType>,
    cells: Vec<Cell>,
    /// Strict face pairs `(lower, upper)`, sorted.
    faces: Vec<(usize, usize)>,
    radius: Option<usize>,
    full: bool,
    index: HashMap<(usize, Word), usize>,
}

impl GluedComplex {
    pub(crate) fn assemble(
        kind: GluedKind,
        generators: Vec<String>,
        types: Vec<CellType>,
        mut cells: Vec<Cell>,
        faces: Vec<(usize, usize)>,
        radius: Option<usize>,
        full: bool,
    ) -> Self {
        // Canonical order: by codimension, then type, then representative.
        let mut order: Vec<usize> = (0..cells.len()).collect();
        order.sort_by(|&a, &b| {
            let (ca, cb) = (&cells[a], &cells[b]);
            (types[ca.ty].codim, ca.ty, &ca.rep).cmp(&(types[cb.ty].codim, cb.ty, &cb.rep))
        });
        let mut new_index = vec![0; cells.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let mut sorted: Vec<Cell> = Vec::with_capacity(cells.len());
        for &old in &order {
            sorted.push(std::mem::replace(
                &mut cells[old],
                Cell { rep: Word::identity(), ty: 0, dim: 0, complete: false },
            ));
        }
        let mut faces: Vec<(usize, usize)> = faces.into_iter().map(|(a, b)| (new_index[a], new_index[b])).collect();
        faces.sort_unstable();
        faces.dedup();
        let index = sorted.iter().enumerate().map(|(i, c)| ((c.ty, c.rep.clone()), i)).collect();
        GluedComplex { kind, generators, types, cells: sorted, faces, radius, full, index }
    }

    pub fn kind(&self) -> GluedKind {
        self.kind
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn types(&self) -> &[CellType] {
        &self.types
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn faces(&self) -> &[(usize, usize)] {
        &self.faces
    }

    /// The truncation radius, `None` when built over the whole group.
    pub fn radius(&self) -> Option<usize> {
        self.radius
    }

    /// True when no truncation took place.
    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn find(&self, ty: usize, rep: &Word) -> Option<usize> {
        self.index.get(&(ty, rep.clone())).copied()
    }

    pub fn type_index(&self, id: &str) -> Option<usize> {
        self.types.iter().position(|t| t.id == id)
    }

    /// Cells of the given type.
    pub fn cells_of_type(&self, ty: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.cells.len()).filter(move |&i| self.cells[i].ty == ty)
    }

    pub fn count_of_type(&self, ty: usize) -> usize {
        self.cells_of_type(ty).count()
    }

    /// Cells of codimension 0 (the chamber cells).
    pub fn chamber_cells(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.cells.len()).filter(move |&i| self.types[self.cells[i].ty].codim == 0)
    }

    /// Strict faces of a cell.
    pub fn faces_of(&self, upper: usize) -> impl Iterator<Item = usize> + '_ {
        self.faces.iter().filter(move |&&(_, b)| b == upper).map(|&(a, _)| a)
    }

    /// Cells having the given cell as a strict face.
    pub fn cofaces_of(&self, lower: usize) -> impl Iterator<Item = usize> + '_ {
        let start = self.faces.partition_point(|&(a, _)| a < lower);
        self.faces[start..].iter().take_while(move |&&(a, _)| a == lower).map(|&(_, b)| b)
    }

    /// Number of cells in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.cells.iter().map(|c| c.dim).max().map_or(0, |d| d + 1);
        let mut f = vec![0; top];
        for c in &self.cells {
            f[c.dim] += 1;
        }
        f
    }

    /// `sum (-1)^dim` over all cells. Refused for truncated complexes.
    pub fn euler_characteristic(&self) -> Result<i64, ConstructionError> {
        if !self.full {
            return Err(ConstructionError::Truncated(self.radius.unwrap_or(0)));
        }
        Ok(self.cells.iter().map(|c| if c.dim % 2 == 0 { 1i64 } else { -1 }).sum())
    }

    /// A copy with one cell deleted together with its incidences. Used to
    /// build negative controls.
    pub fn remove_cell(&self, victim: usize) -> GluedComplex {
        let mut cells = self.cells.clone();
        cells.remove(victim);
        let shift = |i: usize| if i > victim { i - 1 } else { i };
        let faces = self
            .faces
            .iter()
            .filter(|&&(a, b)| a != victim && b != victim)
            .map(|&(a, b)| (shift(a), shift(b)))
            .collect();
        GluedComplex::assemble(
            self.kind,
            self.generators.clone(),
            self.types.clone(),
            cells,
            faces,
            self.radius,
            self.full,
        )
    }
}

/// The orbifold Euler characteristic `sum over strata of (-1)^dim / |W_{S(σ)}|`.
pub fn orbifold_euler_characteristic(
    sys: &CoxeterSystem,
    mx: &MirroredComplex,
) -> Result<Ratio<i128>, ConstructionError> {
    check_input(sys, mx)?;
    let c = mx.complex();
    let mut total = Ratio::from_integer(0i128);
    for x in 0..c.len() {
        let order = sys.parabolic_order(mx.mirror_sets()[x]).expect("W-finite") as i128;
        let sign = if c.dim(x).is_multiple_of(2) { 1 } else { -1 };
        total += Ratio::new(sign, order);
    }
    Ok(total)
}

pub(crate) fn check_input(sys: &CoxeterSystem, mx: &MirroredComplex) -> Result<(), ConstructionError> {
    if let Some(x) = mx.w_finiteness_violation(sys)? {
        let t = mx.mirror_sets()[x];
        return Err(ConstructionError::NotWFinite {
            stratum: mx.complex().id(x).to_string(),
            mirror_set: t.iter().map(|s| sys.label(s).to_string()).collect(),
        });
    }
    if let Some(x) = mx.niceness_violation() {
        return Err(ConstructionError::NotNice(mx.complex().id(x).to_string()));
    }
    Ok(())
}

#[cfg(test)]
mod tests;
