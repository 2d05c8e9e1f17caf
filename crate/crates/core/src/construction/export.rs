use serde::{Deserialize, Serialize};

use crate::coxeter::{GenSet, Word};

use super::{Cell, CellType, ConstructionError, GluedComplex, GluedKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeRecord {
    pub id: String,
    pub dim: usize,
    pub codim: usize,
    pub mirror_set: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellRecord {
    /// Coset representative as generator labels.
    pub word: Vec<String>,
    pub stratum: String,
    pub dim: usize,
    pub complete: bool,
}

/// JSON form of a [`GluedComplex`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GluedComplexJson {
    pub kind: GluedKind,
    pub generators: Vec<String>,
    pub radius: Option<usize>,
    pub full: bool,
    pub strata: Vec<TypeRecord>,
    pub cells: Vec<CellRecord>,
    /// `[lower, upper]` cell indices.
    pub faces: Vec<(usize, usize)>,
}

impl GluedComplexJson {
    pub fn from_complex(c: &GluedComplex) -> Self {
        let label = |s: usize| c.generators()[s].clone();
        GluedComplexJson {
            kind: c.kind(),
            generators: c.generators().to_vec(),
            radius: c.radius(),
            full: c.is_full(),
            strata: c
                .types()
                .iter()
                .map(|t| TypeRecord {
                    id: t.id.clone(),
                    dim: t.dim,
                    codim: t.codim,
                    mirror_set: t.mirror_set.iter().map(label).collect(),
                })
                .collect(),
            cells: c
                .cells()
                .iter()
                .map(|cell| CellRecord {
                    word: cell.rep.letters().iter().map(|&s| label(s)).collect(),
                    stratum: c.types()[cell.ty].id.clone(),
                    dim: cell.dim,
                    complete: cell.complete,
                })
                .collect(),
            faces: c.faces().to_vec(),
        }
    }

    /// Rebuilds the complex, checking all cross references.
    pub fn to_complex(&self) -> Result<GluedComplex, ConstructionError> {
        let invalid = |m: String| ConstructionError::Invalid(m);
        if self.generators.len() > crate::coxeter::MAX_GENERATORS {
            return Err(invalid("too many generators".into()));
        }
        let gen = |l: &String| {
            self.generators.iter().position(|g| g == l).ok_or_else(|| invalid(format!("unknown generator {l:?}")))
        };
        let mut types = Vec::with_capacity(self.strata.len());
        for t in &self.strata {
            if types.iter().any(|u: &CellType| u.id == t.id) {
                return Err(invalid(format!("duplicate stratum {:?}", t.id)));
            }
            let mirror_set = t.mirror_set.iter().map(gen).collect::<Result<GenSet, _>>()?;
            types.push(CellType { id: t.id.clone(), dim: t.dim, codim: t.codim, mirror_set });
        }
        let mut cells = Vec::with_capacity(self.cells.len());
        for c in &self.cells {
            let ty = types
                .iter()
                .position(|t| t.id == c.stratum)
                .ok_or_else(|| invalid(format!("unknown stratum {:?}", c.stratum)))?;
            let rep = Word::new(c.word.iter().map(gen).collect::<Result<_, _>>()?);
            cells.push(Cell { rep, ty, dim: c.dim, complete: c.complete });
        }
        let mut keys: Vec<(usize, &Word)> = cells.iter().map(|c| (c.ty, &c.rep)).collect();
        keys.sort();
        if keys.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("two cells share a stratum and representative".into()));
        }
        for &(a, b) in &self.faces {
            if a >= cells.len() || b >= cells.len() || a == b {
                return Err(invalid(format!("bad face pair [{a}, {b}]")));
            }
        }
        Ok(GluedComplex::assemble(
            self.kind,
            self.generators.clone(),
            types,
            cells,
            self.faces.clone(),
            self.radius,
            self.full,
        ))
    }

    pub fn parse(text: &str) -> Result<GluedComplex, ConstructionError> {
        let json: GluedComplexJson =
            serde_json::from_str(text).map_err(|e| ConstructionError::Invalid(e.to_string()))?;
        json.to_complex()
    }
}

impl GluedComplex {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GluedComplexJson::from_complex(self)).expect("serialisable")
    }
}
