use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::MirroredError;

/// One stratum of a stratified complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub id: String,
    pub dim: usize,
    pub codim: usize,
}

impl Stratum {
    pub fn new(id: impl Into<String>, dim: usize, codim: usize) -> Self {
        Stratum { id: id.into(), dim, codim }
    }
}

/// The face poset of a stratified space: `leq(a, b)` means stratum `a` lies
/// in the closure of stratum `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratifiedComplex {
    strata: Vec<Stratum>,
    index: HashMap<String, usize>,
    /// `closure[a][b]` iff `a <= b`, reflexive and transitive.
    closure: Vec<Vec<bool>>,
    /// Generating pairs as supplied, deduplicated and sorted.
    faces: Vec<(usize, usize)>,
}

impl StratifiedComplex {
    /// Builds the poset generated by the given `(lower, upper)` pairs and
    /// checks that it is a partial order compatible with codimension, with the
    /// chambers (codimension 0) exactly the maximal strata.
    pub fn new(strata: Vec<Stratum>, faces: Vec<(usize, usize)>) -> Result<Self, MirroredError> {
        let n = strata.len();
        let mut index = HashMap::with_capacity(n);
        for (i, s) in strata.iter().enumerate() {
            if index.insert(s.id.clone(), i).is_some() {
                return Err(MirroredError::DuplicateStratum(s.id.clone()));
            }
        }
        let mut closure = vec![vec![false; n]; n];
        for (i, row) in closure.iter_mut().enumerate() {
            row[i] = true;
        }
        let mut pairs = Vec::with_capacity(faces.len());
        for &(a, b) in &faces {
            if a >= n || b >= n {
                return Err(MirroredError::StratumOutOfRange { index: a.max(b), len: n });
            }
            if a != b {
                closure[a][b] = true;
                pairs.push((a, b));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        // Warshall.
        for k in 0..n {
            for i in 0..n {
                if closure[i][k] {
                    for j in 0..n {
                        if closure[k][j] {
                            closure[i][j] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a == b || !closure[a][b] {
                    continue;
                }
                if closure[b][a] {
                    return Err(MirroredError::Cycle(strata[a].id.clone(), strata[b].id.clone()));
                }
                if strata[a].codim <= strata[b].codim {
                    return Err(MirroredError::CodimensionOrder {
                        lower: strata[a].id.clone(),
                        upper: strata[b].id.clone(),
                    });
                }
            }
        }
        if strata.iter().all(|s| s.codim != 0) {
            return Err(MirroredError::Chamberless);
        }
        // Nothing lies above a chamber by the codimension order, so it only
        // remains to check that every maximal stratum is a chamber.
        for (a, s) in strata.iter().enumerate() {
            let maximal = (0..n).all(|b| b == a || !closure[a][b]);
            if maximal && s.codim != 0 {
                return Err(MirroredError::MaximalNotChamber(s.id.clone()));
            }
        }
        Ok(StratifiedComplex { strata, index, closure, faces: pairs })
    }

    /// Like [`StratifiedComplex::new`] with faces given by stratum ids.
    pub fn from_ids(strata: Vec<Stratum>, faces: &[(String, String)]) -> Result<Self, MirroredError> {
        let lookup: HashMap<&str, usize> = strata.iter().enumerate().map(|(i, s)| (s.id.as_str(), i)).collect();
        let find =
            |id: &String| lookup.get(id.as_str()).copied().ok_or_else(|| MirroredError::UnknownStratum(id.clone()));
        let pairs = faces.iter().map(|(a, b)| Ok((find(a)?, find(b)?))).collect::<Result<Vec<_>, MirroredError>>()?;
        StratifiedComplex::new(strata, pairs)
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum(&self, i: usize) -> &Stratum {
        &self.strata[i]
    }

    pub fn id(&self, i: usize) -> &str {
        &self.strata[i].id
    }

    pub fn index_of(&self, id: &str) -> Result<usize, MirroredError> {
        self.index.get(id).copied().ok_or_else(|| MirroredError::UnknownStratum(id.to_string()))
    }

    pub fn codim(&self, i: usize) -> usize {
        self.strata[i].codim
    }

    pub fn dim(&self, i: usize) -> usize {
        self.strata[i].dim
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.closure[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.closure[a][b]
    }

    /// The face pairs as supplied (without reflexive pairs).
    pub fn generating_faces(&self) -> &[(usize, usize)] {
        &self.faces
    }

    /// All strict pairs `a < b`, sorted.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).filter(move |&b| a != b).map(move |b| (a, b)))
            .filter(|&(a, b)| self.closure[a][b])
            .collect()
    }

    /// Strata `b` with `a < b`.
    pub fn above(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&b| self.lt(a, b))
    }

    /// Strata `b` with `b < a`.
    pub fn below(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&b| self.lt(b, a))
    }

    pub fn chambers(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.strata[i].codim == 0)
    }

    pub fn of_codim(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.strata[i].codim == c)
    }

    /// Alternating count `sum (-1)^dim` over strata, the Euler characteristic
    /// when strata are open cells.
    pub fn euler_characteristic(&self) -> i64 {
        self.strata.iter().map(|s| if s.dim % 2 == 0 { 1 } else { -1 }).sum()
    }

    /// The closed substratification below the given strata.
    pub fn closure_of(&self, tops: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|&a| tops.iter().any(|&t| self.leq(a, t))).collect()
    }
}
