//! Stratified complexes with mirror structures.
//!
//! A space `X` is represented by the face poset of its strata. A mirror
//! structure assigns to every generator `s` a set of codimension-1 strata
//! whose closure is the mirror `X_s`; the mirror set `S(σ)` of a stratum is
//! the set of generators whose mirror contains it.

pub mod shapes;
mod stratified;

use log::warn;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::coxeter::{CoxeterSystem, GenSet, MAX_GENERATORS};

pub use stratified::{StratifiedComplex, Stratum};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MirroredError {
    #[error("duplicate stratum id {0:?}")]
    DuplicateStratum(String),
    #[error("unknown stratum {0:?}")]
    UnknownStratum(String),
    #[error("stratum index {index} out of range ({len} strata)")]
    StratumOutOfRange { index: usize, len: usize },
    #[error("face relation has a cycle through {0:?} and {1:?}")]
    Cycle(String, String),
    #[error("stratum {lower:?} lies below {upper:?} but its codimension is not larger")]
    CodimensionOrder { lower: String, upper: String },
    #[error("stratum {0:?} is maximal but has positive codimension")]
    MaximalNotChamber(String),
    #[error("complex has no codimension-0 stratum")]
    Chamberless,
    #[error("mirror of {generator:?} contains {stratum:?}, which is not of codimension 1")]
    MirrorNotCodimOne { generator: String, stratum: String },
    #[error("stratum {stratum:?} is assigned to both {first:?} and {second:?}")]
    SharedStratum { stratum: String, first: String, second: String },
    #[error("{0} generators exceed the supported maximum")]
    TooManyGenerators(usize),
    #[error("mirror structure has {mirrors} generators but the Coxeter system has {system}")]
    RankMismatch { mirrors: usize, system: usize },
    #[error("generator {index} is {mirror:?} in the mirror structure but {system:?} in the Coxeter system")]
    LabelMismatch { index: usize, mirror: String, system: String },
}

/// A stratified complex together with a mirror structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirroredComplex {
    complex: StratifiedComplex,
    labels: Vec<String>,
    mirrors: Vec<Vec<usize>>,
    mirror_sets: Vec<GenSet>,
}

impl MirroredComplex {
    /// `mirrors[s]` lists the codimension-1 strata making up `X_s`.
    pub fn new(
        complex: StratifiedComplex,
        labels: Vec<String>,
        mirrors: Vec<Vec<usize>>,
    ) -> Result<Self, MirroredError> {
        assert_eq!(labels.len(), mirrors.len(), "one mirror per generator label");
        if labels.len() > MAX_GENERATORS {
            return Err(MirroredError::TooManyGenerators(labels.len()));
        }
        let mut owner: Vec<Option<usize>> = vec![None; complex.len()];
        for (s, strata) in mirrors.iter().enumerate() {
            for &x in strata {
                if x >= complex.len() {
                    return Err(MirroredError::StratumOutOfRange { index: x, len: complex.len() });
                }
                if complex.codim(x) != 1 {
                    return Err(MirroredError::MirrorNotCodimOne {
                        generator: labels[s].clone(),
                        stratum: complex.id(x).to_string(),
                    });
                }
                match owner[x] {
                    Some(t) if t != s => {
                        return Err(MirroredError::SharedStratum {
                            stratum: complex.id(x).to_string(),
                            first: labels[t].clone(),
                            second: labels[s].clone(),
                        })
                    }
                    _ => owner[x] = Some(s),
                }
            }
        }
        for (s, strata) in mirrors.iter().enumerate() {
            let mut distinct = strata.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() > 1 {
                warn!("generator {} has a mirror made of {} strata", labels[s], distinct.len());
            }
        }
        let mirror_sets = (0..complex.len())
            .map(|x| (0..mirrors.len()).filter(|&s| mirrors[s].iter().any(|&m| complex.leq(x, m))).collect())
            .collect();
        let mirrors = mirrors
            .into_iter()
            .map(|mut v| {
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        Ok(MirroredComplex { complex, labels, mirrors, mirror_sets })
    }

    /// Mirror structure given by generator label and stratum ids.
    pub fn from_ids(complex: StratifiedComplex, mirrors: &[(String, Vec<String>)]) -> Result<Self, MirroredError> {
        let mut labels = Vec::new();
        let mut sets = Vec::new();
        for (label, ids) in mirrors {
            labels.push(label.clone());
            sets.push(ids.iter().map(|id| complex.index_of(id)).collect::<Result<Vec<_>, _>>()?);
        }
        MirroredComplex::new(complex, labels, sets)
    }

    /// The default structure: one generator per codimension-1 stratum,
    /// labelled by the stratum id.
    pub fn natural(complex: StratifiedComplex) -> Result<Self, MirroredError> {
        let strata: Vec<usize> = complex.of_codim(1).collect();
        let labels = strata.iter().map(|&x| complex.id(x).to_string()).collect();
        let mirrors = strata.iter().map(|&x| vec![x]).collect();
        MirroredComplex::new(complex, labels, mirrors)
    }

    /// Every mirror empty.
    pub fn trivial(complex: StratifiedComplex, labels: Vec<String>) -> Result<Self, MirroredError> {
        let mirrors = vec![Vec::new(); labels.len()];
        MirroredComplex::new(complex, labels, mirrors)
    }

    pub fn complex(&self) -> &StratifiedComplex {
        &self.complex
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generator_count(&self) -> usize {
        self.labels.len()
    }

    /// The codimension-1 strata of `X_s`.
    pub fn mirror(&self, s: usize) -> &[usize] {
        &self.mirrors[s]
    }

    /// The generator whose mirror contains the codimension-1 stratum `x`.
    pub fn mirror_generator(&self, x: usize) -> Option<usize> {
        (0..self.mirrors.len()).find(|&s| self.mirrors[s].contains(&x))
    }

    pub fn mirror_set(&self, stratum: usize) -> Result<GenSet, MirroredError> {
        self.mirror_sets
            .get(stratum)
            .copied()
            .ok_or(MirroredError::StratumOutOfRange { index: stratum, len: self.complex.len() })
    }

    pub fn mirror_set_of(&self, id: &str) -> Result<GenSet, MirroredError> {
        self.mirror_set(self.complex.index_of(id)?)
    }

    /// Mirror sets of all strata, indexed like the strata.
    pub fn mirror_sets(&self) -> &[GenSet] {
        &self.mirror_sets
    }

    /// Checks that the mirror generators match the system's generators.
    pub fn check_system(&self, sys: &CoxeterSystem) -> Result<(), MirroredError> {
        if sys.rank() != self.labels.len() {
            return Err(MirroredError::RankMismatch { mirrors: self.labels.len(), system: sys.rank() });
        }
        for (index, (a, b)) in self.labels.iter().zip(sys.labels()).enumerate() {
            if a != b {
                return Err(MirroredError::LabelMismatch { index, mirror: a.clone(), system: b.clone() });
            }
        }
        Ok(())
    }

    /// A stratum whose mirror set generates an infinite parabolic subgroup.
    pub fn w_finiteness_violation(&self, sys: &CoxeterSystem) -> Result<Option<usize>, MirroredError> {
        self.check_system(sys)?;
        Ok((0..self.complex.len()).find(|&x| !sys.is_spherical(self.mirror_sets[x])))
    }

    pub fn is_w_finite(&self, sys: &CoxeterSystem) -> Result<bool, MirroredError> {
        Ok(self.w_finiteness_violation(sys)?.is_none())
    }

    /// A codimension-2 stratum not lying in exactly two codimension-1 strata.
    pub fn niceness_violation(&self) -> Option<usize> {
        let c = &self.complex;
        c.of_codim(2).find(|&x| c.above(x).filter(|&y| c.codim(y) == 1).count() != 2)
    }

    pub fn is_nice(&self) -> bool {
        self.niceness_violation().is_none()
    }

    /// The nerve `N(X)`: `T` is a simplex iff some stratum has `S(σ) ⊇ T`.
    pub fn nerve(&self) -> SimplicialComplex {
        let mut nerve = SimplicialComplex::new(self.labels.clone());
        let mut maximal: Vec<GenSet> = self.mirror_sets.clone();
        maximal.sort_unstable();
        maximal.dedup();
        for t in maximal {
            for face in t.subsets().filter(|f| !f.is_empty()) {
                nerve.insert_simplex_unchecked(face.iter().collect());
            }
        }
        nerve
    }
}

/// Plain serialisable form of a mirrored complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MirroredSpec {
    pub strata: Vec<Stratum>,
    /// `[lower, upper]` pairs of stratum ids.
    pub faces: Vec<(String, String)>,
    /// Generator label to the ids of its mirror strata. Omitted means one
    /// generator per codimension-1 stratum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mirrors: Option<Vec<(String, Vec<String>)>>,
}

impl MirroredSpec {
    pub fn build(&self) -> Result<MirroredComplex, MirroredError> {
        let complex = StratifiedComplex::from_ids(self.strata.clone(), &self.faces)?;
        match &self.mirrors {
            Some(m) => MirroredComplex::from_ids(complex, m),
            None => MirroredComplex::natural(complex),
        }
    }

    pub fn from_complex(mx: &MirroredComplex) -> Self {
        let c = mx.complex();
        MirroredSpec {
            strata: c.strata().to_vec(),
            faces: c.generating_faces().iter().map(|&(a, b)| (c.id(a).to_string(), c.id(b).to_string())).collect(),
            mirrors: Some(
                mx.labels()
                    .iter()
                    .enumerate()
                    .map(|(s, l)| (l.clone(), mx.mirror(s).iter().map(|&x| c.id(x).to_string()).collect()))
                    .collect(),
            ),
        }
    }
}
